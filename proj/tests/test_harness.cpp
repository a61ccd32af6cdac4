#include "svo/harness.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace svo {
namespace {

std::string data_path(const std::string& name) { return std::string(SVO_TEST_DATA_DIR) + "/" + name; }

const std::vector<Rational> kGrid{Rational(0), Rational(1, 4), Rational(1)};

std::size_t count_status(const std::vector<PropertyResult>& rs, PropertyStatus st) {
    std::size_t n = 0;
    for (const auto& r : rs) n += r.status == st;
    return n;
}

TEST(VerifySuite, W1AllAssertedPass) {
    const Instance w1 = load_instance(data_path("W1.json"));
    const auto results = verify_suite(w1, kGrid, "W1");
    EXPECT_EQ(count_status(results, PropertyStatus::AssertedFail), 0u);
    EXPECT_EQ(count_status(results, PropertyStatus::ReportedViolated), 0u);
    EXPECT_GT(count_status(results, PropertyStatus::AssertedPass), 10u);
    EXPECT_FALSE(has_asserted_failure(results));
}

TEST(VerifySuite, W2ReportsBareReverseViolation) {
    const Instance w2 = load_instance(data_path("W2.json"));
    const auto results = verify_suite(w2, kGrid, "W2");
    EXPECT_EQ(count_status(results, PropertyStatus::AssertedFail), 0u);
    bool found = false;
    for (const auto& r : results) {
        if (r.property_id == "lagrangian-implies-weakmin-unqualified" &&
            r.status == PropertyStatus::ReportedViolated) {
            found = true;
            EXPECT_NE(r.witness.find("\"1\""), std::string::npos);  // z* = 1 witness
        }
    }
    EXPECT_TRUE(found);
}

TEST(VerifySuite, PropertyCoverage) {
    const Instance w1 = load_instance(data_path("W1.json"));
    const auto results = verify_suite(w1, kGrid, "W1");
    for (const char* id :
         {"slater-iff-cq", "weakmin-implies-multiplier", "multiplier-implies-weakmin",
          "multiplier-slackness-bound", "multiplier-implies-lagrangian-weakmin",
          "lagrangian-characterization-agrees", "vector-implies-lattice", "epsilon-monotonicity",
          "convexified-implies-discrete-weakmin", "lattice-implies-lower-bound-separation",
          "interior-shift-identity", "scalarized-image-membership"}) {
        bool seen = false;
        for (const auto& r : results) seen |= r.property_id == id;
        EXPECT_TRUE(seen) << id;
    }
}

TEST(Fuzz, DeterministicByteIdentical) {
    FuzzConfig cfg;
    cfg.seed = 31337;
    cfg.count = 4;
    const auto a = fuzz_instances(cfg);
    const auto b = fuzz_instances(cfg);
    ASSERT_EQ(a.size(), b.size());
    std::vector<PropertyResult> ra, rb;
    for (const auto& r : a) ra.insert(ra.end(), r.results.begin(), r.results.end());
    for (const auto& r : b) rb.insert(rb.end(), r.results.begin(), r.results.end());
    EXPECT_EQ(emit_report_machine(ra), emit_report_machine(rb));
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(serialize_instance(a[i].instance), serialize_instance(b[i].instance));
}

TEST(Fuzz, PlantSlaterAlwaysSatisfiesSlater) {
    FuzzConfig cfg;
    cfg.seed = 5;
    cfg.count = 12;
    cfg.plant_slater = true;
    const auto runs = fuzz_instances(cfg);
    for (const auto& run : runs) EXPECT_TRUE(slater_check(run.instance).holds);
}

TEST(Fuzz, NoAssertedFailuresOnCorpus) {
    FuzzConfig cfg;
    cfg.seed = 98;
    cfg.count = 6;
    for (bool slater : {false, true}) {
        cfg.plant_slater = slater;
        const auto runs = fuzz_instances(cfg);
        for (const auto& run : runs)
            for (const auto& r : run.results)
                EXPECT_NE(r.status, PropertyStatus::AssertedFail)
                    << r.property_id << " " << r.instance_ref << " " << r.context;
    }
}

TEST(Replay, ArchivedInstanceReproducesResults) {
    FuzzConfig cfg;
    cfg.seed = 2112;
    cfg.count = 5;
    const auto runs = fuzz_instances(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "svo_replay_test";
    std::filesystem::create_directories(dir);
    std::size_t replayed = 0;
    for (const auto& run : runs) {
        const std::string path = (dir / ("inst_" + std::to_string(run.index) + ".json")).string();
        save_instance(run.instance, path);
        const Instance loaded = load_instance(path);
        const std::string ref = "seed:" + std::to_string(cfg.seed) + "/" +
                                std::to_string(run.index / 2) +
                                (run.instance.mode == EvalMode::Discrete ? "/discrete" : "/convexified");
        const auto again = verify_suite(loaded, kGrid, ref);
        ASSERT_EQ(again.size(), run.results.size());
        for (std::size_t i = 0; i < again.size(); ++i) {
            EXPECT_EQ(again[i].property_id, run.results[i].property_id);
            EXPECT_EQ(again[i].status, run.results[i].status);
            EXPECT_EQ(again[i].witness, run.results[i].witness);
        }
        ++replayed;
    }
    EXPECT_EQ(replayed, runs.size());
    std::filesystem::remove_all(dir);
}

TEST(Reports, MachineAndHumanAreConsistent) {
    const Instance w2 = load_instance(data_path("W2.json"));
    const auto results = verify_suite(w2, kGrid, "W2");
    const std::string machine = emit_report_machine(results);
    const std::string human = emit_report_human(results);

    const auto parsed = parse_report(machine);
    ASSERT_EQ(parsed.size(), results.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(parsed[i].property_id, results[i].property_id);
        EXPECT_EQ(parsed[i].status, results[i].status);
    }
    EXPECT_EQ(emit_report_machine(parsed), machine);  // round-trip is exact

    // The human table counts the same events.
    const std::size_t viol = count_status(results, PropertyStatus::ReportedViolated);
    std::size_t human_viol = 0;
    for (std::size_t pos = human.find("violated "); pos != std::string::npos;
         pos = human.find("violated ", pos + 1))
        ++human_viol;
    EXPECT_EQ(human_viol, viol);
}

TEST(Reports, ExitConditionTracksAssertedFailures) {
    std::vector<PropertyResult> rs;
    rs.push_back({"p", PropertyStatus::AssertedPass, "", "", ""});
    rs.push_back({"q", PropertyStatus::ReportedViolated, "", "", "{}"});
    EXPECT_FALSE(has_asserted_failure(rs));
    rs.push_back({"r", PropertyStatus::AssertedFail, "", "", "{}"});
    EXPECT_TRUE(has_asserted_failure(rs));
}

}  // namespace
}  // namespace svo
