#include "svo/instance.hpp"
#include "svo/harness.hpp"
#include "svo/instance_io.hpp"

#include <gtest/gtest.h>

namespace svo {
namespace {

std::string data_path(const std::string& name) { return std::string(SVO_TEST_DATA_DIR) + "/" + name; }

Vec v2(long a, long b) { return {Rational(a), Rational(b)}; }
Vec v1(long a) { return {Rational(a)}; }

TEST(InstanceIo, W1LoadsAndRoundTrips) {
    const Instance w1 = load_instance(data_path("W1.json"));
    EXPECT_EQ(w1.labels.size(), 2u);
    EXPECT_EQ(w1.y_dim, 2u);
    EXPECT_EQ(w1.z_dim, 1u);
    EXPECT_EQ(w1.labels[0].name, "a");
    EXPECT_EQ(w1.labels[1].name, "b");
    const std::string text = serialize_instance(w1);
    const Instance again = parse_instance(text);
    EXPECT_EQ(serialize_instance(again), text);  // canonical writers are stable
}

TEST(InstanceIo, AcceptsEquivalentFractions) {
    Instance w1 = load_instance(data_path("W1.json"));
    std::string text = serialize_instance(w1);
    // A reader must accept non-canonical fractions and re-canonicalize.
    const auto pos = text.find("\"-1\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 4, "\"-2/2\"");
    const Instance again = parse_instance(text);
    EXPECT_EQ(serialize_instance(again), serialize_instance(w1));
}

TEST(InstanceIo, RejectsBoundaryDirection) {
    Instance w1 = load_instance(data_path("W1.json"));
    w1.e = v2(0, 1);
    EXPECT_THROW(validate_instance(w1), ValidationError);
    try {
        validate_instance(w1);
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("e not interior"), std::string::npos);
    }
}

TEST(InstanceIo, RejectsFeasibleLabelOutsideDomF) {
    Instance w1 = load_instance(data_path("W1.json"));
    w1.labels[0].f.clear();  // label a stays feasible (g = {-1}) but leaves dom f
    EXPECT_THROW(validate_instance(w1), ValidationError);
}

TEST(Feasible, ReferenceInstances) {
    const Instance w1 = load_instance(data_path("W1.json"));
    const Instance w2 = load_instance(data_path("W2.json"));
    const auto fa = feasible(w1, Candidate(std::string("a")));
    ASSERT_TRUE(fa.feasible);
    EXPECT_EQ(*fa.witness_z, v1(-1));
    EXPECT_FALSE(feasible(w1, Candidate(std::string("b"))).feasible);
    const auto fw = feasible(w2, Candidate(Vec{Rational(1, 2), Rational(1, 2)}));
    ASSERT_TRUE(fw.feasible);
    EXPECT_EQ(*fw.witness_z, v1(0));  // (1/2)(-1) + (1/2)(1) = 0
    EXPECT_THROW(feasible(w1, Candidate(std::string("zz"))), UnknownLabel);
    EXPECT_THROW(feasible(w1, Candidate(Vec{Rational(1)})), WeightsNotOnSimplex);
    EXPECT_THROW(feasible(w1, Candidate(Vec{Rational(2), Rational(-1)})), WeightsNotOnSimplex);
}

Instance zero_g_instance() {
    Instance inst = load_instance(data_path("W1.json"));
    inst.labels[0].g = {v1(0)};
    inst.labels[1].g = {v1(0)};
    return inst;
}

TEST(Slater, WitnessAndNegativeCase) {
    const Instance w1 = load_instance(data_path("W1.json"));
    const auto s = slater_check(w1);
    ASSERT_TRUE(s.holds);
    EXPECT_EQ(*s.witness_z, v1(-1));
    EXPECT_FALSE(slater_check(zero_g_instance()).holds);
    EXPECT_TRUE(slater_check(load_instance(data_path("W2.json"))).holds);
}

TEST(CqCheck, HoldsOnW1FailsOnZeroImages) {
    const Instance w1 = load_instance(data_path("W1.json"));
    EXPECT_TRUE(cq_check(w1).holds);
    const auto bad = cq_check(zero_g_instance());
    ASSERT_FALSE(bad.holds);
    EXPECT_EQ(*bad.violating_z_star, v1(1));
}

TEST(CqCheck, AgreesWithSlaterAcrossModes) {
    std::uint64_t state = 404;
    FuzzConfig cfg;
    for (int i = 0; i < 30; ++i) {
        const Instance disc = generate_instance(cfg, state, EvalMode::Discrete);
        const Instance conv = harness_detail::with_mode(disc, EvalMode::Convexified);
        EXPECT_EQ(slater_check(conv).holds, cq_check(conv).holds);
        if (slater_check(disc).holds) EXPECT_TRUE(cq_check(disc).holds);
    }
}

TEST(BuildQ, W1Assembly) {
    const Instance w1 = load_instance(data_path("W1.json"));
    const QSet q = build_q(w1);
    ASSERT_EQ(q.vertices.size(), 2u);
    EXPECT_EQ(q.vertices[0], (Vec{Rational(0), Rational(0), Rational(-1)}));
    EXPECT_EQ(q.vertices[1], (Vec{Rational(1), Rational(1), Rational(1)}));
    ASSERT_EQ(q.rays.size(), 3u);
    EXPECT_EQ(q.rays[0], (Vec{Rational(1), Rational(0), Rational(0)}));
    EXPECT_EQ(q.rays[1], (Vec{Rational(0), Rational(1), Rational(0)}));
    EXPECT_EQ(q.rays[2], (Vec{Rational(0), Rational(0), Rational(1)}));
    EXPECT_FALSE(q.hull_of_q);  // convexified: the model is cl Q itself

    // Any vertex plus ray combination stays inside the model.
    for (const auto& v : q.vertices)
        for (const auto& r : q.rays) EXPECT_TRUE(q_membership(q, add(v, scale(Rational(3, 2), r))));
}

TEST(BuildQ, ConvexCombinationsAccepted) {
    const Instance w2 = load_instance(data_path("W2.json"));
    const QSet q = build_q(w2);
    std::uint64_t state = 11;
    for (int i = 0; i < 20; ++i) {
        const Rational t(static_cast<long>(detail::splitmix64(state) % 5), 4);
        Vec p(q.y_dim + q.z_dim);
        p = add(scale(t, q.vertices[0]), scale(Rational(1) - t, q.vertices[1 % q.vertices.size()]));
        if (detail::splitmix64(state) % 2)
            p = add(p, scale(Rational(1, 3), q.rays[detail::splitmix64(state) % q.rays.size()]));
        EXPECT_TRUE(q_membership(q, p));
    }
    EXPECT_FALSE(q_membership(q, Vec{Rational(-5), Rational(-5), Rational(-5)}));
}

TEST(RankOne, ApplyFormula) {
    const Instance w1 = load_instance(data_path("W1.json"));
    RankOneOperator t;
    t.z_star = {Rational(1), Rational(2)};
    t.e = v2(1, 1);
    EXPECT_EQ(apply_t(t, Vec{Rational(1), Rational(1)}), v2(3, 3));
    t.z_star = {Rational(0), Rational(0)};
    EXPECT_EQ(apply_t(t, Vec{Rational(5), Rational(7)}), v2(0, 0));
    const RankOneOperator unit = make_rank_one(w1, Vec{Rational(1)});
    EXPECT_EQ(apply_t(unit, v1(-1)), v2(-1, -1));
    EXPECT_THROW(make_rank_one(w1, Vec{Rational(-1)}), std::invalid_argument);
}

TEST(LagrangianImage, PointwiseSums) {
    const Instance w1 = load_instance(data_path("W1.json"));
    RankOneOperator zero;
    zero.z_star = v1(0);
    zero.e = w1.e;
    EXPECT_EQ(lagrangian_image(w1, Candidate(std::string("a")), zero).points,
              (std::vector<Vec>{v2(0, 0)}));
    const RankOneOperator unit = make_rank_one(w1, Vec{Rational(1)});
    EXPECT_EQ(lagrangian_image(w1, Candidate(std::string("a")), unit).points,
              (std::vector<Vec>{v2(-1, -1)}));
    EXPECT_EQ(lagrangian_image(w1, Candidate(std::string("b")), unit).points,
              (std::vector<Vec>{v2(2, 2)}));
    Instance empty = w1;
    empty.labels[1].g.clear();
    EXPECT_THROW(lagrangian_image(empty, Candidate(std::string("b")), unit), EmptyImage);
}

TEST(Feasible, DiscreteImpliesConvexifiedVertex) {
    std::uint64_t state = 777;
    FuzzConfig cfg;
    for (int i = 0; i < 20; ++i) {
        const Instance disc = generate_instance(cfg, state, EvalMode::Discrete);
        const Instance conv = harness_detail::with_mode(disc, EvalMode::Convexified);
        for (const auto& L : disc.labels) {
            if (feasible(disc, Candidate(L.name)).feasible)
                EXPECT_TRUE(feasible(conv, Candidate(L.name)).feasible);
        }
    }
}

}  // namespace
}  // namespace svo
