// svo: exact verification lab for constrained set-valued optimization.
//
// Subcommands: validate, check, multiplier, verify, fuzz, report.
// Exit codes: 0 pass, 1 asserted failure (or failed check / no certificate),
// 2 usage or I/O error.

#include "svo/harness.hpp"
#include "svo/instance_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace svo;

std::vector<Rational> parse_eps_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const Rational e = Rational::parse(tok);
        if (e < Rational(0)) throw ParseError("epsilon must be nonnegative: " + tok);
        out.push_back(e);
    }
    if (out.empty()) throw ParseError("empty epsilon list");
    return out;
}

std::vector<Vec> load_probes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open probes file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(buf.str());
    const auto& arr = j.is_object() && j.contains("probes") ? j.at("probes") : j;
    if (!arr.is_array()) throw ParseError("probes file: expected an array of weight vectors");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(io_detail::read_vec(arr[i], "probes[" + std::to_string(i) + "]"));
    return out;
}

void apply_mode(Instance& inst, const std::string& mode) {
    if (mode.empty()) return;
    if (mode == "discrete")
        inst.mode = EvalMode::Discrete;
    else if (mode == "convexified")
        inst.mode = EvalMode::Convexified;
    else
        throw ParseError("mode must be discrete or convexified");
}

std::string verdict_str(const SolutionVerdict& v) {
    switch (v.status) {
        case VerdictStatus::Holds: return "holds";
        case VerdictStatus::HoldsOnProbes:
            return "holds-on-probes(" + std::to_string(v.probes_used) + ")";
        case VerdictStatus::Fails: return "fails";
        case VerdictStatus::NotFeasible: return "not-in-M";
    }
    return "?";
}

int run_validate(const std::string& file) {
    const Instance inst = load_instance(file);
    const ConeValidation kv = validate_cone(inst.K);
    const ConeValidation cv = validate_cone(inst.C);
    std::cout << "ok: " << inst.labels.size() << " labels, y_dim " << inst.y_dim << ", z_dim "
              << inst.z_dim << ", mode "
              << (inst.mode == EvalMode::Discrete ? "discrete" : "convexified") << "\n";
    auto cone_line = [](const char* name, const ConeValidation& v) {
        std::cout << "  " << name << ": " << (v.simplicial ? "simplicial" : "general")
                  << (v.exact_both_directions ? ", exact both directions"
                                              : ", generator side exact, H side sampled (" +
                                                    std::to_string(v.samples_checked) + " samples)")
                  << "\n";
    };
    cone_line("K", kv);
    cone_line("C", cv);
    return 0;
}

int run_check(const std::string& file, const std::string& x0, const std::string& criterion,
              const std::string& eps_text, const std::string& mode, const std::string& probes_file) {
    Instance inst = load_instance(file);
    apply_mode(inst, mode);
    const Rational eps = Rational::parse(eps_text);
    SolutionVerdict v;
    if (criterion == "v") {
        v = check_v_wmin(inst, x0, eps);
    } else if (criterion == "l") {
        std::vector<Vec> probes;
        if (!probes_file.empty()) probes = load_probes(probes_file);
        v = check_l_wmin(inst, x0, eps, probes);
    } else {
        throw ParseError("criterion must be v or l");
    }
    std::cout << criterion << "-wmin(" << x0 << ", eps=" << eps.str() << "): " << verdict_str(v)
              << "\n";
    if (v.certifying_y0) std::cout << "  certifying y0 = " << vec_str(*v.certifying_y0) << "\n";
    if (v.violation) {
        std::cout << "  violated by " << candidate_str(v.violation->candidate) << " at point "
                  << vec_str(v.violation->point) << "\n";
    }
    return v.holds() ? 0 : 1;
}

int run_multiplier(const std::string& file, const std::string& x0, const std::string& eps_text) {
    const Instance inst = load_instance(file);
    const Rational eps = Rational::parse(eps_text);
    const auto cert = find_multiplier(inst, x0, eps);
    if (!cert) {
        std::cout << "no multiplier certificate for " << x0 << " at eps=" << eps.str() << "\n";
        return 1;
    }
    nlohmann::ordered_json j;
    j["x0"] = x0;
    j["epsilon"] = eps.str();
    j["y0"] = io_detail::write_vec(cert->y0);
    if (cert->z0) j["z0"] = io_detail::write_vec(*cert->z0);
    j["y_star"] = io_detail::write_vec(cert->y_star);
    j["y_star_coeffs"] = io_detail::write_vec(cert->y_star_coeffs);
    j["z_star"] = io_detail::write_vec(cert->z_star);
    j["z_star_coeffs"] = io_detail::write_vec(cert->z_star_coeffs);
    j["normalization"] = cert->normalization == Normalization::YStarEEqualsOne
                             ? "y_star_e_equals_1"
                             : "coefficient_sum_equals_1";
    j["inf_Q"] = cert->inf_q_value.str();
    nlohmann::ordered_json slack = nlohmann::ordered_json::array();
    for (const auto& [z, s] : cert->slackness) {
        nlohmann::ordered_json e;
        e["z"] = io_detail::write_vec(z);
        e["z_star_z"] = s.str();
        slack.push_back(std::move(e));
    }
    j["slackness"] = std::move(slack);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& file, const std::string& eps_text, const std::string& format,
               const std::string& mode) {
    Instance inst = load_instance(file);
    apply_mode(inst, mode);
    const auto results = verify_suite(inst, parse_eps_list(eps_text), file);
    std::cout << emit_report(results, format == "machine");
    return has_asserted_failure(results) ? 1 : 0;
}

int run_fuzz(std::uint64_t seed, std::size_t count, bool plant_slater, const std::string& out_dir,
             const std::string& mode) {
    FuzzConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    cfg.plant_slater = plant_slater;
    if (mode == "discrete") cfg.mode = FuzzConfig::Mode::Discrete;
    if (mode == "convexified") cfg.mode = FuzzConfig::Mode::Convexified;
    const auto runs = fuzz_instances(cfg);

    std::vector<PropertyResult> all;
    std::size_t archived = 0;
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (const auto& run : runs) {
        bool keep = false;
        for (const auto& r : run.results)
            if (r.status == PropertyStatus::AssertedFail || r.status == PropertyStatus::ReportedViolated)
                keep = true;
        if (keep && !out_dir.empty()) {
            const std::string name = "counterexample_" + std::to_string(run.index) + ".json";
            save_instance(run.instance, (std::filesystem::path(out_dir) / name).string());
            ++archived;
        }
        all.insert(all.end(), run.results.begin(), run.results.end());
    }
    if (!out_dir.empty()) {
        std::ofstream rep(std::filesystem::path(out_dir) / "report.json");
        rep << emit_report_machine(all);
    }
    std::cout << emit_report_human(all);
    std::cout << "instances=" << runs.size() << " archived=" << archived << "\n";
    return has_asserted_failure(all) ? 1 : 0;
}

int run_report(const std::string& file, const std::string& format) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open report file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto results = parse_report(buf.str());
    std::cout << emit_report(results, format == "machine");
    return has_asserted_failure(results) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact laboratory for Lagrange multiplier rules in set-valued optimization"};
    app.require_subcommand(1);

    std::string file, x0, criterion = "v", eps = "0", mode, probes, format = "human";
    std::string eps_list = "0,1/4,1", out_dir, fuzz_mode = "both";
    std::uint64_t seed = 1;
    std::size_t count = 10;
    bool plant_slater = false;

    auto* validate = app.add_subcommand("validate", "load and validate an instance file");
    validate->add_option("file", file)->required();

    auto* check = app.add_subcommand("check", "decide a weak-minimality criterion at one label");
    check->add_option("file", file)->required();
    check->add_option("--x0", x0)->required();
    check->add_option("--criterion", criterion)->check(CLI::IsMember({"v", "l"}));
    check->add_option("--epsilon", eps);
    check->add_option("--mode", mode)->check(CLI::IsMember({"discrete", "convexified"}));
    check->add_option("--probes", probes);

    auto* mult = app.add_subcommand("multiplier", "synthesize a multiplier certificate");
    mult->add_option("file", file)->required();
    mult->add_option("--x0", x0)->required();
    mult->add_option("--epsilon", eps);

    auto* verify = app.add_subcommand("verify", "run the property suite on an instance");
    verify->add_option("file", file)->required();
    verify->add_option("--epsilons", eps_list);
    verify->add_option("--format", format)->check(CLI::IsMember({"human", "machine"}));
    verify->add_option("--mode", mode)->check(CLI::IsMember({"discrete", "convexified"}));

    auto* fuzz = app.add_subcommand("fuzz", "generate seeded instances and verify them");
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--count", count);
    fuzz->add_flag("--plant-slater", plant_slater);
    fuzz->add_option("--out", out_dir);
    fuzz->add_option("--mode", fuzz_mode)->check(CLI::IsMember({"discrete", "convexified", "both"}));

    auto* report = app.add_subcommand("report", "re-emit a machine report");
    report->add_option("results", file)->required();
    report->add_option("--format", format)->check(CLI::IsMember({"human", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(file);
        if (app.got_subcommand(check)) return run_check(file, x0, criterion, eps, mode, probes);
        if (app.got_subcommand(mult)) return run_multiplier(file, x0, eps);
        if (app.got_subcommand(verify)) return run_verify(file, eps_list, format, mode);
        if (app.got_subcommand(fuzz)) return run_fuzz(seed, count, plant_slater, out_dir, fuzz_mode);
        if (app.got_subcommand(report)) return run_report(file, format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ConeError& e) {
        std::cerr << "cone error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownLabel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
