#pragma once

#include "svo/criteria.hpp"
#include "svo/instance.hpp"
#include "svo/instance_io.hpp"
#include "svo/lagrange.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svo {

enum class PropertyStatus { AssertedPass, AssertedFail, ReportedHolds, ReportedViolated, Skipped };

// One verdict per checked statement instance. Asserted statuses participate
// in the exit code; reported statuses are measurements. Failing and violated
// results always carry a witness that replays from the referenced instance.
struct PropertyResult {
    std::string property_id;
    PropertyStatus status = PropertyStatus::Skipped;
    std::string instance_ref;
    std::string context;
    std::string witness;  // compact JSON, empty when there is nothing to carry
};

inline const char* property_status_str(PropertyStatus s) {
    switch (s) {
        case PropertyStatus::AssertedPass: return "asserted-pass";
        case PropertyStatus::AssertedFail: return "asserted-fail";
        case PropertyStatus::ReportedHolds: return "reported-holds";
        case PropertyStatus::ReportedViolated: return "reported-violated";
        case PropertyStatus::Skipped: return "skipped";
    }
    return "unknown";
}

inline std::optional<PropertyStatus> property_status_from_str(const std::string& s) {
    for (PropertyStatus st : {PropertyStatus::AssertedPass, PropertyStatus::AssertedFail,
                              PropertyStatus::ReportedHolds, PropertyStatus::ReportedViolated,
                              PropertyStatus::Skipped})
        if (s == property_status_str(st)) return st;
    return std::nullopt;
}

struct FuzzConfig {
    std::uint64_t seed = 1;
    std::size_t count = 10;
    std::size_t max_y_dim = 3;        // <= 4
    std::size_t max_z_dim = 3;        // <= 4
    std::size_t max_labels = 5;       // <= 6
    std::size_t max_points = 3;       // <= 4
    std::size_t max_denominator = 4;  // <= 8
    bool plant_slater = false;
    enum class Mode { Discrete, Convexified, Both } mode = Mode::Both;
};

struct FuzzRun {
    std::size_t index = 0;
    Instance instance;
    std::vector<PropertyResult> results;
};

namespace harness_detail {

using Json = nlohmann::ordered_json;

inline std::string ctx(const Instance& inst, const std::string& x0, const Rational* eps) {
    std::string s = "mode=";
    s += inst.mode == EvalMode::Discrete ? "discrete" : "convexified";
    if (!x0.empty()) s += " x0=" + x0;
    if (eps) s += " eps=" + eps->str();
    return s;
}

inline std::string json_vec(const Vec& v) { return io_detail::write_vec(v).dump(); }

inline Instance with_mode(const Instance& inst, EvalMode mode) {
    Instance copy = inst;
    copy.mode = mode;
    return copy;
}

// Intersection of the QSet model with int B x -int C, searched over per-label
// pair weights so a refuting simplex candidate can be read off directly.
struct QBoxIntersection {
    bool found = false;
    Vec weights;  // per-label simplex weights of the refuting candidate
};

inline QBoxIntersection q_meets_open_box(const Instance& inst, const LowerBoundPolyhedron& b) {
    QBoxIntersection out;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;  // label, f pt, g pt
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (!inst.active(i)) continue;
        for (std::size_t fj = 0; fj < inst.labels[i].f.size(); ++fj)
            for (std::size_t gk = 0; gk < inst.labels[i].g.size(); ++gk) pairs.emplace_back(i, fj, gk);
    }
    if (pairs.empty()) return out;
    const std::size_t np = pairs.size();
    const std::size_t nk = inst.K.generators.size();
    const std::size_t nc = inst.C.generators.size();
    const std::size_t n = np + nk + nc;

    std::vector<detail::Row> rows;
    {
        detail::Row sum;
        sum.a.assign(n, Rational(0));
        for (std::size_t v = 0; v < np; ++v) sum.a[v] = Rational(1);
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        rows.push_back(std::move(sum));
    }
    for (std::size_t i = 0; i < b.normals.size(); ++i) {
        // y-part strictly inside B: a_i . y < offset_i
        detail::Row r;
        r.a.assign(n, Rational(0));
        for (std::size_t v = 0; v < np; ++v)
            r.a[v] = dot(b.normals[i], inst.labels[std::get<0>(pairs[v])].f[std::get<1>(pairs[v])]);
        for (std::size_t kk = 0; kk < nk; ++kk)
            r.a[np + kk] = dot(b.normals[i], inst.K.generators[kk]);
        r.rel = Relation::Less;
        r.b = b.offsets[i];
        rows.push_back(std::move(r));
    }
    for (const auto& cn : inst.C.normals) {
        // z-part strictly inside -C: b_j . z < 0
        detail::Row r;
        r.a.assign(n, Rational(0));
        for (std::size_t v = 0; v < np; ++v)
            r.a[v] = dot(cn, inst.labels[std::get<0>(pairs[v])].g[std::get<2>(pairs[v])]);
        for (std::size_t cc = 0; cc < nc; ++cc)
            r.a[np + nk + cc] = dot(cn, inst.C.generators[cc]);
        r.rel = Relation::Less;
        r.b = Rational(0);
        rows.push_back(std::move(r));
    }
    const auto d =
        detail::decide_strict(n, std::vector<detail::VarSign>(n, detail::VarSign::NonNeg), rows);
    if (!d.strictly_feasible) return out;
    out.found = true;
    out.weights.assign(inst.labels.size(), Rational(0));
    for (std::size_t v = 0; v < np; ++v) out.weights[std::get<0>(pairs[v])] += d.witness[v];
    return out;
}

// z* probes for the Lagrangian reverse measurements: zero, each dual
// generator, and a jointly searched pair when one exists.
inline std::vector<Vec> reverse_probe_zstars(const Instance& inst, const std::string& x0,
                                             const Rational& eps) {
    std::vector<Vec> probes;
    probes.push_back(zero_vec(inst.z_dim));
    for (const auto& n : inst.C.normals) probes.push_back(n);

    const std::size_t ix0 = inst.index_of(x0);
    const auto& f0 = inst.labels[ix0].f;
    const auto& g0 = inst.labels[ix0].g;
    const QSet q = build_q(inst);
    const std::size_t k = inst.K.normals.size();
    const std::size_t l = inst.C.normals.size();
    for (const auto& y0 : f0) {
        bool done = false;
        for (const auto& z0 : g0) {
            detail::Program p;
            p.sense = Sense::Maximize;
            p.n = k + l + 1;
            p.signs.assign(p.n, detail::VarSign::NonNeg);
            p.signs[k + l] = detail::VarSign::Free;
            p.c.assign(p.n, Rational(0));
            p.c[k + l] = Rational(1);
            for (const auto& v : q.vertices) {
                detail::Row r;
                r.a.assign(p.n, Rational(0));
                const Vec vy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
                const Vec vz(v.begin() + static_cast<std::ptrdiff_t>(q.y_dim), v.end());
                for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], sub(vy, y0));
                for (std::size_t j = 0; j < l; ++j) r.a[k + j] = dot(inst.C.normals[j], sub(vz, z0));
                r.rel = Relation::GreaterEq;
                r.b = -eps;
                p.rows.push_back(std::move(r));
            }
            for (std::size_t i = 0; i < k; ++i) {
                detail::Row r;
                r.a.assign(p.n, Rational(0));
                r.a[i] = Rational(1);
                r.a[k + l] = Rational(-1);
                r.rel = Relation::GreaterEq;
                r.b = Rational(0);
                p.rows.push_back(std::move(r));
            }
            {
                detail::Row r;
                r.a.assign(p.n, Rational(0));
                for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], inst.e);
                r.rel = Relation::Equal;
                r.b = Rational(1);
                p.rows.push_back(std::move(r));
            }
            const auto res = detail::solve_program(p);
            if (res.status == LPStatus::Optimal) {
                Vec zc(res.x.begin() + static_cast<std::ptrdiff_t>(k),
                       res.x.begin() + static_cast<std::ptrdiff_t>(k + l));
                probes.push_back(detail::dense_from_coeffs(inst.C.normals, zc, inst.z_dim));
                done = true;
                break;
            }
        }
        if (done) break;
    }
    return probes;
}

}  // namespace harness_detail

// Runs every lemma- and theorem-level property this laboratory asserts, for
// each feasible label and each epsilon of the grid, in the instance's mode.
// Failures become results, never exceptions.
inline std::vector<PropertyResult> verify_suite(const Instance& inst, std::vector<Rational> eps_list,
                                                const std::string& instance_ref) {
    using harness_detail::ctx;
    using harness_detail::Json;
    std::vector<PropertyResult> results;
    const bool convexified = inst.mode == EvalMode::Convexified;
    std::sort(eps_list.begin(), eps_list.end());
    for (const auto& e : eps_list)
        if (e < Rational(0)) throw std::invalid_argument("epsilon grid must be nonnegative");

    auto push = [&](std::string id, PropertyStatus st, std::string context, std::string witness = "") {
        results.push_back({std::move(id), st, instance_ref, std::move(context), std::move(witness)});
    };
    auto assert_that = [&](const std::string& id, bool ok, const std::string& context,
                           const std::string& witness = "") {
        push(id, ok ? PropertyStatus::AssertedPass : PropertyStatus::AssertedFail, context, witness);
    };

    // Slater versus the dual-cone constraint qualification.
    {
        const SlaterResult slater = slater_check(inst);
        const CQResult cq = cq_check(inst);
        std::string witness;
        if (!cq.holds && cq.violating_z_star)
            witness = "{\"violating_z_star\":" + harness_detail::json_vec(*cq.violating_z_star) + "}";
        if (convexified) {
            assert_that("slater-iff-cq", slater.holds == cq.holds, ctx(inst, "", nullptr), witness);
        } else {
            assert_that("slater-implies-cq", !slater.holds || cq.holds, ctx(inst, "", nullptr), witness);
        }
    }

    std::vector<std::string> feasible_labels;
    for (const auto& L : inst.labels)
        if (!L.f.empty() && feasible(inst, Candidate(L.name)).feasible) feasible_labels.push_back(L.name);

    for (const auto& x0 : feasible_labels) {
        std::vector<std::pair<Rational, bool>> v_by_eps;
        const DiagnosticsReport diag = image_diagnostics(inst, x0);

        for (const auto& eps : eps_list) {
            const std::string where = ctx(inst, x0, &eps);
            const SolutionVerdict v = check_v_wmin(inst, x0, eps);
            v_by_eps.emplace_back(eps, v.holds());
            const auto cert = find_multiplier(inst, x0, eps);

            // Weak minimality versus multiplier existence.
            if (convexified) {
                std::string witness;
                if (v.holds() && !cert && v.certifying_y0)
                    witness = "{\"certifying_y0\":" + harness_detail::json_vec(*v.certifying_y0) + "}";
                assert_that("weakmin-implies-multiplier", !v.holds() || cert.has_value(), where, witness);
            }
            if (cert && !cert->y_star_zero()) {
                std::string witness = "{\"y_star\":" + harness_detail::json_vec(cert->y_star) +
                                      ",\"z_star\":" + harness_detail::json_vec(cert->z_star) + "}";
                assert_that("multiplier-implies-weakmin", v.holds(), where, witness);
            } else if (cert) {
                // Separators with y* = 0 exist only when the constraint
                // qualification fails; the implication to weak minimality is
                // measured there, not assumed.
                push("zero-objective-multiplier-weakmin",
                     v.holds() ? PropertyStatus::ReportedHolds : PropertyStatus::ReportedViolated, where,
                     "{\"z_star\":" + harness_detail::json_vec(cert->z_star) + "}");
            }

            if (cert) {
                const SlacknessReport slack = slackness_report(*cert, inst, x0, eps);
                assert_that("multiplier-slackness-bound", slack.eps_bound_satisfied, where);
                if (!cert->y_star_zero()) {
                    const RankOneOperator t = make_rank_one(inst, cert->z_star_coeffs);
                    const SolutionVerdict lpt = check_wmin_LPT(inst, x0, t, eps);
                    assert_that("multiplier-implies-lagrangian-weakmin", lpt.holds(), where);
                }
            }

            // Fixed-z* characterization agreement with the direct Lagrangian
            // check (convexified, where the hull model is exact).
            if (convexified) {
                std::vector<Vec> zs;
                zs.push_back(zero_vec(inst.z_dim));
                if (cert && !cert->y_star_zero()) zs.push_back(cert->z_star);
                for (const auto& zst : zs) {
                    RankOneOperator t;
                    t.z_star = zst;
                    t.e = inst.e;
                    const SolutionVerdict lpt = check_wmin_LPT(inst, x0, t, eps);
                    const auto ch = characterize_LPT(inst, x0, zst, eps);
                    assert_that("lagrangian-characterization-agrees", lpt.holds() == ch.has_value(),
                                where, "{\"z_star\":" + harness_detail::json_vec(zst) + "}");
                }
            }

            // Reverse directions at eps = 0: the slackness-qualified witness
            // is asserted, the bare reading is only measured.
            if (convexified && eps.is_zero()) {
                const auto probes = harness_detail::reverse_probe_zstars(inst, x0, eps);
                for (const auto& zst : probes) {
                    const auto ch = characterize_LPT(inst, x0, zst, eps, /*require_nonneg_z0=*/true);
                    if (ch) {
                        assert_that("lagrangian-nonneg-witness-implies-weakmin", v.holds(), where,
                                    "{\"z_star\":" + harness_detail::json_vec(zst) + "}");
                    }
                }
                bool some_lpt = false;
                Vec lpt_witness;
                for (const auto& zst : probes) {
                    RankOneOperator t;
                    t.z_star = zst;
                    t.e = inst.e;
                    if (check_wmin_LPT(inst, x0, t, eps).holds()) {
                        some_lpt = true;
                        lpt_witness = zst;
                        break;
                    }
                }
                if (some_lpt && !v.holds()) {
                    push("lagrangian-implies-weakmin-unqualified", PropertyStatus::ReportedViolated,
                         where, "{\"z_star\":" + harness_detail::json_vec(lpt_witness) + "}");
                } else {
                    push("lagrangian-implies-weakmin-unqualified", PropertyStatus::ReportedHolds, where);
                }
            }

            // Vector criterion implies the lattice criterion.
            if (v.holds()) {
                const SolutionVerdict l = check_l_wmin(inst, x0, eps);
                assert_that("vector-implies-lattice", l.status != VerdictStatus::Fails, where,
                            l.violation ? "{\"candidate\":\"" + candidate_str(l.violation->candidate) + "\"}"
                                        : "");
            }
            // Under a dominating point the two criteria coincide (exact in
            // discrete mode, where the lattice scan is complete).
            if (!convexified && !diag.dominating.empty()) {
                const SolutionVerdict l = check_l_wmin(inst, x0, eps);
                assert_that("lattice-iff-vector-under-domination", l.holds() == v.holds(), where);
            }

            // Convexified weak minimality restricts to the discrete family.
            if (convexified && v.holds()) {
                const Instance disc = harness_detail::with_mode(inst, EvalMode::Discrete);
                if (feasible(disc, Candidate(x0)).feasible) {
                    const SolutionVerdict dv = check_v_wmin(disc, x0, eps);
                    assert_that("convexified-implies-discrete-weakmin", dv.holds(), where);
                }
            }
        }

        for (std::size_t a = 0; a + 1 < v_by_eps.size(); ++a)
            assert_that("epsilon-monotonicity", !v_by_eps[a].second || v_by_eps[a + 1].second,
                        ctx(inst, x0, &v_by_eps[a].first));

        // Lattice criterion implies a lower-bound separation (convexified).
        // Polyhedral dichotomy: either the separation LP is feasible, or the
        // Q model meets int B x -int C and the intersection point yields a
        // candidate that must refute the lattice criterion.
        if (convexified) {
            const std::string where = ctx(inst, x0, nullptr);
            const auto sep = l_wmin_separation(inst, x0);
            if (sep) {
                assert_that("lattice-implies-lower-bound-separation", true, where);
            } else {
                const auto meet = harness_detail::q_meets_open_box(inst, compute_B(inst, x0));
                if (!meet.found) {
                    assert_that("lattice-implies-lower-bound-separation", false, where,
                                "{\"reason\":\"no separator and no intersection point\"}");
                } else {
                    const SolutionVerdict l = check_l_wmin(inst, x0, Rational(0), {meet.weights});
                    assert_that("lattice-implies-lower-bound-separation",
                                l.status == VerdictStatus::Fails, where,
                                "{\"derived_probe\":" + harness_detail::json_vec(meet.weights) + "}");
                }
            }
        }
    }

    // Interior-shift identity on sampled hulls and queries: A + int K versus
    // int(A + K), decided by two independent LP routes.
    {
        std::uint64_t state = 0x51abULL;
        std::size_t checked = 0;
        bool ok = true;
        std::string witness;
        std::vector<Vec> pool;
        for (const auto& L : inst.labels)
            for (const auto& y : L.f) pool.push_back(y);
        if (!pool.empty()) {
            for (std::size_t trial = 0; trial < 20 && ok; ++trial) {
                PointSet a;
                a.hull_mode = HullMode::Hull;
                const std::size_t npts = 1 + detail::splitmix64(state) % 3;
                for (std::size_t i = 0; i < npts; ++i)
                    a.points.push_back(pool[detail::splitmix64(state) % pool.size()]);
                Vec q(inst.y_dim);
                if (detail::splitmix64(state) % 2 == 0) {
                    for (auto& c : q)
                        c = Rational(static_cast<long>(detail::splitmix64(state) % 9) - 4,
                                     1 + static_cast<long>(detail::splitmix64(state) % 3));
                } else {
                    // Point assembled on the boundary: hull point plus a
                    // generator ray, exercising exact ties.
                    q = a.points[detail::splitmix64(state) % a.points.size()];
                    const auto& g =
                        inst.K.generators[detail::splitmix64(state) % inst.K.generators.size()];
                    q = add(q, scale(Rational(static_cast<long>(detail::splitmix64(state) % 3)), g));
                }
                const bool via_shift = set_plus_cone_membership(q, a, inst.K, true);
                const bool via_expansion = interior_membership_by_expansion(q, a, inst.K);
                ++checked;
                if (via_shift != via_expansion) {
                    ok = false;
                    witness = "{\"query\":" + harness_detail::json_vec(q) + "}";
                }
            }
        }
        assert_that("interior-shift-identity", ok,
                    ctx(inst, "", nullptr) + " samples=" + std::to_string(checked), witness);
    }

    // Scalarized-image membership: the linear image of the Q model equals the
    // hull of the per-label Lagrangian images plus K.
    {
        std::uint64_t state = 0xabcdULL;
        const QSet q = build_q(inst);
        bool ok = true;
        std::size_t checked = 0;
        std::string witness;
        std::vector<Vec> zs;
        zs.push_back(zero_vec(inst.z_dim));
        for (const auto& n : inst.C.normals) zs.push_back(n);
        for (const auto& zst : zs) {
            if (!ok) break;
            RankOneOperator t;
            t.z_star = zst;
            t.e = inst.e;
            std::vector<Vec> image_pts;
            for (const auto& v : q.vertices) {
                const Vec vy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
                const Vec vz(v.begin() + static_cast<std::ptrdiff_t>(q.y_dim), v.end());
                image_pts.push_back(add(vy, scale(dot(zst, vz), inst.e)));
            }
            if (image_pts.empty()) continue;
            std::vector<Vec> image_rays;
            for (const auto& r : q.rays) {
                const Vec ry(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
                const Vec rz(r.begin() + static_cast<std::ptrdiff_t>(q.y_dim), r.end());
                const Vec img = add(ry, scale(dot(zst, rz), inst.e));
                if (!is_zero(img)) image_rays.push_back(img);
            }
            for (std::size_t trial = 0; trial < 6 && ok; ++trial) {
                Vec w(inst.y_dim);
                if (trial % 2 == 0) {
                    for (auto& c : w)
                        c = Rational(static_cast<long>(detail::splitmix64(state) % 11) - 5,
                                     1 + static_cast<long>(detail::splitmix64(state) % 3));
                } else {
                    w = image_pts[detail::splitmix64(state) % image_pts.size()];
                    w = add(w, scale(Rational(static_cast<long>(detail::splitmix64(state) % 2)), inst.e));
                }
                // Route one: membership in the linear image of the Q model.
                detail::Program p;
                p.n = image_pts.size() + image_rays.size();
                p.signs.assign(p.n, detail::VarSign::NonNeg);
                p.c.assign(p.n, Rational(0));
                {
                    detail::Row sum;
                    sum.a.assign(p.n, Rational(0));
                    for (std::size_t v = 0; v < image_pts.size(); ++v) sum.a[v] = Rational(1);
                    sum.rel = Relation::Equal;
                    sum.b = Rational(1);
                    p.rows.push_back(std::move(sum));
                }
                for (std::size_t d = 0; d < inst.y_dim; ++d) {
                    detail::Row r;
                    r.a.resize(p.n);
                    for (std::size_t v = 0; v < image_pts.size(); ++v) r.a[v] = image_pts[v][d];
                    for (std::size_t rr = 0; rr < image_rays.size(); ++rr)
                        r.a[image_pts.size() + rr] = image_rays[rr][d];
                    r.rel = Relation::Equal;
                    r.b = w[d];
                    p.rows.push_back(std::move(r));
                }
                const bool via_image = detail::solve_program(p).status == LPStatus::Optimal;
                // Route two: hull of the per-label Lagrangian points plus K.
                const bool via_hull =
                    set_plus_cone_membership(w, PointSet{image_pts, HullMode::Hull}, inst.K, false);
                ++checked;
                if (via_image != via_hull) {
                    ok = false;
                    witness = "{\"w\":" + harness_detail::json_vec(w) + "}";
                }
            }
        }
        assert_that("scalarized-image-membership", ok,
                    ctx(inst, "", nullptr) + " samples=" + std::to_string(checked), witness);
    }

    return results;
}

// ---------------------------------------------------------------------------
// Fuzzing
// ---------------------------------------------------------------------------

namespace harness_detail {

inline Rational grid_rational(std::uint64_t& state, long span, std::size_t max_den) {
    const long num = static_cast<long>(detail::splitmix64(state) % (2 * span + 1)) - span;
    const long den = 1 + static_cast<long>(detail::splitmix64(state) % max_den);
    return Rational(num, den);
}

inline Cone random_cone(std::uint64_t& state, std::size_t dim) {
    if (detail::splitmix64(state) % 2 == 0) return orthant_cone(dim);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < dim; ++i) {
            Vec g(dim);
            for (std::size_t d = 0; d < dim; ++d)
                g[d] = Rational(static_cast<long>(detail::splitmix64(state) % 5) - 1);
            if (is_zero(g)) g[i] = Rational(1);
            gens.push_back(std::move(g));
        }
        try {
            return make_simplicial_cone(gens);
        } catch (const ConeError&) {
            continue;
        }
    }
    return orthant_cone(dim);
}

}  // namespace harness_detail

// Deterministic per-seed generation: cones are orthants or random simplicial
// cones, images live on a small rational grid, and plant_slater inserts one
// strictly feasible constraint value. Every generated instance passes
// validation by construction.
inline void validate_fuzz_config(const FuzzConfig& cfg) {
    if (cfg.count == 0 || cfg.max_y_dim == 0 || cfg.max_z_dim == 0 || cfg.max_labels == 0 ||
        cfg.max_points == 0 || cfg.max_denominator == 0)
        throw std::invalid_argument("fuzz config: all bounds must be positive");
}

inline Instance generate_instance(const FuzzConfig& cfg, std::uint64_t& state, EvalMode mode) {
    validate_fuzz_config(cfg);
    Instance inst;
    inst.y_dim = 1 + detail::splitmix64(state) % std::min<std::size_t>(cfg.max_y_dim, 4);
    inst.z_dim = 1 + detail::splitmix64(state) % std::min<std::size_t>(cfg.max_z_dim, 4);
    inst.K = harness_detail::random_cone(state, inst.y_dim);
    inst.C = harness_detail::random_cone(state, inst.z_dim);
    inst.e = zero_vec(inst.y_dim);
    for (const auto& g : inst.K.generators) {
        const long c = 1 + static_cast<long>(detail::splitmix64(state) % 3);
        inst.e = add(inst.e, scale(Rational(c), g));
    }
    inst.mode = mode;
    const std::size_t nlabels = 1 + detail::splitmix64(state) % std::min<std::size_t>(cfg.max_labels, 6);
    const std::size_t max_pts = std::min<std::size_t>(cfg.max_points, 4);
    const std::size_t max_den = std::min<std::size_t>(cfg.max_denominator, 8);
    for (std::size_t i = 0; i < nlabels; ++i) {
        LabelImages L;
        L.name = "x" + std::to_string(i);
        const std::size_t nf = 1 + detail::splitmix64(state) % max_pts;
        const std::size_t ng = 1 + detail::splitmix64(state) % max_pts;
        for (std::size_t k = 0; k < nf; ++k) {
            Vec y(inst.y_dim);
            for (auto& c : y) c = harness_detail::grid_rational(state, 4, max_den);
            L.f.push_back(std::move(y));
        }
        for (std::size_t k = 0; k < ng; ++k) {
            Vec z(inst.z_dim);
            for (auto& c : z) c = harness_detail::grid_rational(state, 4, max_den);
            L.g.push_back(std::move(z));
        }
        inst.labels.push_back(std::move(L));
    }
    if (cfg.plant_slater) {
        const std::size_t target = detail::splitmix64(state) % nlabels;
        inst.labels[target].g.push_back(neg(inst.C.interior_witness));
    }
    validate_instance(inst);
    return inst;
}

inline std::vector<FuzzRun> fuzz_instances(const FuzzConfig& cfg,
                                           const std::vector<Rational>& eps_list = {
                                               Rational(0), Rational(1, 4), Rational(1)}) {
    std::vector<FuzzRun> runs;
    std::uint64_t state = cfg.seed;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        std::vector<EvalMode> modes;
        if (cfg.mode == FuzzConfig::Mode::Discrete) modes = {EvalMode::Discrete};
        if (cfg.mode == FuzzConfig::Mode::Convexified) modes = {EvalMode::Convexified};
        if (cfg.mode == FuzzConfig::Mode::Both) modes = {EvalMode::Discrete, EvalMode::Convexified};
        const Instance base = generate_instance(cfg, state, EvalMode::Discrete);
        for (EvalMode mode : modes) {
            FuzzRun run;
            run.index = runs.size();
            run.instance = harness_detail::with_mode(base, mode);
            const std::string ref = "seed:" + std::to_string(cfg.seed) + "/" + std::to_string(i) +
                                    (mode == EvalMode::Discrete ? "/discrete" : "/convexified");
            run.results = verify_suite(run.instance, eps_list, ref);
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline bool has_asserted_failure(const std::vector<PropertyResult>& results) {
    for (const auto& r : results)
        if (r.status == PropertyStatus::AssertedFail) return true;
    return false;
}

inline std::string emit_report_machine(const std::vector<PropertyResult>& results) {
    harness_detail::Json j = harness_detail::Json::object();
    std::map<std::string, std::size_t> counts;
    for (const auto& r : results) ++counts[property_status_str(r.status)];
    harness_detail::Json jc = harness_detail::Json::object();
    for (const auto& [k, v] : counts) jc[k] = v;
    j["counts"] = std::move(jc);
    harness_detail::Json arr = harness_detail::Json::array();
    for (const auto& r : results) {
        harness_detail::Json e = harness_detail::Json::object();
        e["property"] = r.property_id;
        e["status"] = property_status_str(r.status);
        e["instance"] = r.instance_ref;
        e["context"] = r.context;
        if (r.witness.empty())
            e["witness"] = nullptr;
        else
            e["witness"] = harness_detail::Json::parse(r.witness);
        arr.push_back(std::move(e));
    }
    j["results"] = std::move(arr);
    return j.dump(2) + "\n";
}

inline std::string emit_report_human(const std::vector<PropertyResult>& results) {
    std::map<std::string, std::map<PropertyStatus, std::size_t>> table;
    for (const auto& r : results) ++table[r.property_id][r.status];
    std::string out;
    out += "property                                        pass  fail  rep-ok  rep-viol  skip\n";
    for (const auto& [id, row] : table) {
        auto cnt = [&](PropertyStatus s) {
            auto it = row.find(s);
            return it == row.end() ? std::size_t(0) : it->second;
        };
        std::string line = id;
        line.resize(46, ' ');
        auto num = [](std::size_t v, std::size_t w) {
            std::string s = std::to_string(v);
            return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
        };
        line += num(cnt(PropertyStatus::AssertedPass), 6);
        line += num(cnt(PropertyStatus::AssertedFail), 6);
        line += num(cnt(PropertyStatus::ReportedHolds), 8);
        line += num(cnt(PropertyStatus::ReportedViolated), 10);
        line += num(cnt(PropertyStatus::Skipped), 6);
        out += line + "\n";
    }
    for (const auto& r : results) {
        if (r.status == PropertyStatus::AssertedFail || r.status == PropertyStatus::ReportedViolated) {
            out += std::string(r.status == PropertyStatus::AssertedFail ? "FAIL " : "violated ") +
                   r.property_id + " [" + r.instance_ref + " " + r.context + "]";
            if (!r.witness.empty()) out += " witness " + r.witness;
            out += "\n";
        }
    }
    return out;
}

inline std::string emit_report(const std::vector<PropertyResult>& results, bool machine) {
    return machine ? emit_report_machine(results) : emit_report_human(results);
}

inline std::vector<PropertyResult> parse_report(const std::string& text) {
    harness_detail::Json j;
    try {
        j = harness_detail::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("results")) throw ParseError("report file: missing results");
    std::vector<PropertyResult> out;
    for (const auto& e : j.at("results")) {
        PropertyResult r;
        r.property_id = e.at("property").get<std::string>();
        const auto st = property_status_from_str(e.at("status").get<std::string>());
        if (!st) throw ParseError("report file: unknown status");
        r.status = *st;
        r.instance_ref = e.value("instance", std::string());
        r.context = e.value("context", std::string());
        if (e.contains("witness") && !e.at("witness").is_null()) r.witness = e.at("witness").dump();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace svo
