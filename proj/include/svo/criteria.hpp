#pragma once

#include "svo/cone.hpp"
#include "svo/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svo {

enum class VerdictStatus { Holds, HoldsOnProbes, Fails, NotFeasible };

struct Violation {
    Candidate candidate;  // competitor that refutes minimality
    Vec point;            // its image point doing the refuting
    Vec refuted_y0;       // which element of f(x0) (or L(x0)) it beats
};

struct SolutionVerdict {
    VerdictStatus status = VerdictStatus::NotFeasible;
    std::optional<Vec> certifying_y0;
    std::optional<Violation> violation;
    std::size_t probes_used = 0;

    bool holds() const {
        return status == VerdictStatus::Holds || status == VerdictStatus::HoldsOnProbes;
    }
};

// B(x0) = { y~ | f(x0) contained in y~ + K }, cut out by K's normals with
// per-normal minima over f(x0) as offsets.
struct LowerBoundPolyhedron {
    std::vector<Vec> normals;
    Vec offsets;
};

struct DiagnosticsReport {
    Rational k_bound;                  // minimal t with f(x0) in -t e + K
    std::vector<Vec> int_k_minimal;    // y0 with f(x0) avoiding y0 - int K
    std::vector<Vec> dominating;       // y0 with f(x0) inside y0 + K
    bool finite_image = true;          // finite images are always K-bounded
};

namespace detail {

// Deterministic rational simplex points over the active labels.
inline std::vector<Vec> seeded_simplex_probes(const Instance& inst, std::size_t count,
                                              std::uint64_t seed) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < inst.labels.size(); ++i)
        if (inst.active(i)) active.push_back(i);
    std::vector<Vec> out;
    if (active.empty()) return out;
    std::uint64_t state = seed;
    while (out.size() < count) {
        Vec w(inst.labels.size());
        Rational total;
        for (std::size_t i : active) {
            const long num = static_cast<long>(splitmix64(state) % 9);
            w[i] = Rational(num);
            total += w[i];
        }
        if (total.is_zero()) continue;
        for (std::size_t i : active) w[i] /= total;
        out.push_back(std::move(w));
    }
    return out;
}

// Membership of target in f(lambda) + K (interior when strict), where
// f(lambda) is the weighted Minkowski combination of the per-label hulls.
inline bool weighted_image_plus_cone(const Instance& inst, const Vec& weights, const Vec& target,
                                     bool interior) {
    std::vector<std::pair<std::size_t, std::size_t>> vars;  // (label, f point)
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (weights[i].is_zero()) continue;
        if (inst.labels[i].f.empty()) return false;  // empty factor empties the sum
        for (std::size_t k = 0; k < inst.labels[i].f.size(); ++k) vars.emplace_back(i, k);
    }
    if (vars.empty()) return false;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (weights[i].is_zero()) continue;
        Row r;
        r.a.assign(vars.size(), Rational(0));
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (vars[v].first == i) r.a[v] = Rational(1);
        r.rel = Relation::Equal;
        r.b = weights[i];
        rows.push_back(std::move(r));
    }
    for (const auto& n : inst.K.normals) {
        Row r;
        r.a.resize(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v)
            r.a[v] = dot(n, inst.labels[vars[v].first].f[vars[v].second]);
        r.rel = interior ? Relation::Less : Relation::LessEq;
        r.b = dot(n, target);
        rows.push_back(std::move(r));
    }
    if (!interior) {
        Program p;
        p.n = vars.size();
        p.signs.assign(p.n, VarSign::NonNeg);
        p.c.assign(p.n, Rational(0));
        p.rows = rows;
        return solve_program(p).status == LPStatus::Optimal;
    }
    return decide_strict(vars.size(), std::vector<VarSign>(vars.size(), VarSign::NonNeg), rows)
        .strictly_feasible;
}

// Extreme candidates of f(lambda): weighted sums over one pick per supported
// label. Finitely many, and membership of all of them in a convex set decides
// inclusion of the whole weighted image.
inline std::vector<Vec> weighted_image_points(const Instance& inst, const Vec& weights) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!weights[i].is_zero()) support.push_back(i);
    std::vector<Vec> out;
    std::size_t combos = 1;
    for (std::size_t i : support) {
        if (inst.labels[i].f.empty()) return out;
        combos *= inst.labels[i].f.size();
        if (combos > 100000) throw std::length_error("weighted image: pick-product too large");
    }
    std::vector<std::size_t> pick(support.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        Vec sum(inst.y_dim);
        for (std::size_t s = 0; s < support.size(); ++s)
            sum = add(sum, scale(weights[support[s]], inst.labels[support[s]].f[pick[s]]));
        out.push_back(std::move(sum));
        for (std::size_t s = 0; s < support.size(); ++s) {
            if (++pick[s] < inst.labels[support[s]].f.size()) break;
            pick[s] = 0;
        }
    }
    return out;
}

}  // namespace detail

// Vector criterion: some y0 in f(x0) such that no feasible image point lands
// in y0 - eps e - int K. The scan over the finite f(x0) is exact in both
// modes; in convexified mode each y0 is tested by one strict LP over the
// simplex weights, the image picks and the feasibility picks.
inline SolutionVerdict check_v_wmin(const Instance& inst, const std::string& x0,
                                    const Rational& eps) {
    if (eps < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
    const std::size_t ix0 = inst.index_of(x0);
    SolutionVerdict verdict;
    if (!feasible(inst, Candidate(x0)).feasible) return verdict;  // NotFeasible

    const Vec shift = scale(eps, inst.e);
    const auto& f0 = inst.labels[ix0].f;

    if (inst.mode == EvalMode::Discrete) {
        std::vector<std::size_t> competitors;
        for (std::size_t i = 0; i < inst.labels.size(); ++i)
            if (!inst.labels[i].g.empty() && feasible(inst, Candidate(inst.labels[i].name)).feasible)
                competitors.push_back(i);
        for (const auto& y0 : f0) {
            const Vec base = sub(y0, shift);
            bool refuted = false;
            for (std::size_t i : competitors) {
                for (const auto& y : inst.labels[i].f) {
                    if (cone_membership(sub(base, y), inst.K, true)) {
                        refuted = true;
                        if (!verdict.violation)
                            verdict.violation = Violation{Candidate(inst.labels[i].name), y, y0};
                        break;
                    }
                }
                if (refuted) break;
            }
            if (!refuted) {
                verdict.status = VerdictStatus::Holds;
                verdict.certifying_y0 = y0;
                verdict.violation.reset();
                return verdict;
            }
        }
        verdict.status = VerdictStatus::Fails;
        return verdict;
    }

    // Convexified: one strict LP per y0. Variables are f picks (alpha) and
    // g picks (beta) per active label; picks of a label share its weight.
    std::vector<std::pair<std::size_t, std::size_t>> fvars, gvars;
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (!inst.active(i)) continue;
        for (std::size_t k = 0; k < inst.labels[i].f.size(); ++k) fvars.emplace_back(i, k);
        for (std::size_t k = 0; k < inst.labels[i].g.size(); ++k) gvars.emplace_back(i, k);
    }
    const std::size_t nf = fvars.size(), ng = gvars.size();
    for (const auto& y0 : f0) {
        const Vec base = sub(y0, shift);
        std::vector<detail::Row> rows;
        for (std::size_t i = 0; i < inst.labels.size(); ++i) {
            if (!inst.active(i)) continue;
            detail::Row r;
            r.a.assign(nf + ng, Rational(0));
            for (std::size_t v = 0; v < nf; ++v)
                if (fvars[v].first == i) r.a[v] = Rational(1);
            for (std::size_t v = 0; v < ng; ++v)
                if (gvars[v].first == i) r.a[nf + v] = Rational(-1);
            r.rel = Relation::Equal;
            r.b = Rational(0);
            rows.push_back(std::move(r));
        }
        {
            detail::Row sum;
            sum.a.assign(nf + ng, Rational(0));
            for (std::size_t v = 0; v < nf; ++v) sum.a[v] = Rational(1);
            sum.rel = Relation::Equal;
            sum.b = Rational(1);
            rows.push_back(std::move(sum));
        }
        for (const auto& n : inst.C.normals) {
            detail::Row r;
            r.a.assign(nf + ng, Rational(0));
            for (std::size_t v = 0; v < ng; ++v)
                r.a[nf + v] = -dot(n, inst.labels[gvars[v].first].g[gvars[v].second]);
            r.rel = Relation::GreaterEq;
            r.b = Rational(0);
            rows.push_back(std::move(r));
        }
        for (const auto& n : inst.K.normals) {
            detail::Row r;
            r.a.assign(nf + ng, Rational(0));
            for (std::size_t v = 0; v < nf; ++v)
                r.a[v] = dot(n, inst.labels[fvars[v].first].f[fvars[v].second]);
            r.rel = Relation::Less;
            r.b = dot(n, base);
            rows.push_back(std::move(r));
        }
        const auto d = detail::decide_strict(
            nf + ng, std::vector<detail::VarSign>(nf + ng, detail::VarSign::NonNeg), rows);
        if (d.strictly_feasible) {
            if (!verdict.violation) {
                Vec weights(inst.labels.size());
                Vec point(inst.y_dim);
                for (std::size_t v = 0; v < nf; ++v) {
                    weights[fvars[v].first] += d.witness[v];
                    point = add(point, scale(d.witness[v], inst.labels[fvars[v].first].f[fvars[v].second]));
                }
                verdict.violation = Violation{Candidate(weights), point, y0};
            }
        } else {
            verdict.status = VerdictStatus::Holds;
            verdict.certifying_y0 = y0;
            verdict.violation.reset();
            return verdict;
        }
    }
    verdict.status = VerdictStatus::Fails;
    return verdict;
}

// Lattice criterion with the repaired consequent: for every feasible
// competitor x, f(x0) inside int(f(x)+K) + eps e forces f(x) inside
// int(f(x0)+K) + eps e. Discrete mode scans all labels and is exact;
// convexified mode checks simplex vertices, caller probes and seeded probes,
// so a clean pass is reported holds-on-probes while any refutation is exact.
inline SolutionVerdict check_l_wmin(const Instance& inst, const std::string& x0,
                                    const Rational& eps, const std::vector<Vec>& probes = {},
                                    std::size_t seeded_probes = 4, std::uint64_t seed = 2024) {
    if (eps < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
    const std::size_t ix0 = inst.index_of(x0);
    SolutionVerdict verdict;
    if (!feasible(inst, Candidate(x0)).feasible) return verdict;

    const Vec shift = scale(eps, inst.e);
    const auto& f0 = inst.labels[ix0].f;
    const HullMode hm = inst.mode == EvalMode::Convexified ? HullMode::Hull : HullMode::Union;
    const PointSet f0set{f0, hm};

    std::vector<Candidate> candidates;
    for (const auto& L : inst.labels) {
        if (L.f.empty() || L.g.empty()) continue;
        if (feasible(inst, Candidate(L.name)).feasible) candidates.emplace_back(L.name);
    }
    if (inst.mode == EvalMode::Convexified) {
        for (const auto& w : probes) {
            detail::check_weights(inst, w);
            if (feasible(inst, Candidate(w)).feasible) candidates.emplace_back(w);
        }
        for (const auto& w : detail::seeded_simplex_probes(inst, seeded_probes, seed))
            if (feasible(inst, Candidate(w)).feasible) candidates.emplace_back(w);
    }

    for (const auto& cand : candidates) {
        ++verdict.probes_used;
        // Antecedent: every y0 - eps e lies in the competitor image + int K.
        bool antecedent = true;
        if (std::holds_alternative<std::string>(cand)) {
            const auto& L = inst.labels[inst.index_of(std::get<std::string>(cand))];
            const PointSet img{L.f, hm};
            for (const auto& y0 : f0) {
                if (!set_plus_cone_membership(sub(y0, shift), img, inst.K, true)) {
                    antecedent = false;
                    break;
                }
            }
        } else {
            const Vec& w = std::get<Vec>(cand);
            for (const auto& y0 : f0) {
                if (!detail::weighted_image_plus_cone(inst, w, sub(y0, shift), true)) {
                    antecedent = false;
                    break;
                }
            }
        }
        if (!antecedent) continue;
        // Consequent: every extreme point of the competitor image must lie in
        // int(f(x0)+K) + eps e.
        std::vector<Vec> pts;
        if (std::holds_alternative<std::string>(cand)) {
            pts = inst.labels[inst.index_of(std::get<std::string>(cand))].f;
        } else {
            pts = detail::weighted_image_points(inst, std::get<Vec>(cand));
        }
        for (const auto& p : pts) {
            if (!set_plus_cone_membership(sub(p, shift), f0set, inst.K, true)) {
                verdict.status = VerdictStatus::Fails;
                verdict.violation = Violation{cand, p, f0.empty() ? Vec{} : f0.front()};
                return verdict;
            }
        }
    }
    verdict.status =
        inst.mode == EvalMode::Discrete ? VerdictStatus::Holds : VerdictStatus::HoldsOnProbes;
    return verdict;
}

inline LowerBoundPolyhedron compute_B(const Instance& inst, const std::string& x0) {
    const auto& f0 = inst.labels[inst.index_of(x0)].f;
    if (f0.empty()) throw EmptyImage("compute_B: empty objective image at " + x0);
    LowerBoundPolyhedron b;
    b.normals = inst.K.normals;
    b.offsets.reserve(b.normals.size());
    for (const auto& n : b.normals) {
        Rational best = dot(n, f0.front());
        for (const auto& y : f0) best = min(best, dot(n, y));
        b.offsets.push_back(best);
    }
    return b;
}

inline bool lower_bound_contains(const LowerBoundPolyhedron& b, const Vec& y) {
    for (std::size_t i = 0; i < b.normals.size(); ++i)
        if (dot(b.normals[i], y) > b.offsets[i]) return false;
    return true;
}

inline DiagnosticsReport image_diagnostics(const Instance& inst, const std::string& x0) {
    const auto& f0 = inst.labels[inst.index_of(x0)].f;
    if (f0.empty()) throw EmptyImage("image_diagnostics: empty objective image at " + x0);
    DiagnosticsReport report;
    report.k_bound = min_k_bound(PointSet{f0, HullMode::Union}, inst.e, inst.K);
    for (const auto& y0 : f0) {
        bool minimal = true;
        bool dominates = true;
        for (const auto& y : f0) {
            if (cone_membership(sub(y0, y), inst.K, true)) minimal = false;
            if (!cone_membership(sub(y, y0), inst.K, false)) dominates = false;
        }
        if (minimal) report.int_k_minimal.push_back(y0);
        if (dominates) report.dominating.push_back(y0);
    }
    return report;
}

}  // namespace svo
