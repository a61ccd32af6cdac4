#pragma once

#include "svo/criteria.hpp"
#include "svo/instance.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace svo {

enum class Normalization { YStarEEqualsOne, CoefficientSumEqualsOne };

// Separating pair for the vector criterion at (x0, eps):
//   y*(y0 - eps e) <= inf over Q of y*(y) + z*(z),
// with y* and z* given densely and as nonnegative coefficients over the dual
// generators (the normals of K and C). The normalization records which of the
// two nonzero-normalizations produced it: y*(e) = 1 in the Slater regime, the
// coefficient sum otherwise (which admits y* = 0 certificates).
struct MultiplierCertificate {
    Vec y0;
    std::optional<Vec> z0;
    Vec y_star;
    Vec y_star_coeffs;
    Vec z_star;
    Vec z_star_coeffs;
    Normalization normalization = Normalization::YStarEEqualsOne;
    Rational inf_q_value;
    bool q_has_vertices = true;
    std::vector<std::pair<Vec, Rational>> slackness;  // (z, z*(z)) over g(x0)
    Rational y_star_e;

    bool y_star_zero() const { return is_zero(y_star); }
};

struct SlacknessReport {
    Rational epsilon;
    struct Entry {
        Vec z;
        Rational z_star_z;
        Vec t_z;
    };
    std::vector<Entry> per_z;
    Rational min_slack;  // zero over an empty constraint image
    bool zero_on_feasible_part = true;
    bool eps_bound_satisfied = true;  // min_slack >= -eps * y*(e) when y*(e) known
};

struct LPTCharacterization {
    Vec y0;
    Vec z0;
    Vec y_star;
    Vec y_star_coeffs;
};

struct SeparationPair {
    Vec y_star;
    Vec y_star_coeffs;
    Vec z_star;
    Vec z_star_coeffs;
    Rational threshold;  // s with sup_B y* <= s <= inf_Q scalarization
    Normalization normalization = Normalization::YStarEEqualsOne;
};

struct HReport {
    bool probe_mode = false;
    bool admissible = false;
    bool member = false;
    std::optional<std::pair<Vec, Vec>> found;  // search mode result
    std::optional<Rational> sup_b;             // nullopt means unbounded above
    InfKind inf_kind = InfKind::Empty;
    Rational inf_q;
    std::optional<std::pair<Vec, Vec>> attainment;  // (y0, z0) with equality
    bool attained = false;
};

namespace detail {

// Shared shape of the separation searches: maximize the smallest K+
// coefficient subject to per-vertex separation rows and a nonzero
// normalization. The symmetric objective keeps certificates deterministic and
// centered.
struct MultiplierSearch {
    Vec eta, mu;
};

inline std::optional<MultiplierSearch> find_separator(const Instance& inst, const QSet& q,
                                                      const Vec& base_y,
                                                      const Rational& base_const,
                                                      Normalization norm) {
    const std::size_t k = inst.K.normals.size();
    const std::size_t l = inst.C.normals.size();
    Program p;
    p.sense = Sense::Maximize;
    p.n = k + l + 1;
    p.signs.assign(p.n, VarSign::NonNeg);
    p.signs[k + l] = VarSign::Free;
    p.c.assign(p.n, Rational(0));
    p.c[k + l] = Rational(1);
    // Separation at every vertex: sum_i eta_i a_i.(v_y - base_y)
    //                            + sum_j mu_j b_j.(v_z) >= base_const.
    for (const auto& v : q.vertices) {
        Row r;
        r.a.assign(p.n, Rational(0));
        const Vec vy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
        const Vec vz(v.begin() + static_cast<std::ptrdiff_t>(q.y_dim), v.end());
        for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], sub(vy, base_y));
        for (std::size_t j = 0; j < l; ++j) r.a[k + j] = dot(inst.C.normals[j], vz);
        r.rel = Relation::GreaterEq;
        r.b = base_const;
        p.rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < k; ++i) {
        Row r;
        r.a.assign(p.n, Rational(0));
        r.a[i] = Rational(1);
        r.a[k + l] = Rational(-1);
        r.rel = Relation::GreaterEq;
        r.b = Rational(0);
        p.rows.push_back(std::move(r));
    }
    {
        Row r;
        r.a.assign(p.n, Rational(0));
        for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], inst.e);
        if (norm == Normalization::CoefficientSumEqualsOne)
            for (std::size_t j = 0; j < l; ++j) r.a[k + j] = Rational(1);
        r.rel = Relation::Equal;
        r.b = Rational(1);
        p.rows.push_back(std::move(r));
    }
    const ProgramResult res = solve_program(p);
    if (res.status != LPStatus::Optimal) return std::nullopt;
    MultiplierSearch out;
    out.eta.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
    out.mu.assign(res.x.begin() + static_cast<std::ptrdiff_t>(k),
                  res.x.begin() + static_cast<std::ptrdiff_t>(k + l));
    return out;
}

inline Vec dense_from_coeffs(const std::vector<Vec>& generators, const Vec& coeffs,
                             std::size_t dim) {
    Vec out(dim);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out = add(out, scale(coeffs[i], generators[i]));
    return out;
}

}  // namespace detail

// Searches f(x0) for a separating multiplier pair at tolerance eps. Per
// candidate y0 the y*(e) = 1 normalization is tried first; the coefficient
// sum normalization follows, covering separators with y* = 0 (those exist
// only when the constraint qualification fails).
inline std::optional<MultiplierCertificate> find_multiplier(const Instance& inst,
                                                            const std::string& x0,
                                                            const Rational& eps) {
    if (eps < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
    const std::size_t ix0 = inst.index_of(x0);
    const auto& f0 = inst.labels[ix0].f;
    const auto& g0 = inst.labels[ix0].g;
    if (f0.empty()) return std::nullopt;
    const QSet q = build_q(inst);

    for (const auto& y0 : f0) {
        const Vec base = sub(y0, scale(eps, inst.e));
        for (Normalization norm :
             {Normalization::YStarEEqualsOne, Normalization::CoefficientSumEqualsOne}) {
            const auto found = detail::find_separator(inst, q, base, Rational(0), norm);
            if (!found) continue;
            MultiplierCertificate cert;
            cert.y0 = y0;
            cert.y_star_coeffs = found->eta;
            cert.z_star_coeffs = found->mu;
            cert.y_star = detail::dense_from_coeffs(inst.K.normals, found->eta, inst.y_dim);
            cert.z_star = detail::dense_from_coeffs(inst.C.normals, found->mu, inst.z_dim);
            cert.normalization = norm;
            cert.y_star_e = dot(cert.y_star, inst.e);
            const ScalarizedInf inf = scalarized_infimum(q, cert.y_star, cert.z_star);
            if (inf.kind == InfKind::MinusInfinity)
                throw std::logic_error("separator scalarizes a recession ray negatively");
            cert.q_has_vertices = inf.kind == InfKind::Finite;
            cert.inf_q_value = cert.q_has_vertices ? inf.value : dot(cert.y_star, base);
            if (cert.q_has_vertices && !(dot(cert.y_star, base) <= cert.inf_q_value))
                throw std::logic_error("separation inequality failed to re-evaluate");
            // Witness z0: minimize z*(z) over g(x0), preferring points of -C.
            if (!g0.empty()) {
                Rational best = dot(cert.z_star, g0.front());
                for (const auto& z : g0) best = min(best, dot(cert.z_star, z));
                const Vec* chosen = nullptr;
                for (const auto& z : g0) {
                    if (dot(cert.z_star, z) == best && cone_membership(neg(z), inst.C, false)) {
                        chosen = &z;
                        break;
                    }
                }
                if (!chosen)
                    for (const auto& z : g0)
                        if (dot(cert.z_star, z) == best) {
                            chosen = &z;
                            break;
                        }
                cert.z0 = *chosen;
            }
            for (const auto& z : g0) cert.slackness.emplace_back(z, dot(cert.z_star, z));
            return cert;
        }
    }
    return std::nullopt;
}

// Vector criterion for the Lagrangian problem: x0 against the union of the
// Lagrangian images of all labels, with no feasibility restriction. Exact in
// both modes; the image family is finite, and its convexified union is the
// hull of the per-label point sets.
inline SolutionVerdict check_wmin_LPT(const Instance& inst, const std::string& x0,
                                      const RankOneOperator& t, const Rational& eps) {
    if (eps < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
    const std::vector<Vec> l0 = lagrangian_image(inst, Candidate(x0), t).points;
    const Vec shift = scale(eps, inst.e);

    std::vector<std::pair<std::size_t, Vec>> competitors;  // (label, point)
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (!inst.active(i)) continue;
        for (const auto& pt : lagrangian_image(inst, Candidate(inst.labels[i].name), t).points)
            competitors.emplace_back(i, pt);
    }

    SolutionVerdict verdict;
    if (inst.mode == EvalMode::Discrete) {
        for (const auto& p0 : l0) {
            const Vec base = sub(p0, shift);
            bool refuted = false;
            for (const auto& [label, pt] : competitors) {
                if (cone_membership(sub(base, pt), inst.K, true)) {
                    refuted = true;
                    if (!verdict.violation)
                        verdict.violation = Violation{Candidate(inst.labels[label].name), pt, p0};
                    break;
                }
            }
            if (!refuted) {
                verdict.status = VerdictStatus::Holds;
                verdict.certifying_y0 = p0;
                verdict.violation.reset();
                return verdict;
            }
        }
        verdict.status = VerdictStatus::Fails;
        return verdict;
    }

    const std::size_t npts = competitors.size();
    for (const auto& p0 : l0) {
        const Vec base = sub(p0, shift);
        std::vector<detail::Row> rows;
        {
            detail::Row sum;
            sum.a.assign(npts, Rational(1));
            sum.rel = Relation::Equal;
            sum.b = Rational(1);
            rows.push_back(std::move(sum));
        }
        for (const auto& n : inst.K.normals) {
            detail::Row r;
            r.a.resize(npts);
            for (std::size_t v = 0; v < npts; ++v) r.a[v] = dot(n, competitors[v].second);
            r.rel = Relation::Less;
            r.b = dot(n, base);
            rows.push_back(std::move(r));
        }
        const auto d = detail::decide_strict(
            npts, std::vector<detail::VarSign>(npts, detail::VarSign::NonNeg), rows);
        if (!d.strictly_feasible) {
            verdict.status = VerdictStatus::Holds;
            verdict.certifying_y0 = p0;
            verdict.violation.reset();
            return verdict;
        }
        if (!verdict.violation) {
            Vec weights(inst.labels.size());
            Vec point(inst.y_dim);
            for (std::size_t v = 0; v < npts; ++v) {
                weights[competitors[v].first] += d.witness[v];
                point = add(point, scale(d.witness[v], competitors[v].second));
            }
            verdict.violation = Violation{Candidate(weights), point, p0};
        }
    }
    verdict.status = VerdictStatus::Fails;
    return verdict;
}

// Fixed-z* characterization of Lagrangian weak minimality: a witness pair
// (y0, z0) and y* in the dual cone of K with y*(e) = 1 such that
// y*(y0) + z*(z0) - eps bounds the Q scalarization from below.
inline std::optional<LPTCharacterization> characterize_LPT(const Instance& inst,
                                                           const std::string& x0,
                                                           const Vec& z_star, const Rational& eps,
                                                           bool require_nonneg_z0 = false) {
    if (eps < Rational(0)) throw std::invalid_argument("epsilon must be nonnegative");
    for (const auto& g : inst.C.generators)
        if (dot(z_star, g) < Rational(0))
            throw std::invalid_argument("characterize_LPT: z* must lie in the dual cone of C");
    const std::size_t ix0 = inst.index_of(x0);
    const auto& f0 = inst.labels[ix0].f;
    const auto& g0 = inst.labels[ix0].g;
    const QSet q = build_q(inst);
    const std::size_t k = inst.K.normals.size();

    for (const auto& y0 : f0) {
        for (const auto& z0 : g0) {
            const Rational zz0 = dot(z_star, z0);
            if (require_nonneg_z0 && zz0 < Rational(0)) continue;
            detail::Program p;
            p.sense = Sense::Maximize;
            p.n = k + 1;
            p.signs.assign(p.n, detail::VarSign::NonNeg);
            p.signs[k] = detail::VarSign::Free;
            p.c.assign(p.n, Rational(0));
            p.c[k] = Rational(1);
            for (const auto& v : q.vertices) {
                detail::Row r;
                r.a.assign(p.n, Rational(0));
                const Vec vy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
                const Vec vz(v.begin() + static_cast<std::ptrdiff_t>(q.y_dim), v.end());
                for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], sub(vy, y0));
                r.rel = Relation::GreaterEq;
                r.b = zz0 - eps - dot(z_star, vz);
                p.rows.push_back(std::move(r));
            }
            for (std::size_t i = 0; i < k; ++i) {
                detail::Row r;
                r.a.assign(p.n, Rational(0));
                r.a[i] = Rational(1);
                r.a[k] = Rational(-1);
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
            const detail::ProgramResult res = detail::solve_program(p);
            if (res.status != LPStatus::Optimal) continue;
            LPTCharacterization out;
            out.y0 = y0;
            out.z0 = z0;
            out.y_star_coeffs.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
            out.y_star = detail::dense_from_coeffs(inst.K.normals, out.y_star_coeffs, inst.y_dim);
            return out;
        }
    }
    return std::nullopt;
}

inline SlacknessReport slackness_report(const Instance& inst, const std::string& x0,
                                        const Vec& z_star, const Rational& eps,
                                        std::optional<Rational> y_star_e = std::nullopt) {
    const auto& g0 = inst.labels[inst.index_of(x0)].g;
    SlacknessReport report;
    report.epsilon = eps;
    bool first = true;
    for (const auto& z : g0) {
        const Rational slack = dot(z_star, z);
        report.per_z.push_back({z, slack, scale(slack, inst.e)});
        if (first || slack < report.min_slack) report.min_slack = slack;
        first = false;
        if (cone_membership(neg(z), inst.C, false) && !slack.is_zero())
            report.zero_on_feasible_part = false;
    }
    if (y_star_e) report.eps_bound_satisfied = report.min_slack >= -eps * *y_star_e;
    return report;
}

inline SlacknessReport slackness_report(const MultiplierCertificate& cert, const Instance& inst,
                                        const std::string& x0, const Rational& eps) {
    return slackness_report(inst, x0, cert.z_star, eps, cert.y_star_e);
}

// Single-LP search for the lattice-criterion separation
//   sup over B(x0) of y* <= inf over Q of y*(y) + z*(z):
// the supremum side is dualized with multipliers nu over B's inequalities.
inline std::optional<SeparationPair> l_wmin_separation(const Instance& inst, const std::string& x0,
                                                       bool allow_zero_objective_multiplier = true) {
    const LowerBoundPolyhedron b = compute_B(inst, x0);
    const QSet q = build_q(inst);
    const std::size_t k = inst.K.normals.size();
    const std::size_t l = inst.C.normals.size();
    const std::size_t dim = inst.y_dim;

    std::vector<Normalization> norms{Normalization::YStarEEqualsOne};
    if (allow_zero_objective_multiplier) norms.push_back(Normalization::CoefficientSumEqualsOne);

    for (Normalization norm : norms) {
        // Variables: eta (k), mu (l), nu (k), s, delta.
        detail::Program p;
        p.sense = Sense::Maximize;
        p.n = 2 * k + l + 2;
        p.signs.assign(p.n, detail::VarSign::NonNeg);
        const std::size_t s_ix = 2 * k + l;
        const std::size_t d_ix = 2 * k + l + 1;
        p.signs[s_ix] = detail::VarSign::Free;
        p.signs[d_ix] = detail::VarSign::Free;
        p.c.assign(p.n, Rational(0));
        p.c[d_ix] = Rational(1);
        for (std::size_t d = 0; d < dim; ++d) {
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            for (std::size_t i = 0; i < k; ++i) {
                r.a[k + l + i] = inst.K.normals[i][d];
                r.a[i] = -inst.K.normals[i][d];
            }
            r.rel = Relation::Equal;
            r.b = Rational(0);
            p.rows.push_back(std::move(r));
        }
        {
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            for (std::size_t i = 0; i < k; ++i) r.a[k + l + i] = b.offsets[i];
            r.a[s_ix] = Rational(-1);
            r.rel = Relation::LessEq;
            r.b = Rational(0);
            p.rows.push_back(std::move(r));
        }
        for (const auto& v : q.vertices) {
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            const Vec vy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.y_dim));
            const Vec vz(v.begin() + static_cast<std::ptrdiff_t>(q.y_dim), v.end());
            for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], vy);
            for (std::size_t j = 0; j < l; ++j) r.a[k + j] = dot(inst.C.normals[j], vz);
            r.a[s_ix] = Rational(-1);
            r.rel = Relation::GreaterEq;
            r.b = Rational(0);
            p.rows.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < k; ++i) {
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            r.a[i] = Rational(1);
            r.a[d_ix] = Rational(-1);
            r.rel = Relation::GreaterEq;
            r.b = Rational(0);
            p.rows.push_back(std::move(r));
        }
        {
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            for (std::size_t i = 0; i < k; ++i) r.a[i] = dot(inst.K.normals[i], inst.e);
            if (norm == Normalization::CoefficientSumEqualsOne)
                for (std::size_t j = 0; j < l; ++j) r.a[k + j] = Rational(1);
            r.rel = Relation::Equal;
            r.b = Rational(1);
            p.rows.push_back(std::move(r));
        }
        const detail::ProgramResult res = detail::solve_program(p);
        if (res.status != LPStatus::Optimal) continue;
        SeparationPair out;
        out.y_star_coeffs.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
        out.z_star_coeffs.assign(res.x.begin() + static_cast<std::ptrdiff_t>(k),
                                 res.x.begin() + static_cast<std::ptrdiff_t>(k + l));
        out.y_star = detail::dense_from_coeffs(inst.K.normals, out.y_star_coeffs, inst.y_dim);
        out.z_star = detail::dense_from_coeffs(inst.C.normals, out.z_star_coeffs, inst.z_dim);
        out.threshold = res.x[s_ix];
        out.normalization = norm;
        return out;
    }
    return std::nullopt;
}

// Membership and attainment analysis for the multiplier set H(x0). Probe mode
// re-decides the two defining inequalities through separate LPs; search mode
// looks for any element under the y*(e) = 1 normalization. Attainment scans
// the finite f(x0) x g(x0) pairs for exact equality with the Q infimum.
inline HReport H_analysis(const Instance& inst, const std::string& x0,
                          const std::optional<std::pair<Vec, Vec>>& probe = std::nullopt) {
    const std::size_t ix0 = inst.index_of(x0);
    const LowerBoundPolyhedron b = compute_B(inst, x0);
    const QSet q = build_q(inst);
    HReport report;

    Vec y_star, z_star;
    if (probe) {
        report.probe_mode = true;
        y_star = probe->first;
        z_star = probe->second;
        bool ok = !is_zero(y_star);
        for (const auto& g : inst.K.generators)
            if (dot(y_star, g) < Rational(0)) ok = false;
        for (const auto& g : inst.C.generators)
            if (dot(z_star, g) < Rational(0)) ok = false;
        report.admissible = ok;
        if (!ok) return report;
    } else {
        const auto found = l_wmin_separation(inst, x0, /*allow_zero_objective_multiplier=*/false);
        if (!found) return report;
        report.found = std::make_pair(found->y_star, found->z_star);
        report.admissible = true;
        y_star = found->y_star;
        z_star = found->z_star;
    }

    LPProblem sup;
    sup.dimension = inst.y_dim;
    sup.objective = y_star;
    sup.sense = Sense::Maximize;
    for (std::size_t i = 0; i < b.normals.size(); ++i)
        sup.constraints.push_back({b.normals[i], Relation::LessEq, b.offsets[i]});
    const LPOutcome sup_out = solve_lp(sup);
    if (sup_out.status == LPStatus::Optimal) report.sup_b = *sup_out.value;

    const ScalarizedInf inf = scalarized_infimum(q, y_star, z_star);
    report.inf_kind = inf.kind;
    if (inf.kind == InfKind::Finite) report.inf_q = inf.value;

    if (report.sup_b && (inf.kind == InfKind::Empty ||
                         (inf.kind == InfKind::Finite && *report.sup_b <= inf.value)))
        report.member = true;

    if (inf.kind == InfKind::Finite) {
        for (const auto& y0 : inst.labels[ix0].f) {
            for (const auto& z0 : inst.labels[ix0].g) {
                if (dot(y_star, y0) + dot(z_star, z0) == inf.value) {
                    report.attainment = std::make_pair(y0, z0);
                    report.attained = true;
                    break;
                }
            }
            if (report.attained) break;
        }
    }
    return report;
}

}  // namespace svo
