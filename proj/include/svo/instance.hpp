#pragma once

#include "svo/cone.hpp"
#include "svo/lp.hpp"
#include "svo/rational.hpp"
#include "svo/vec.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace svo {

struct UnknownLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WeightsNotOnSimplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EvalMode { Discrete, Convexified };

struct LabelImages {
    std::string name;
    std::vector<Vec> f;  // objective image in Y
    std::vector<Vec> g;  // constraint image in Z
};

// A problem instance: finite label set X, per-label image sets, ordering
// cones K and C, and a fixed interior direction e of K. In convexified mode
// the maps are extended affinely over the probability simplex on the labels,
// which makes them convex set-valued maps; in discrete mode candidates are
// the labels themselves.
struct Instance {
    std::size_t y_dim = 0;
    std::size_t z_dim = 0;
    Cone K;
    Cone C;
    Vec e;
    EvalMode mode = EvalMode::Discrete;
    std::vector<LabelImages> labels;

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i].name == name) return i;
        throw UnknownLabel("unknown label: " + name);
    }
    bool in_dom_f(std::size_t i) const { return !labels[i].f.empty(); }
    bool active(std::size_t i) const { return !labels[i].f.empty() && !labels[i].g.empty(); }
};

// Candidate point of the domain: a label, or simplex weights over the labels.
using Candidate = std::variant<std::string, Vec>;

inline std::string candidate_str(const Candidate& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return vec_str(std::get<Vec>(c));
}

// Finitely generated model of the image set Q: per-label (y, z) pairs as
// vertices plus the recession rays K x {0} and {0} x C. In convexified mode
// this equals cl Q exactly; in discrete mode it is the closed convex hull and
// carries the hull_of_q flag.
struct QSet {
    std::size_t y_dim = 0;
    std::size_t z_dim = 0;
    std::vector<Vec> vertices;  // concatenated (y | z)
    std::vector<Vec> rays;
    bool hull_of_q = false;
};

// T(z) = z*(z) e, the rank-one multiplier family all the rules construct.
// z_star is kept both as coefficients over the generators of the dual cone of
// C (the normals of C) and densely; the two must agree exactly.
struct RankOneOperator {
    Vec z_star_coeffs;
    Vec z_star;
    Vec e;
};

namespace detail {

inline void check_weights(const Instance& inst, const Vec& w) {
    if (w.size() != inst.labels.size())
        throw WeightsNotOnSimplex("weight vector length must equal the label count");
    Rational sum;
    for (const auto& v : w) {
        if (v < Rational(0)) throw WeightsNotOnSimplex("negative weight");
        sum += v;
    }
    if (sum != Rational(1)) throw WeightsNotOnSimplex("weights must sum to 1");
}

}  // namespace detail

inline void validate_instance(const Instance& inst) {
    if (inst.y_dim == 0 || inst.z_dim == 0) throw ValidationError("dimensions must be positive");
    if (inst.K.dimension != inst.y_dim) throw ValidationError("K: dimension mismatch");
    if (inst.C.dimension != inst.z_dim) throw ValidationError("C: dimension mismatch");
    try {
        validate_cone(inst.K);
    } catch (const ConeError& e) {
        throw ValidationError(std::string("K: ") + e.what());
    }
    try {
        validate_cone(inst.C);
    } catch (const ConeError& e) {
        throw ValidationError(std::string("C: ") + e.what());
    }
    if (inst.e.size() != inst.y_dim) throw ValidationError("e: dimension mismatch");
    if (!cone_membership(inst.e, inst.K, true)) throw ValidationError("e not interior to K");
    if (inst.labels.empty()) throw ValidationError("labels: at least one label required");
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        const auto& L = inst.labels[i];
        if (L.name.empty()) throw ValidationError("labels: empty label name");
        for (std::size_t j = i + 1; j < inst.labels.size(); ++j)
            if (inst.labels[j].name == L.name) throw ValidationError("labels: duplicate label " + L.name);
        for (const auto& y : L.f)
            if (y.size() != inst.y_dim) throw ValidationError("labels." + L.name + ".f: dimension mismatch");
        for (const auto& z : L.g)
            if (z.size() != inst.z_dim) throw ValidationError("labels." + L.name + ".g: dimension mismatch");
    }
    // M must lie inside dom f: a feasible label with an empty objective image
    // is rejected. Hull semantics applies in convexified mode.
    for (const auto& L : inst.labels) {
        if (!L.g.empty() && L.f.empty()) {
            bool meets = false;
            if (inst.mode == EvalMode::Discrete) {
                for (const auto& z : L.g)
                    if (cone_membership(neg(z), inst.C, false)) {
                        meets = true;
                        break;
                    }
            } else {
                detail::Program p;
                p.n = L.g.size();
                p.signs.assign(p.n, detail::VarSign::NonNeg);
                p.c.assign(p.n, Rational(0));
                detail::Row sum;
                sum.a.assign(p.n, Rational(1));
                sum.rel = Relation::Equal;
                sum.b = Rational(1);
                p.rows.push_back(std::move(sum));
                for (const auto& n : inst.C.normals) {
                    detail::Row r;
                    r.a.resize(p.n);
                    for (std::size_t k = 0; k < p.n; ++k) r.a[k] = -dot(n, L.g[k]);
                    r.rel = Relation::GreaterEq;
                    r.b = Rational(0);
                    p.rows.push_back(std::move(r));
                }
                meets = detail::solve_program(p).status == LPStatus::Optimal;
            }
            if (meets) throw ValidationError("M not contained in dom f: label " + L.name);
        }
    }
}

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Vec> witness_z;  // a point of g(candidate) inside -C
};

// Membership of the candidate in M = { x | g(x) meets -C }. Labels follow the
// instance mode; weight vectors always use the convexified semantics.
inline FeasibilityResult feasible(const Instance& inst, const Candidate& candidate) {
    FeasibilityResult out;
    if (std::holds_alternative<std::string>(candidate)) {
        const auto& L = inst.labels[inst.index_of(std::get<std::string>(candidate))];
        if (L.g.empty()) return out;
        if (inst.mode == EvalMode::Discrete) {
            for (const auto& z : L.g)
                if (cone_membership(neg(z), inst.C, false)) {
                    out.feasible = true;
                    out.witness_z = z;
                    return out;
                }
            return out;
        }
        Vec unit(inst.labels.size());
        unit[inst.index_of(L.name)] = Rational(1);
        return feasible(inst, Candidate(unit));
    }

    const Vec& w = std::get<Vec>(candidate);
    detail::check_weights(inst, w);
    // One pick variable per g point of each supported label; picks of label i
    // must sum to w_i and the combined point must land in -C.
    std::vector<std::pair<std::size_t, std::size_t>> vars;  // (label, point)
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (w[i].is_zero()) continue;
        if (inst.labels[i].g.empty()) return out;  // weight on a label without constraint values
        for (std::size_t k = 0; k < inst.labels[i].g.size(); ++k) vars.emplace_back(i, k);
    }
    if (vars.empty()) return out;
    detail::Program p;
    p.n = vars.size();
    p.signs.assign(p.n, detail::VarSign::NonNeg);
    p.c.assign(p.n, Rational(0));
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (w[i].is_zero()) continue;
        detail::Row r;
        r.a.assign(p.n, Rational(0));
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (vars[v].first == i) r.a[v] = Rational(1);
        r.rel = Relation::Equal;
        r.b = w[i];
        p.rows.push_back(std::move(r));
    }
    for (const auto& n : inst.C.normals) {
        detail::Row r;
        r.a.resize(p.n);
        for (std::size_t v = 0; v < vars.size(); ++v)
            r.a[v] = -dot(n, inst.labels[vars[v].first].g[vars[v].second]);
        r.rel = Relation::GreaterEq;
        r.b = Rational(0);
        p.rows.push_back(std::move(r));
    }
    const detail::ProgramResult res = detail::solve_program(p);
    if (res.status != LPStatus::Optimal) return out;
    out.feasible = true;
    Vec z(inst.z_dim);
    for (std::size_t v = 0; v < vars.size(); ++v)
        z = add(z, scale(res.x[v], inst.labels[vars[v].first].g[vars[v].second]));
    out.witness_z = z;
    return out;
}

struct SlaterResult {
    bool holds = false;
    std::optional<Candidate> witness_candidate;
    std::optional<Vec> witness_z;  // point of some g image strictly inside -C
};

// Slater condition: some constraint value meets -int C. Quantified over
// dom f, which keeps the equivalence with the dual-cone condition exact.
inline SlaterResult slater_check(const Instance& inst) {
    SlaterResult out;
    if (inst.mode == EvalMode::Discrete) {
        for (const auto& L : inst.labels) {
            if (L.f.empty()) continue;
            for (const auto& z : L.g) {
                if (cone_membership(neg(z), inst.C, true)) {
                    out.holds = true;
                    out.witness_candidate = Candidate(L.name);
                    out.witness_z = z;
                    return out;
                }
            }
        }
        return out;
    }
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t i = 0; i < inst.labels.size(); ++i) {
        if (inst.labels[i].f.empty()) continue;
        for (std::size_t k = 0; k < inst.labels[i].g.size(); ++k) vars.emplace_back(i, k);
    }
    if (vars.empty()) return out;
    std::vector<detail::Row> rows;
    {
        detail::Row sum;
        sum.a.assign(vars.size(), Rational(1));
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        rows.push_back(std::move(sum));
    }
    for (const auto& n : inst.C.normals) {
        detail::Row r;
        r.a.resize(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v)
            r.a[v] = -dot(n, inst.labels[vars[v].first].g[vars[v].second]);
        r.rel = Relation::Greater;
        r.b = Rational(0);
        rows.push_back(std::move(r));
    }
    const auto d = detail::decide_strict(
        vars.size(), std::vector<detail::VarSign>(vars.size(), detail::VarSign::NonNeg), rows);
    if (!d.strictly_feasible) return out;
    out.holds = true;
    Vec weights(inst.labels.size());
    Vec z(inst.z_dim);
    for (std::size_t v = 0; v < vars.size(); ++v) {
        weights[vars[v].first] += d.witness[v];
        z = add(z, scale(d.witness[v], inst.labels[vars[v].first].g[vars[v].second]));
    }
    out.witness_candidate = Candidate(weights);
    out.witness_z = z;
    return out;
}

struct CQResult {
    bool holds = false;
    std::optional<Vec> violating_z_star;   // dense z* >= 0 on every g value
    std::optional<Vec> impossibility_cert; // Farkas vector of the search LP
};

// The dual-cone constraint qualification: every nonzero z* in the dual cone
// of C scalarizes some constraint value strictly negative. Its failure is a
// single LP over normalized dual coefficients; C being full-dimensional makes
// the dual cone pointed, so the coefficient-sum normalization excludes zero.
inline CQResult cq_check(const Instance& inst) {
    CQResult out;
    std::vector<const Vec*> zs;
    for (const auto& L : inst.labels) {
        if (L.f.empty()) continue;
        for (const auto& z : L.g) zs.push_back(&z);
    }
    const std::size_t m = inst.C.normals.size();
    detail::Program p;
    p.n = m;
    p.signs.assign(m, detail::VarSign::NonNeg);
    p.c.assign(m, Rational(0));
    {
        detail::Row sum;
        sum.a.assign(m, Rational(1));
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        p.rows.push_back(std::move(sum));
    }
    for (const Vec* z : zs) {
        detail::Row r;
        r.a.resize(m);
        for (std::size_t j = 0; j < m; ++j) r.a[j] = dot(inst.C.normals[j], *z);
        r.rel = Relation::GreaterEq;
        r.b = Rational(0);
        p.rows.push_back(std::move(r));
    }
    const detail::ProgramResult res = detail::solve_program(p);
    if (res.status == LPStatus::Optimal) {
        Vec dense(inst.z_dim);
        for (std::size_t j = 0; j < m; ++j) dense = add(dense, scale(res.x[j], inst.C.normals[j]));
        out.holds = false;
        out.violating_z_star = dense;
        return out;
    }
    out.holds = true;
    out.impossibility_cert = res.farkas;
    return out;
}

inline QSet build_q(const Instance& inst) {
    QSet q;
    q.y_dim = inst.y_dim;
    q.z_dim = inst.z_dim;
    q.hull_of_q = inst.mode == EvalMode::Discrete;
    auto push_unique = [](std::vector<Vec>& list, Vec v) {
        for (const auto& u : list)
            if (lex_compare(u, v) == 0) return;
        list.push_back(std::move(v));
    };
    for (const auto& L : inst.labels)
        for (const auto& y : L.f)
            for (const auto& z : L.g) push_unique(q.vertices, concat(y, z));
    for (const auto& g : inst.K.generators) push_unique(q.rays, concat(g, zero_vec(inst.z_dim)));
    for (const auto& g : inst.C.generators) push_unique(q.rays, concat(zero_vec(inst.y_dim), g));
    return q;
}

// Weak membership of a concatenated (y|z) point in the QSet model.
inline bool q_membership(const QSet& q, const Vec& point) {
    if (point.size() != q.y_dim + q.z_dim) throw DimensionMismatch("q_membership: point length");
    if (q.vertices.empty()) return false;
    const std::size_t nv = q.vertices.size(), nr = q.rays.size();
    detail::Program p;
    p.n = nv + nr;
    p.signs.assign(p.n, detail::VarSign::NonNeg);
    p.c.assign(p.n, Rational(0));
    {
        detail::Row sum;
        sum.a.assign(p.n, Rational(0));
        for (std::size_t v = 0; v < nv; ++v) sum.a[v] = Rational(1);
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        p.rows.push_back(std::move(sum));
    }
    for (std::size_t d = 0; d < point.size(); ++d) {
        detail::Row r;
        r.a.resize(p.n);
        for (std::size_t v = 0; v < nv; ++v) r.a[v] = q.vertices[v][d];
        for (std::size_t rr = 0; rr < nr; ++rr) r.a[nv + rr] = q.rays[rr][d];
        r.rel = Relation::Equal;
        r.b = point[d];
        p.rows.push_back(std::move(r));
    }
    return detail::solve_program(p).status == LPStatus::Optimal;
}

inline RankOneOperator make_rank_one(const Instance& inst, Vec z_star_coeffs) {
    if (z_star_coeffs.size() != inst.C.normals.size())
        throw DimensionMismatch("rank-one operator: coefficient count must match the dual generators");
    RankOneOperator t;
    t.z_star = zero_vec(inst.z_dim);
    for (std::size_t j = 0; j < z_star_coeffs.size(); ++j) {
        if (z_star_coeffs[j] < Rational(0))
            throw std::invalid_argument("rank-one operator: coefficients must be nonnegative");
        t.z_star = add(t.z_star, scale(z_star_coeffs[j], inst.C.normals[j]));
    }
    t.z_star_coeffs = std::move(z_star_coeffs);
    t.e = inst.e;
    return t;
}

inline Vec apply_t(const RankOneOperator& t, const Vec& z) {
    if (z.size() != t.z_star.size()) throw DimensionMismatch("apply_t: argument length");
    return scale(dot(t.z_star, z), t.e);
}

// Lagrangian image L(x, T) = f(x) + T(g(x)) of a candidate, as the finite set
// of pairwise sums (its hull is the convexified-mode value).
inline PointSet lagrangian_image(const Instance& inst, const Candidate& candidate,
                                 const RankOneOperator& t) {
    PointSet out;
    out.hull_mode = inst.mode == EvalMode::Convexified ? HullMode::Hull : HullMode::Union;
    auto label_points = [&](const LabelImages& L) {
        if (L.f.empty() || L.g.empty())
            throw EmptyImage("lagrangian image of " + L.name + " is empty");
        std::vector<Vec> pts;
        for (const auto& y : L.f)
            for (const auto& z : L.g) pts.push_back(add(y, apply_t(t, z)));
        return pts;
    };
    if (std::holds_alternative<std::string>(candidate)) {
        out.points = label_points(inst.labels[inst.index_of(std::get<std::string>(candidate))]);
        return out;
    }
    const Vec& w = std::get<Vec>(candidate);
    detail::check_weights(inst, w);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero()) support.push_back(i);
    std::vector<std::vector<Vec>> parts;
    std::size_t combos = 1;
    for (std::size_t i : support) {
        parts.push_back(label_points(inst.labels[i]));
        combos *= parts.back().size();
        if (combos > 100000) throw std::length_error("lagrangian image: pick-product too large");
    }
    std::vector<std::size_t> pick(support.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        Vec sum(inst.y_dim);
        for (std::size_t s = 0; s < support.size(); ++s)
            sum = add(sum, scale(w[support[s]], parts[s][pick[s]]));
        out.points.push_back(std::move(sum));
        for (std::size_t s = 0; s < support.size(); ++s) {
            if (++pick[s] < parts[s].size()) break;
            pick[s] = 0;
        }
    }
    return out;
}

// Infimum of y*(y) + z*(z) over the QSet model: the vertex minimum when every
// ray scalarizes nonnegatively, minus infinity otherwise, plus infinity over
// an empty model.
enum class InfKind { Finite, MinusInfinity, Empty };

struct ScalarizedInf {
    InfKind kind = InfKind::Empty;
    Rational value;
    std::size_t argmin = 0;
};

inline ScalarizedInf scalarized_infimum(const QSet& q, const Vec& y_star, const Vec& z_star) {
    ScalarizedInf out;
    const Vec full = concat(y_star, z_star);
    for (const auto& r : q.rays) {
        if (dot(full, r) < Rational(0)) {
            out.kind = InfKind::MinusInfinity;
            return out;
        }
    }
    if (q.vertices.empty()) return out;
    out.kind = InfKind::Finite;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        const Rational val = dot(full, q.vertices[v]);
        if (v == 0 || val < out.value) {
            out.value = val;
            out.argmin = v;
        }
    }
    return out;
}

}  // namespace svo
