#pragma once

#include "svo/lp.hpp"
#include "svo/rational.hpp"
#include "svo/vec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svo {

enum class HullMode { Union, Hull };

// Carrier for finite image sets f(x), g(x) and for the sets A that the
// interior-shift identity is tested on.
struct PointSet {
    std::vector<Vec> points;
    HullMode hull_mode = HullMode::Union;
};

// Polyhedral convex cone carrying both representations:
//   H: { y | a_i . y >= 0 for every normal a_i }
//   V: { sum alpha_i g_i | alpha >= 0 } over the generators.
// The interior witness certifies full-dimensionality (all normals strictly
// positive on it). Dual cones are the same structure with the roles of
// normals and generators exchanged.
struct Cone {
    std::size_t dimension = 0;
    std::vector<Vec> normals;
    std::vector<Vec> generators;
    Vec interior_witness;
};

struct ConeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyInterior : ConeError {
    using ConeError::ConeError;
};
struct GeneratorOutsideHCone : ConeError {
    using ConeError::ConeError;
};
struct HConeMismatch : ConeError {
    using ConeError::ConeError;
};

struct ConeValidation {
    bool simplicial = false;
    // True when both inclusions between the H-cone and the generated cone
    // were certified exactly; general cones only get the generator side exact
    // and the H side probed on sampled extreme points.
    bool exact_both_directions = false;
    std::size_t samples_checked = 0;
};

namespace detail {

// Membership of y in cone(generators): exists alpha >= 0 with G alpha = y.
inline bool in_generated_cone(const Vec& y, const std::vector<Vec>& generators) {
    if (generators.empty()) return is_zero(y);
    Program p;
    p.n = generators.size();
    p.signs.assign(p.n, VarSign::NonNeg);
    p.c.assign(p.n, Rational(0));
    const std::size_t dim = y.size();
    for (std::size_t d = 0; d < dim; ++d) {
        Row r;
        r.a.resize(p.n);
        for (std::size_t k = 0; k < p.n; ++k) r.a[k] = generators[k][d];
        r.rel = Relation::Equal;
        r.b = y[d];
        p.rows.push_back(std::move(r));
    }
    return solve_program(p).status == LPStatus::Optimal;
}

// Whether a_i . y >= 0 for all i implies v . y >= 0; for cones the probe LP
// is either optimal at zero or unbounded.
inline bool hcone_implies(const std::vector<Vec>& normals, const Vec& v) {
    LPProblem p;
    p.dimension = v.size();
    p.objective = v;
    p.sense = Sense::Minimize;
    for (const auto& n : normals) p.constraints.push_back({n, Relation::GreaterEq, Rational(0)});
    return solve_lp(p).status == LPStatus::Optimal;
}

}  // namespace detail

inline bool cone_membership(const Vec& point, const Cone& cone, bool interior) {
    if (point.size() != cone.dimension) throw DimensionMismatch("cone_membership: point dimension");
    for (const auto& n : cone.normals) {
        const Rational v = dot(n, point);
        if (interior ? !(v > Rational(0)) : v < Rational(0)) return false;
    }
    return true;
}

inline ConeValidation validate_cone(const Cone& cone) {
    if (cone.dimension == 0) throw DimensionMismatch("cone: dimension must be positive");
    if (cone.normals.empty() || cone.generators.empty())
        throw DimensionMismatch("cone: both representations are required");
    for (const auto& n : cone.normals) {
        if (n.size() != cone.dimension) throw DimensionMismatch("cone: normal length");
        if (is_zero(n)) throw DimensionMismatch("cone: zero normal");
    }
    for (const auto& g : cone.generators) {
        if (g.size() != cone.dimension) throw DimensionMismatch("cone: generator length");
        if (is_zero(g)) throw DimensionMismatch("cone: zero generator");
    }
    if (cone.interior_witness.size() != cone.dimension)
        throw DimensionMismatch("cone: interior witness length");

    for (const auto& g : cone.generators)
        if (!cone_membership(g, cone, false))
            throw GeneratorOutsideHCone("generator violates an H-representation inequality: " + vec_str(g));
    if (!cone_membership(cone.interior_witness, cone, true))
        throw EmptyInterior("interior witness is not strictly inside the cone");

    ConeValidation report;
    const bool square = cone.generators.size() == cone.dimension;
    std::optional<Matrix> inv;
    if (square) {
        Matrix g_cols(cone.dimension, Vec(cone.dimension));
        for (std::size_t c = 0; c < cone.dimension; ++c)
            for (std::size_t r = 0; r < cone.dimension; ++r) g_cols[r][c] = cone.generators[c][r];
        inv = invert(g_cols);
    }
    if (inv) {
        // Simplicial: cone(G) = { y | rows of G^-1 are nonnegative on y }, so
        // the stated H-cone must coincide with that derived one. Mutual
        // implication of the two inequality systems is an exact check.
        report.simplicial = true;
        for (const auto& derived : *inv)
            if (!detail::hcone_implies(cone.normals, derived))
                throw HConeMismatch("stated H-cone is larger than the generated cone");
        for (const auto& stated : cone.normals)
            if (!detail::hcone_implies(*inv, stated))
                throw HConeMismatch("stated H-cone is smaller than the generated cone");
        report.exact_both_directions = true;
        return report;
    }

    // General cone: generators inside H is exact (checked above); the reverse
    // inclusion H subseteq cone(G) is probed on the witness and on extreme
    // points of the box-truncated H-cone found by seeded objectives.
    if (!detail::in_generated_cone(cone.interior_witness, cone.generators))
        throw HConeMismatch("interior witness is not generated by the V-representation");
    ++report.samples_checked;
    // Probe objectives: the signed units and their pairwise differences
    // (these expose the box corners of the truncated H-cone), then seeded
    // random directions.
    std::vector<Vec> objectives;
    for (std::size_t d = 0; d < cone.dimension; ++d) {
        Vec plus(cone.dimension), minus(cone.dimension);
        plus[d] = Rational(1);
        minus[d] = Rational(-1);
        objectives.push_back(plus);
        objectives.push_back(minus);
        for (std::size_t d2 = 0; d2 < cone.dimension; ++d2) {
            if (d2 == d) continue;
            Vec diff(cone.dimension);
            diff[d] = Rational(1);
            diff[d2] = Rational(-1);
            objectives.push_back(std::move(diff));
        }
    }
    std::uint64_t seed = 0x5eedULL + cone.dimension;
    for (std::size_t t = 0; t < 4 * cone.dimension; ++t) {
        Vec objective(cone.dimension);
        for (auto& c : objective) {
            const long v = static_cast<long>(detail::splitmix64(seed) % 7) - 3;
            c = Rational(v);
        }
        objectives.push_back(std::move(objective));
    }
    for (const Vec& objective : objectives) {
        if (is_zero(objective)) continue;
        LPProblem probe;
        probe.dimension = cone.dimension;
        probe.objective = objective;
        probe.sense = Sense::Maximize;
        for (const auto& n : cone.normals) probe.constraints.push_back({n, Relation::GreaterEq, Rational(0)});
        for (std::size_t d = 0; d < cone.dimension; ++d) {
            Vec unit(cone.dimension);
            unit[d] = Rational(1);
            probe.constraints.push_back({unit, Relation::LessEq, Rational(1)});
            probe.constraints.push_back({unit, Relation::GreaterEq, Rational(-1)});
        }
        const LPOutcome out = solve_lp(probe);
        if (out.status != LPStatus::Optimal) throw std::logic_error("box-truncated cone probe must be optimal");
        if (!detail::in_generated_cone(*out.primal_witness, cone.generators))
            throw HConeMismatch("H-cone point escapes the generated cone: " + vec_str(*out.primal_witness));
        ++report.samples_checked;
    }
    return report;
}

// Generators of the dual cone; for an H-represented cone these are exactly
// the normals.
inline std::vector<Vec> dual_generators(const Cone& cone) { return cone.normals; }

// Dual cone with the two representations swapped. Requires pointedness so the
// dual is full-dimensional; the witness is the sum of the normals.
inline Cone dual_cone(const Cone& cone) {
    Matrix n(cone.normals.begin(), cone.normals.end());
    if (matrix_rank(n) != cone.dimension)
        throw ConeError("dual_cone: cone is not pointed, dual has empty interior");
    Cone d;
    d.dimension = cone.dimension;
    d.normals = cone.generators;
    d.generators = cone.normals;
    d.interior_witness = zero_vec(cone.dimension);
    for (const auto& a : cone.normals) d.interior_witness = add(d.interior_witness, a);
    return d;
}

// Simplicial cone from linearly independent generators; normals are the rows
// of the inverse generator matrix and the witness is the generator sum.
inline Cone make_simplicial_cone(const std::vector<Vec>& generators) {
    if (generators.empty()) throw DimensionMismatch("make_simplicial_cone: no generators");
    const std::size_t dim = generators[0].size();
    if (generators.size() != dim) throw DimensionMismatch("make_simplicial_cone: need dimension-many generators");
    Matrix g_cols(dim, Vec(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        if (generators[c].size() != dim) throw DimensionMismatch("make_simplicial_cone: generator length");
        for (std::size_t r = 0; r < dim; ++r) g_cols[r][c] = generators[c][r];
    }
    auto inv = invert(g_cols);
    if (!inv) throw ConeError("make_simplicial_cone: generators are linearly dependent");
    Cone cone;
    cone.dimension = dim;
    cone.generators = generators;
    cone.normals = *inv;
    cone.interior_witness = zero_vec(dim);
    for (const auto& g : generators) cone.interior_witness = add(cone.interior_witness, g);
    return cone;
}

inline Cone orthant_cone(std::size_t dim) {
    std::vector<Vec> gens;
    for (std::size_t d = 0; d < dim; ++d) {
        Vec u(dim);
        u[d] = Rational(1);
        gens.push_back(u);
    }
    return make_simplicial_cone(gens);
}

// Membership of query in A + K (or A + int K): pointwise over the union, or
// through convex weights in hull mode. Interior queries in hull mode run the
// shared-slack strict LP over the weights.
inline bool set_plus_cone_membership(const Vec& query, const PointSet& a, const Cone& cone,
                                     bool interior) {
    if (query.size() != cone.dimension) throw DimensionMismatch("set_plus_cone_membership: query dimension");
    if (a.points.empty()) return false;
    for (const auto& p : a.points)
        if (p.size() != cone.dimension) throw DimensionMismatch("set_plus_cone_membership: point dimension");

    if (a.hull_mode == HullMode::Union) {
        for (const auto& p : a.points)
            if (cone_membership(sub(query, p), cone, interior)) return true;
        return false;
    }

    const std::size_t k = a.points.size();
    std::vector<detail::Row> rows;
    {
        detail::Row sum;
        sum.a.assign(k, Rational(1));
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        rows.push_back(std::move(sum));
    }
    for (const auto& n : cone.normals) {
        // n.(query - sum_j lambda_j p_j) >= 0, strictly for interior queries.
        detail::Row r;
        r.a.resize(k);
        for (std::size_t j = 0; j < k; ++j) r.a[j] = dot(n, a.points[j]);
        r.rel = interior ? Relation::Less : Relation::LessEq;
        r.b = dot(n, query);
        rows.push_back(std::move(r));
    }
    if (!interior) {
        detail::Program p;
        p.n = k;
        p.signs.assign(k, detail::VarSign::NonNeg);
        p.c.assign(k, Rational(0));
        p.rows = rows;
        return detail::solve_program(p).status == LPStatus::Optimal;
    }
    return detail::decide_strict(k, std::vector<detail::VarSign>(k, detail::VarSign::NonNeg), rows)
        .strictly_feasible;
}

// Independent oracle for query in int(conv(A) + K): the point is interior
// exactly when some cross-polytope of radius delta > 0 around it fits inside,
// decided by one LP maximizing delta over per-corner convex weights. Kept
// deliberately free of the interior-shift route above so the two can be
// compared as separate computations.
inline bool interior_membership_by_expansion(const Vec& query, const PointSet& a, const Cone& cone) {
    if (query.size() != cone.dimension) throw DimensionMismatch("expansion oracle: query dimension");
    if (a.points.empty()) return false;
    const std::size_t dim = cone.dimension;
    const std::size_t k = a.points.size();
    const std::size_t corners = 2 * dim;
    // Variables: delta, then k hull weights per corner.
    detail::Program p;
    p.sense = Sense::Maximize;
    p.n = 1 + corners * k;
    p.signs.assign(p.n, detail::VarSign::NonNeg);
    p.c.assign(p.n, Rational(0));
    p.c[0] = Rational(1);
    for (std::size_t corner = 0; corner < corners; ++corner) {
        const std::size_t base = 1 + corner * k;
        const std::size_t axis = corner / 2;
        const Rational dir = corner % 2 == 0 ? Rational(1) : Rational(-1);
        detail::Row sum;
        sum.a.assign(p.n, Rational(0));
        for (std::size_t j = 0; j < k; ++j) sum.a[base + j] = Rational(1);
        sum.rel = Relation::Equal;
        sum.b = Rational(1);
        p.rows.push_back(std::move(sum));
        for (const auto& n : cone.normals) {
            // n.(query + delta * dir * e_axis - sum_j w_j p_j) >= 0
            detail::Row r;
            r.a.assign(p.n, Rational(0));
            r.a[0] = dir * n[axis];
            for (std::size_t j = 0; j < k; ++j) r.a[base + j] = -dot(n, a.points[j]);
            r.rel = Relation::GreaterEq;
            r.b = -dot(n, query);
            p.rows.push_back(std::move(r));
        }
    }
    {
        detail::Row cap;
        cap.a.assign(p.n, Rational(0));
        cap.a[0] = Rational(1);
        cap.rel = Relation::LessEq;
        cap.b = Rational(1);
        p.rows.push_back(std::move(cap));
    }
    const detail::ProgramResult res = detail::solve_program(p);
    if (res.status == LPStatus::Infeasible) return false;
    if (res.status != LPStatus::Optimal) throw std::logic_error("expansion oracle must be bounded");
    return res.value > Rational(0);
}

// Smallest t >= 0 with A contained in -t e + K; closed form over the normals.
inline Rational min_k_bound(const PointSet& a, const Vec& e, const Cone& cone) {
    if (e.size() != cone.dimension) throw DimensionMismatch("min_k_bound: direction length");
    Rational t(0);
    for (const auto& y : a.points) {
        if (y.size() != cone.dimension) throw DimensionMismatch("min_k_bound: point length");
        for (const auto& n : cone.normals) {
            const Rational ne = dot(n, e);
            if (!(ne > Rational(0)))
                throw ConeError("min_k_bound: direction must be strictly interior");
            const Rational candidate = -dot(n, y) / ne;
            if (candidate > t) t = candidate;
        }
    }
    return t;
}

}  // namespace svo
