#pragma once

// Brute-force LP oracle for small problems, independent of the simplex path:
// basic points come from enumerating dimension-sized constraint subsets,
// extreme rays from (dimension-1)-sized subsets, and the status/optimum are
// reconstructed from those alone. Intended for generated problems whose
// feasible set contains no line (per-variable one-sided bounds).

#include "svo/lp.hpp"
#include "svo/vec.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace svo::testing {

struct OracleResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;
};

inline bool oracle_point_feasible(const LPProblem& p, const Vec& x) {
    for (const auto& c : p.constraints) {
        const Rational v = dot(c.coeffs, x);
        if (c.rel == Relation::GreaterEq && v < c.rhs) return false;
        if (c.rel == Relation::LessEq && v > c.rhs) return false;
        if (c.rel == Relation::Equal && v != c.rhs) return false;
    }
    return true;
}

inline bool oracle_ray_valid(const LPProblem& p, const Vec& d) {
    for (const auto& c : p.constraints) {
        const Rational v = dot(c.coeffs, d);
        if (c.rel == Relation::GreaterEq && v < Rational(0)) return false;
        if (c.rel == Relation::LessEq && v > Rational(0)) return false;
        if (c.rel == Relation::Equal && !v.is_zero()) return false;
    }
    return true;
}

// One-dimensional null direction of a (dim-1) x dim system of full row rank.
inline std::optional<Vec> null_direction(Matrix m, std::size_t dim) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_col(rows, dim);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows; ++col) {
        std::size_t p = rank;
        while (p < rows && m[p][col].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[rank], m[p]);
        const Rational inv = Rational(1) / m[rank][col];
        for (std::size_t j = 0; j < dim; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (std::size_t j = 0; j < dim; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != rows || rank + 1 != dim) return std::nullopt;
    std::size_t free_col = dim;
    for (std::size_t col = 0; col < dim; ++col) {
        bool is_pivot = false;
        for (std::size_t r = 0; r < rank; ++r)
            if (pivot_col[r] == col) is_pivot = true;
        if (!is_pivot) {
            free_col = col;
            break;
        }
    }
    Vec d(dim);
    d[free_col] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r) d[pivot_col[r]] = -m[r][free_col];
    return d;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t from,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, cur, i + 1, fn);
        cur.pop_back();
    }
}

inline OracleResult oracle_solve(const LPProblem& p) {
    const std::size_t dim = p.dimension;
    const std::size_t m = p.constraints.size();
    const bool maximize = p.sense == Sense::Maximize;

    bool any_feasible = false;
    Rational best;
    std::vector<std::size_t> cur;
    if (dim <= m) {
        subsets(m, dim, cur, 0, [&](const std::vector<std::size_t>& idx) {
            Matrix a(dim, Vec(dim));
            Vec b(dim);
            for (std::size_t r = 0; r < dim; ++r) {
                a[r] = p.constraints[idx[r]].coeffs;
                b[r] = p.constraints[idx[r]].rhs;
            }
            const auto x = solve_square(a, b);
            if (!x || !oracle_point_feasible(p, *x)) return;
            const Rational v = dot(p.objective, *x);
            if (!any_feasible || (maximize ? v > best : v < best)) best = v;
            any_feasible = true;
        });
    }
    OracleResult out;
    if (!any_feasible) return out;  // pointed and nonempty would have a vertex

    bool unbounded = false;
    cur.clear();
    if (dim >= 1 && dim - 1 <= m) {
        subsets(m, dim - 1, cur, 0, [&](const std::vector<std::size_t>& idx) {
            if (unbounded) return;
            Matrix a;
            for (std::size_t r : idx) a.push_back(p.constraints[r].coeffs);
            const auto d = null_direction(a, dim);
            if (!d) return;
            for (const Vec& cand : {*d, neg(*d)}) {
                if (!oracle_ray_valid(p, cand)) continue;
                const Rational drift = dot(p.objective, cand);
                if (maximize ? drift > Rational(0) : drift < Rational(0)) unbounded = true;
            }
        });
    }
    if (unbounded) {
        out.status = LPStatus::Unbounded;
        return out;
    }
    out.status = LPStatus::Optimal;
    out.value = best;
    return out;
}

// Seeded generator of pointed small LPs: one one-sided bound per variable
// keeps the feasible set line-free so vertex enumeration is a true oracle.
// Rows are anchored at a grid point and occasionally pushed past it, which
// yields a healthy mix of optimal, infeasible and unbounded problems.
inline LPProblem random_pointed_lp(std::uint64_t& state, std::size_t max_dim = 6,
                                   std::size_t max_rows = 10, std::size_t max_den = 8) {
    const auto next = [&state] { return svo::detail::splitmix64(state); };
    LPProblem p;
    p.dimension = 1 + next() % max_dim;
    p.sense = next() % 2 ? Sense::Maximize : Sense::Minimize;
    p.objective.resize(p.dimension);
    for (auto& c : p.objective)
        c = Rational(static_cast<long>(next() % 9) - 4, 1 + static_cast<long>(next() % max_den));
    Vec anchor(p.dimension);
    for (auto& c : anchor)
        c = Rational(static_cast<long>(next() % 9) - 4, 1 + static_cast<long>(next() % 2));
    for (std::size_t j = 0; j < p.dimension; ++j) {
        LinearConstraint c;
        c.coeffs = zero_vec(p.dimension);
        c.coeffs[j] = Rational(1);
        const Rational slack(static_cast<long>(next() % 3));
        if (next() % 2) {
            c.rel = Relation::GreaterEq;
            c.rhs = anchor[j] - slack;
        } else {
            c.rel = Relation::LessEq;
            c.rhs = anchor[j] + slack;
        }
        p.constraints.push_back(std::move(c));
    }
    const std::size_t extra = next() % (max_rows - p.dimension + 1);
    for (std::size_t i = 0; i < extra; ++i) {
        LinearConstraint c;
        c.coeffs.resize(p.dimension);
        for (auto& v : c.coeffs) v = Rational(static_cast<long>(next() % 7) - 3);
        if (is_zero(c.coeffs)) c.coeffs[0] = Rational(1);
        const Rational at_anchor = dot(c.coeffs, anchor);
        const Rational slack(static_cast<long>(next() % 5),
                             1 + static_cast<long>(next() % max_den));
        const std::uint64_t r = next() % 6;
        const bool violate = next() % 4 == 0;
        if (r == 0) {
            c.rel = Relation::Equal;
            c.rhs = violate ? at_anchor + Rational(1) : at_anchor;
        } else if (r % 2) {
            c.rel = Relation::GreaterEq;
            c.rhs = violate ? at_anchor + Rational(1) + slack : at_anchor - slack;
        } else {
            c.rel = Relation::LessEq;
            c.rhs = violate ? at_anchor - Rational(1) - slack : at_anchor + slack;
        }
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}  // namespace svo::testing
