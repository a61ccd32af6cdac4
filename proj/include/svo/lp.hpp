#pragma once

#include "svo/rational.hpp"
#include "svo/vec.hpp"

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svo {

enum class Relation { LessEq, Equal, GreaterEq, Less, Greater };
enum class Sense { Minimize, Maximize };

struct LinearConstraint {
    Vec coeffs;
    Relation rel = Relation::GreaterEq;
    Rational rhs;
};

struct LPProblem {
    std::size_t dimension = 0;
    Vec objective;
    Sense sense = Sense::Minimize;
    std::vector<LinearConstraint> constraints;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, StrictlyFeasible, StrictlyInfeasible };

// For Optimal outcomes the dual certificate satisfies, exactly,
//   sum_i lambda_i * a_i = objective     and   sum_i lambda_i * b_i = value,
// with lambda_i >= 0 on >= rows and lambda_i <= 0 on <= rows when minimizing
// (signs flipped when maximizing, free on = rows). For Infeasible outcomes it
// is a Farkas vector: sum_i lambda_i * a_i = 0, sum_i lambda_i * b_i > 0 with
// the minimize-sense sign conditions. For Unbounded outcomes the slot holds an
// improving ray in variable space instead.
struct LPOutcome {
    LPStatus status;
    std::optional<Vec> primal_witness;
    std::optional<Rational> value;
    std::optional<Vec> dual_certificate;
};

struct LPError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedProblem : LPError {
    using LPError::LPError;
};
struct StrictRelationPresent : LPError {
    using LPError::LPError;
};
struct SystemFeasible : LPError {
    using LPError::LPError;
};

namespace detail {

inline bool is_strict(Relation r) { return r == Relation::Less || r == Relation::Greater; }

// ---------------------------------------------------------------------------
// Core: two-phase tableau simplex with Bland's rule on the standard form
//
//     min c.w   s.t.  A w = b,  w >= 0.
//
// Phase 1 starts from an all-artificial basis; redundant rows are dropped and
// remaining artificials are pivoted out before phase 2. The artificial block
// of the tableau is B^-1 throughout, which is where the row duals come from.
// Everything is exact, so optimality, infeasibility and unboundedness are
// decided, not approximated. Bland's rule (lowest eligible index, lowest
// basis index on ratio ties) guarantees termination and determinism.
// ---------------------------------------------------------------------------

enum class CoreStatus { Optimal, Infeasible, Unbounded };

struct CoreResult {
    CoreStatus status = CoreStatus::Infeasible;
    Vec w;        // Optimal: solution. Unbounded: a feasible point.
    Rational value;
    Vec y;        // Optimal: row duals c_B B^-1. Infeasible: phase-1 duals (Farkas).
    Vec ray;      // Unbounded: improving ray, ray >= 0 componentwise.
};

class StandardSimplex {
public:
    StandardSimplex(Matrix A, Vec b, std::size_t ncols) : m_(A.size()), n_(ncols) {
        flip_.assign(m_, false);
        tab_.resize(m_);
        basis_.resize(m_);
        origin_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (A[i].size() != n_) throw MalformedProblem("standard form: ragged matrix");
            if (b[i] < Rational(0)) {
                flip_[i] = true;
                A[i] = neg(A[i]);
                b[i] = -b[i];
            }
            tab_[i] = A[i];
            tab_[i].resize(n_ + m_ + 1);
            tab_[i][n_ + i] = Rational(1);
            tab_[i][n_ + m_] = b[i];
            basis_[i] = n_ + i;
            origin_[i] = i;
        }
    }

    CoreResult solve(const Vec& c) {
        if (c.size() != n_) throw MalformedProblem("standard form: cost length");
        CoreResult res;

        // Phase 1: minimize the sum of artificials.
        {
            Vec z(n_ + m_);
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t i = 0; i < rows(); ++i) z[j] -= tab_[i][j];
            if (!run(z, /*allow_artificials=*/true, nullptr))
                throw std::logic_error("phase 1 objective is bounded below");
            Rational infeas;
            for (std::size_t i = 0; i < rows(); ++i)
                if (basis_[i] >= n_) infeas += rhs(i);
            if (infeas > Rational(0)) {
                res.status = CoreStatus::Infeasible;
                res.y = phase_duals(phase1_costs());
                return res;
            }
        }
        drop_artificials();

        // Phase 2 on the real costs.
        Vec cost(n_ + m_);
        for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
        Vec z(n_ + m_);
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            z[j] = cost[j];
            for (std::size_t i = 0; i < rows(); ++i) z[j] -= cost[basis_[i]] * tab_[i][j];
        }
        std::size_t ray_col = 0;
        if (!run(z, /*allow_artificials=*/false, &ray_col)) {
            res.status = CoreStatus::Unbounded;
            res.ray.assign(n_, Rational(0));
            res.ray[ray_col] = Rational(1);
            for (std::size_t i = 0; i < rows(); ++i)
                if (basis_[i] < n_) res.ray[basis_[i]] = -tab_[i][ray_col];
            res.w = extract_w();
            return res;
        }
        res.status = CoreStatus::Optimal;
        res.w = extract_w();
        for (std::size_t j = 0; j < n_; ++j) res.value += c[j] * res.w[j];
        res.y = phase_duals(cost);
        return res;
    }

private:
    std::size_t rows() const { return tab_.size(); }
    Rational& rhs(std::size_t i) { return tab_[i][n_ + m_]; }

    Vec phase1_costs() const {
        Vec cost(n_ + m_);
        for (std::size_t k = 0; k < m_; ++k) cost[n_ + k] = Rational(1);
        return cost;
    }

    // y = c_B B^-1, read from the artificial block; dropped rows get 0.
    Vec phase_duals(const Vec& cost) const {
        Vec y(m_);
        for (std::size_t i = 0; i < rows(); ++i) {
            const Rational cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t k = 0; k < rows(); ++k) y[origin_[k]] += cb * tab_[i][n_ + origin_[k]];
        }
        return y;
    }

    Vec extract_w() const {
        Vec w(n_);
        for (std::size_t i = 0; i < rows(); ++i)
            if (basis_[i] < n_) w[basis_[i]] = tab_[i][n_ + m_];
        return w;
    }

    // Bland iterations until optimal (true) or unbounded (false, phase 2 only).
    bool run(Vec& z, bool allow_artificials, std::size_t* ray_col) {
        const std::size_t limit = allow_artificials ? n_ + m_ : n_;
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (z[j] < Rational(0)) {
                    enter = j;
                    break;
                }
            }
            if (enter == limit) return true;
            std::size_t leave = rows();
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (tab_[i][enter] > Rational(0)) {
                    Rational ratio = rhs(i) / tab_[i][enter];
                    if (leave == rows() || ratio < best ||
                        (ratio == best && basis_[i] < basis_[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == rows()) {
                if (ray_col) *ray_col = enter;
                return false;
            }
            pivot(leave, enter, &z);
        }
    }

    void pivot(std::size_t r, std::size_t s, Vec* z) {
        const Rational inv = Rational(1) / tab_[r][s];
        for (auto& v : tab_[r]) v *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || tab_[i][s].is_zero()) continue;
            const Rational f = tab_[i][s];
            for (std::size_t j = 0; j <= n_ + m_; ++j) tab_[i][j] -= f * tab_[r][j];
        }
        if (z && !(*z)[s].is_zero()) {
            const Rational f = (*z)[s];
            for (std::size_t j = 0; j < z->size(); ++j) (*z)[j] -= f * tab_[r][j];
        }
        basis_[r] = s;
    }

    // After a zero-value phase 1: pivot basic artificials onto some original
    // column, dropping rows that turn out redundant.
    void drop_artificials() {
        for (std::size_t i = 0; i < rows();) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            std::size_t col = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!tab_[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col == n_) {
                tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                pivot(i, col, nullptr);
                ++i;
            }
        }
    }

public:
    // Signs of the internal row flips, needed by the caller to undo duals.
    const std::vector<bool>& flips() const { return flip_; }

private:
    std::size_t m_, n_;
    Matrix tab_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> origin_;
    std::vector<bool> flip_;
};

inline CoreResult simplex_standard(Matrix A, Vec b, const Vec& c) {
    StandardSimplex s(std::move(A), std::move(b), c.size());
    CoreResult res = s.solve(c);
    for (std::size_t i = 0; i < res.y.size(); ++i)
        if (s.flips()[i]) res.y[i] = -res.y[i];
    return res;
}

// ---------------------------------------------------------------------------
// Program: the internal solver interface. Variables are free or nonnegative,
// rows are weak relations. Everything above the core reduces to this.
//
// Result conventions, stated for Minimize (Maximize negates the duals):
//   Optimal:    x feasible, value = c.x; dual lambda has
//               sum_i lambda_i a_ij = c_j (free j), <= c_j (nonneg j),
//               lambda_i >= 0 on >= rows, <= 0 on <= rows, free on = rows,
//               sum_i lambda_i b_i = value.
//   Infeasible: farkas lambda with sum_i lambda_i a_ij = 0 (free j),
//               <= 0 (nonneg j), sum_i lambda_i b_i > 0, minimize-sense signs.
//   Unbounded:  ray d with x + t d feasible for all t >= 0 and improving
//               objective; x holds a feasible point.
// Every result is re-verified exactly before being returned.
// ---------------------------------------------------------------------------

enum class VarSign { NonNeg, Free };

struct Row {
    Vec a;
    Relation rel = Relation::GreaterEq;
    Rational b;
};

struct Program {
    Sense sense = Sense::Minimize;
    std::size_t n = 0;
    std::vector<VarSign> signs;
    Vec c;
    std::vector<Row> rows;
};

struct ProgramResult {
    LPStatus status = LPStatus::Infeasible;
    Vec x;
    Rational value;
    Vec dual;
    Vec farkas;
    Vec ray;
};

inline void validate_program(const Program& p) {
    if (p.n == 0) throw MalformedProblem("program: no variables");
    if (p.signs.size() != p.n) throw MalformedProblem("program: sign list length");
    if (p.c.size() != p.n) throw MalformedProblem("program: cost length");
    for (const auto& r : p.rows) {
        if (r.a.size() != p.n) throw MalformedProblem("program: row length");
        if (is_strict(r.rel)) throw MalformedProblem("program: strict relation");
    }
}

inline bool row_satisfied(const Row& r, const Vec& x) {
    const Rational lhs = dot(r.a, x);
    switch (r.rel) {
        case Relation::LessEq: return lhs <= r.b;
        case Relation::Equal: return lhs == r.b;
        case Relation::GreaterEq: return lhs >= r.b;
        default: return false;
    }
}

inline bool point_feasible(const Program& p, const Vec& x) {
    if (x.size() != p.n) return false;
    for (std::size_t j = 0; j < p.n; ++j)
        if (p.signs[j] == VarSign::NonNeg && x[j] < Rational(0)) return false;
    for (const auto& r : p.rows)
        if (!row_satisfied(r, x)) return false;
    return true;
}

// Exact post-solve audit of the certificate identities. A failure here is a
// solver bug, not a data error.
inline void audit_result(const Program& p, const ProgramResult& res) {
    const bool maximize = p.sense == Sense::Maximize;
    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("lp audit failed: ") + what);
    };
    if (res.status == LPStatus::Optimal) {
        check(point_feasible(p, res.x), "optimal point infeasible");
        check(dot(p.c, res.x) == res.value, "value mismatch");
        check(res.dual.size() == p.rows.size(), "dual length");
        Rational dual_value;
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            const auto& r = p.rows[i];
            dual_value += res.dual[i] * r.b;
            if (r.rel == Relation::GreaterEq)
                check(maximize ? res.dual[i] <= Rational(0) : res.dual[i] >= Rational(0),
                      "dual sign on >= row");
            if (r.rel == Relation::LessEq)
                check(maximize ? res.dual[i] >= Rational(0) : res.dual[i] <= Rational(0),
                      "dual sign on <= row");
        }
        check(dual_value == res.value, "strong duality gap");
        for (std::size_t j = 0; j < p.n; ++j) {
            Rational col;
            for (std::size_t i = 0; i < p.rows.size(); ++i) col += res.dual[i] * p.rows[i].a[j];
            if (p.signs[j] == VarSign::Free) {
                check(col == p.c[j], "dual equality on free variable");
            } else {
                check(maximize ? col >= p.c[j] : col <= p.c[j], "dual inequality on nonneg variable");
            }
        }
    } else if (res.status == LPStatus::Infeasible) {
        check(res.farkas.size() == p.rows.size(), "farkas length");
        Rational rhs_combo;
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            const auto& r = p.rows[i];
            rhs_combo += res.farkas[i] * r.b;
            if (r.rel == Relation::GreaterEq) check(res.farkas[i] >= Rational(0), "farkas sign on >= row");
            if (r.rel == Relation::LessEq) check(res.farkas[i] <= Rational(0), "farkas sign on <= row");
        }
        check(rhs_combo > Rational(0), "farkas rhs combination not positive");
        for (std::size_t j = 0; j < p.n; ++j) {
            Rational col;
            for (std::size_t i = 0; i < p.rows.size(); ++i) col += res.farkas[i] * p.rows[i].a[j];
            if (p.signs[j] == VarSign::Free) {
                check(col.is_zero(), "farkas column on free variable");
            } else {
                check(col <= Rational(0), "farkas column on nonneg variable");
            }
        }
    } else if (res.status == LPStatus::Unbounded) {
        check(res.ray.size() == p.n, "ray length");
        for (std::size_t j = 0; j < p.n; ++j)
            if (p.signs[j] == VarSign::NonNeg) check(res.ray[j] >= Rational(0), "ray sign");
        for (const auto& r : p.rows) {
            const Rational v = dot(r.a, res.ray);
            if (r.rel == Relation::GreaterEq) check(v >= Rational(0), "ray on >= row");
            if (r.rel == Relation::LessEq) check(v <= Rational(0), "ray on <= row");
            if (r.rel == Relation::Equal) check(v.is_zero(), "ray on = row");
        }
        const Rational drift = dot(p.c, res.ray);
        check(maximize ? drift > Rational(0) : drift < Rational(0), "ray not improving");
        if (!res.x.empty()) check(point_feasible(p, res.x), "unbounded feasible point");
    }
}

ProgramResult solve_program(const Program& p);  // forward

// Solves min c.x directly via the standard-form core.
inline ProgramResult solve_min_primal(const Program& p, const Vec& cmin) {
    // Column layout: one column per nonneg var, two per free var, then slacks.
    std::vector<std::size_t> col_of(p.n);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < p.n; ++j) {
        col_of[j] = ncols;
        ncols += p.signs[j] == VarSign::Free ? 2 : 1;
    }
    std::vector<std::size_t> slack_of(p.rows.size(), SIZE_MAX);
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        if (p.rows[i].rel != Relation::Equal) slack_of[i] = ncols++;

    Matrix A(p.rows.size(), Vec(ncols));
    Vec b(p.rows.size());
    Vec c(ncols);
    for (std::size_t j = 0; j < p.n; ++j) {
        c[col_of[j]] = cmin[j];
        if (p.signs[j] == VarSign::Free) c[col_of[j] + 1] = -cmin[j];
    }
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const auto& r = p.rows[i];
        for (std::size_t j = 0; j < p.n; ++j) {
            A[i][col_of[j]] = r.a[j];
            if (p.signs[j] == VarSign::Free) A[i][col_of[j] + 1] = -r.a[j];
        }
        if (r.rel == Relation::LessEq) A[i][slack_of[i]] = Rational(1);
        if (r.rel == Relation::GreaterEq) A[i][slack_of[i]] = Rational(-1);
        b[i] = r.b;
    }

    CoreResult core = simplex_standard(std::move(A), std::move(b), c);
    ProgramResult res;
    auto unpack = [&](const Vec& w) {
        Vec x(p.n);
        for (std::size_t j = 0; j < p.n; ++j) {
            x[j] = w[col_of[j]];
            if (p.signs[j] == VarSign::Free) x[j] -= w[col_of[j] + 1];
        }
        return x;
    };
    switch (core.status) {
        case CoreStatus::Optimal:
            res.status = LPStatus::Optimal;
            res.x = unpack(core.w);
            res.value = core.value;
            res.dual = core.y;
            break;
        case CoreStatus::Infeasible:
            res.status = LPStatus::Infeasible;
            res.farkas = core.y;
            break;
        case CoreStatus::Unbounded:
            res.status = LPStatus::Unbounded;
            res.ray = unpack(core.ray);
            res.x = unpack(core.w);
            break;
    }
    return res;
}

// Builds the dual of min cmin.x over p's rows, as a Program to be solved in
// primal orientation. LessEq rows enter negated so every dual variable is
// either nonneg or free.
inline Program build_dual(const Program& p, const Vec& cmin) {
    Program d;
    d.sense = Sense::Maximize;
    d.n = p.rows.size();
    d.signs.resize(d.n);
    d.c.resize(d.n);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const auto& r = p.rows[i];
        d.signs[i] = r.rel == Relation::Equal ? VarSign::Free : VarSign::NonNeg;
        d.c[i] = r.rel == Relation::LessEq ? -r.b : r.b;
    }
    d.rows.resize(p.n);
    for (std::size_t j = 0; j < p.n; ++j) {
        Row row;
        row.a.resize(d.n);
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            const Rational aij = p.rows[i].a[j];
            row.a[i] = p.rows[i].rel == Relation::LessEq ? -aij : aij;
        }
        row.rel = p.signs[j] == VarSign::Free ? Relation::Equal : Relation::LessEq;
        row.b = cmin[j];
        d.rows[j] = row;
    }
    return d;
}

// Unwraps a dual-space vector back to per-row multipliers of p.
inline Vec unwrap_row_multipliers(const Program& p, const Vec& nu) {
    Vec lambda(p.rows.size());
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        lambda[i] = p.rows[i].rel == Relation::LessEq ? -nu[i] : nu[i];
    return lambda;
}

inline ProgramResult solve_min_via_dual(const Program& p, const Vec& cmin, int depth);

inline ProgramResult solve_min(const Program& p, const Vec& cmin, int depth) {
    // Tall systems are solved through their dual; pivoting cost scales with
    // the row count, and most separation queries have far more rows than
    // variables.
    if (p.rows.size() > p.n + 4 && depth < 3) return solve_min_via_dual(p, cmin, depth);
    return solve_min_primal(p, cmin);
}

inline ProgramResult solve_min_via_dual(const Program& p, const Vec& cmin, int depth) {
    const Program d = build_dual(p, cmin);
    Vec dmin = d.c;
    for (auto& v : dmin) v = -v;  // solve max b.nu as min (-b).nu
    ProgramResult dres = solve_min_primal(d, dmin);
    ProgramResult res;
    if (dres.status == LPStatus::Optimal) {
        res.status = LPStatus::Optimal;
        res.value = -dres.value;
        res.dual = unwrap_row_multipliers(p, dres.x);
        // The dual's row multipliers are, up to sign, the primal point.
        res.x.resize(p.n);
        for (std::size_t j = 0; j < p.n; ++j) res.x[j] = -dres.dual[j];
        return res;
    }
    if (dres.status == LPStatus::Unbounded) {
        res.status = LPStatus::Infeasible;
        res.farkas = unwrap_row_multipliers(p, dres.ray);
        return res;
    }
    // Dual infeasible: p is infeasible or unbounded. Decide with the
    // homogeneous dual (always feasible at 0).
    Program df = d;
    for (auto& row : df.rows) row.b = Rational(0);
    Vec dfmin = df.c;
    for (auto& v : dfmin) v = -v;
    ProgramResult fres = solve_min_primal(df, dfmin);
    if (fres.status == LPStatus::Unbounded) {
        res.status = LPStatus::Infeasible;
        res.farkas = unwrap_row_multipliers(p, fres.ray);
        return res;
    }
    if (fres.status != LPStatus::Optimal || !fres.value.is_zero())
        throw std::logic_error("lp: homogeneous dual must be optimal at zero");
    // p is feasible (read a point off the homogeneous dual's duals) and, with
    // its dual infeasible, unbounded. Fetch an improving ray from the
    // recession cone, normalized by c.d >= -1.
    res.status = LPStatus::Unbounded;
    res.x.resize(p.n);
    for (std::size_t j = 0; j < p.n; ++j) res.x[j] = -fres.dual[j];

    Program rayp;
    rayp.sense = Sense::Minimize;
    rayp.n = p.n;
    rayp.signs = p.signs;
    rayp.c = cmin;
    rayp.rows.reserve(p.rows.size() + 1);
    for (const auto& r : p.rows) {
        Row hom = r;
        hom.b = Rational(0);
        rayp.rows.push_back(std::move(hom));
    }
    Row norm;
    norm.a = cmin;
    norm.rel = Relation::GreaterEq;
    norm.b = Rational(-1);
    rayp.rows.push_back(std::move(norm));
    ProgramResult rres = solve_min(rayp, cmin, depth + 1);
    if (rres.status != LPStatus::Optimal || rres.value != Rational(-1))
        throw std::logic_error("lp: ray search must attain -1");
    res.ray = rres.x;
    return res;
}

inline ProgramResult solve_program(const Program& p) {
    validate_program(p);
    const bool maximize = p.sense == Sense::Maximize;
    Vec cmin = p.c;
    if (maximize)
        for (auto& v : cmin) v = -v;
    ProgramResult res = solve_min(p, cmin, 0);
    if (maximize) {
        if (res.status == LPStatus::Optimal) {
            res.value = -res.value;
            for (auto& v : res.dual) v = -v;
        }
        // Farkas vectors keep minimize-sense signs; rays already improve the
        // stated sense because the core minimized -c.
    }
    audit_result(p, res);
    return res;
}

// Decides strict systems by maximizing one shared slack t in [0, 1]: each
// strict row retreats by t, and the system is strictly feasible exactly when
// the optimum is positive.
struct StrictDecision {
    bool strictly_feasible = false;
    bool relaxation_infeasible = false;  // even the weak closure fails
    Vec witness;                         // without the slack variable
    Rational slack;                      // attained t
    Vec dual;                            // multipliers of the augmented system
};

inline StrictDecision decide_strict(std::size_t nvars, const std::vector<VarSign>& signs,
                                    const std::vector<Row>& mixed_rows) {
    Program p;
    p.sense = Sense::Maximize;
    p.n = nvars + 1;
    p.signs = signs;
    p.signs.push_back(VarSign::NonNeg);
    p.c.assign(p.n, Rational(0));
    p.c[nvars] = Rational(1);
    for (const auto& r : mixed_rows) {
        Row row;
        row.a = r.a;
        row.a.push_back(Rational(0));
        row.b = r.b;
        switch (r.rel) {
            case Relation::Greater:
                row.rel = Relation::GreaterEq;
                row.a[nvars] = Rational(-1);
                break;
            case Relation::Less:
                row.rel = Relation::LessEq;
                row.a[nvars] = Rational(1);
                break;
            default:
                row.rel = r.rel;
                break;
        }
        p.rows.push_back(std::move(row));
    }
    Row cap;
    cap.a.assign(p.n, Rational(0));
    cap.a[nvars] = Rational(1);
    cap.rel = Relation::LessEq;
    cap.b = Rational(1);
    p.rows.push_back(std::move(cap));

    ProgramResult res = solve_program(p);
    StrictDecision out;
    if (res.status == LPStatus::Infeasible) {
        out.relaxation_infeasible = true;
        return out;
    }
    if (res.status != LPStatus::Optimal) throw std::logic_error("strict slack LP cannot be unbounded");
    out.slack = res.value;
    out.dual = res.dual;
    if (res.value > Rational(0)) {
        out.strictly_feasible = true;
        out.witness.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(nvars));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

inline void validate_constraints(const std::vector<LinearConstraint>& cs, std::size_t dimension) {
    for (const auto& c : cs)
        if (c.coeffs.size() != dimension)
            throw MalformedProblem("constraint length does not match problem dimension");
}

inline LPOutcome solve_lp(const LPProblem& problem) {
    if (problem.dimension == 0) throw MalformedProblem("dimension must be at least 1");
    if (problem.objective.size() != problem.dimension)
        throw MalformedProblem("objective length does not match problem dimension");
    validate_constraints(problem.constraints, problem.dimension);
    for (const auto& c : problem.constraints)
        if (detail::is_strict(c.rel))
            throw StrictRelationPresent("solve_lp does not accept strict relations");

    detail::Program p;
    p.sense = problem.sense;
    p.n = problem.dimension;
    p.signs.assign(p.n, detail::VarSign::Free);
    p.c = problem.objective;
    for (const auto& c : problem.constraints) p.rows.push_back({c.coeffs, c.rel, c.rhs});

    detail::ProgramResult r = detail::solve_program(p);
    LPOutcome out;
    out.status = r.status;
    switch (r.status) {
        case LPStatus::Optimal:
            out.primal_witness = r.x;
            out.value = r.value;
            out.dual_certificate = r.dual;
            break;
        case LPStatus::Infeasible:
            out.dual_certificate = r.farkas;
            break;
        case LPStatus::Unbounded:
            out.dual_certificate = r.ray;
            if (!r.x.empty()) out.primal_witness = r.x;
            break;
        default:
            break;
    }
    return out;
}

inline LPOutcome strict_feasibility(const std::vector<LinearConstraint>& constraints,
                                    std::size_t dimension) {
    if (dimension == 0) throw MalformedProblem("dimension must be at least 1");
    validate_constraints(constraints, dimension);
    std::vector<detail::Row> rows;
    rows.reserve(constraints.size());
    for (const auto& c : constraints) rows.push_back({c.coeffs, c.rel, c.rhs});
    detail::StrictDecision d =
        detail::decide_strict(dimension, std::vector<detail::VarSign>(dimension, detail::VarSign::Free), rows);

    LPOutcome out;
    if (d.strictly_feasible) {
        out.status = LPStatus::StrictlyFeasible;
        out.primal_witness = d.witness;
        out.value = d.slack;
        return out;
    }
    out.status = LPStatus::StrictlyInfeasible;
    if (d.relaxation_infeasible) {
        // Even with all strict relations weakened the system has no point;
        // certify that weak closure directly.
        std::vector<LinearConstraint> weak = constraints;
        for (auto& c : weak) {
            if (c.rel == Relation::Greater) c.rel = Relation::GreaterEq;
            if (c.rel == Relation::Less) c.rel = Relation::LessEq;
        }
        detail::Program p;
        p.n = dimension;
        p.signs.assign(dimension, detail::VarSign::Free);
        p.c.assign(dimension, Rational(0));
        for (const auto& c : weak) p.rows.push_back({c.coeffs, c.rel, c.rhs});
        detail::ProgramResult r = detail::solve_program(p);
        if (r.status != LPStatus::Infeasible)
            throw std::logic_error("weak closure must be infeasible here");
        // Same >=-canonical convention as farkas_certificate.
        Vec cert(weak.size());
        for (std::size_t i = 0; i < weak.size(); ++i)
            cert[i] = weak[i].rel == Relation::LessEq ? -r.farkas[i] : r.farkas[i];
        out.dual_certificate = std::move(cert);
        out.value = Rational(0);
        return out;
    }
    // Weakly feasible but the shared slack maxes out at zero; the dual of the
    // slack LP proves t <= 0 over the relaxation.
    out.value = d.slack;
    out.dual_certificate = d.dual;
    return out;
}

// Farkas multipliers for an infeasible weak system, reported against each
// constraint in >=-canonical form: nonnegative on inequality rows (a <= row is
// first negated), signed on equality rows. They recombine to 0 >= positive.
inline Vec farkas_certificate(const std::vector<LinearConstraint>& constraints,
                              std::size_t dimension) {
    if (dimension == 0) throw MalformedProblem("dimension must be at least 1");
    validate_constraints(constraints, dimension);
    for (const auto& c : constraints)
        if (detail::is_strict(c.rel))
            throw StrictRelationPresent("farkas_certificate expects weak relations");
    detail::Program p;
    p.n = dimension;
    p.signs.assign(dimension, detail::VarSign::Free);
    p.c.assign(dimension, Rational(0));
    for (const auto& c : constraints) p.rows.push_back({c.coeffs, c.rel, c.rhs});
    detail::ProgramResult r = detail::solve_program(p);
    if (r.status == LPStatus::Optimal) throw SystemFeasible("system is feasible; no Farkas certificate");
    if (r.status != LPStatus::Infeasible) throw std::logic_error("feasibility probe cannot be unbounded");
    Vec out(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i)
        out[i] = constraints[i].rel == Relation::LessEq ? -r.farkas[i] : r.farkas[i];
    return out;
}

}  // namespace svo
