#include "svo/lp.hpp"

#include "lp_oracle.hpp"

#include <gtest/gtest.h>

namespace svo {
namespace {

LinearConstraint row(Vec a, Relation rel, Rational b) { return {std::move(a), rel, std::move(b)}; }

TEST(SolveLp, SingleBound) {
    LPProblem p;
    p.dimension = 1;
    p.objective = {Rational(1)};
    p.constraints = {row({Rational(1)}, Relation::GreaterEq, Rational(3))};
    const auto out = solve_lp(p);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(*out.value, Rational(3));
    EXPECT_EQ((*out.primal_witness)[0], Rational(3));
}

TEST(SolveLp, BoxCorner) {
    LPProblem p;
    p.dimension = 2;
    p.objective = {Rational(1), Rational(1)};
    p.sense = Sense::Maximize;
    p.constraints = {row({Rational(1), Rational(0)}, Relation::LessEq, Rational(1)),
                     row({Rational(0), Rational(1)}, Relation::LessEq, Rational(2)),
                     row({Rational(1), Rational(0)}, Relation::GreaterEq, Rational(0)),
                     row({Rational(0), Rational(1)}, Relation::GreaterEq, Rational(0))};
    const auto out = solve_lp(p);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(*out.value, Rational(3));
}

TEST(SolveLp, FreeRay) {
    LPProblem p;
    p.dimension = 1;
    p.objective = {Rational(1)};
    p.sense = Sense::Maximize;
    p.constraints = {row({Rational(1)}, Relation::GreaterEq, Rational(0))};
    const auto out = solve_lp(p);
    ASSERT_EQ(out.status, LPStatus::Unbounded);
    ASSERT_TRUE(out.dual_certificate);
    EXPECT_GT((*out.dual_certificate)[0], Rational(0));
}

TEST(SolveLp, RejectsMalformedAndStrict) {
    LPProblem p;
    p.dimension = 2;
    p.objective = {Rational(1)};
    EXPECT_THROW(solve_lp(p), MalformedProblem);
    p.objective = {Rational(1), Rational(0)};
    p.constraints = {row({Rational(1)}, Relation::GreaterEq, Rational(0))};
    EXPECT_THROW(solve_lp(p), MalformedProblem);
    p.constraints = {row({Rational(1), Rational(0)}, Relation::Greater, Rational(0))};
    EXPECT_THROW(solve_lp(p), StrictRelationPresent);
}

TEST(SolveLp, DualCertificateIdentities) {
    // minimize 2x + 3y s.t. x + y >= 4, x - y <= 1, y >= 0
    LPProblem p;
    p.dimension = 2;
    p.objective = {Rational(2), Rational(3)};
    p.constraints = {row({Rational(1), Rational(1)}, Relation::GreaterEq, Rational(4)),
                     row({Rational(1), Rational(-1)}, Relation::LessEq, Rational(1)),
                     row({Rational(0), Rational(1)}, Relation::GreaterEq, Rational(0))};
    const auto out = solve_lp(p);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    const Vec& lambda = *out.dual_certificate;
    Rational dual_value;
    Vec combo(p.dimension);
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        dual_value += lambda[i] * p.constraints[i].rhs;
        combo = add(combo, scale(lambda[i], p.constraints[i].coeffs));
    }
    EXPECT_EQ(dual_value, *out.value);  // zero duality gap, exactly
    EXPECT_EQ(combo, p.objective);      // multipliers recombine the objective
    EXPECT_GE(lambda[0], Rational(0));
    EXPECT_LE(lambda[1], Rational(0));
}

TEST(StrictFeasibility, OpenInterval) {
    const auto out = strict_feasibility({row({Rational(1)}, Relation::Greater, Rational(0)),
                                         row({Rational(1)}, Relation::Less, Rational(1))},
                                        1);
    ASSERT_EQ(out.status, LPStatus::StrictlyFeasible);
    EXPECT_EQ((*out.primal_witness)[0], Rational(1, 2));
}

TEST(StrictFeasibility, ContradictorySigns) {
    const auto out = strict_feasibility({row({Rational(1)}, Relation::Greater, Rational(0)),
                                         row({Rational(-1)}, Relation::Greater, Rational(0))},
                                        1);
    EXPECT_EQ(out.status, LPStatus::StrictlyInfeasible);
}

TEST(StrictFeasibility, MixedStrictWeak) {
    const auto out = strict_feasibility({row({Rational(1)}, Relation::GreaterEq, Rational(0)),
                                         row({Rational(1)}, Relation::LessEq, Rational(0)),
                                         row({Rational(1)}, Relation::Greater, Rational(-1))},
                                        1);
    ASSERT_EQ(out.status, LPStatus::StrictlyFeasible);
    EXPECT_EQ((*out.primal_witness)[0], Rational(0));
}

TEST(StrictFeasibility, DisjointIntervalsCertifiedByWeakClosure) {
    // Even the weak closure {x >= 1, x <= 0} is empty; the certificate must
    // recombine it to a contradiction.
    const std::vector<LinearConstraint> cs{row({Rational(1)}, Relation::Greater, Rational(1)),
                                           row({Rational(1)}, Relation::Less, Rational(0))};
    const auto out = strict_feasibility(cs, 1);
    ASSERT_EQ(out.status, LPStatus::StrictlyInfeasible);
    ASSERT_TRUE(out.dual_certificate);
    const Vec& lambda = *out.dual_certificate;
    ASSERT_EQ(lambda.size(), cs.size());
    Rational combo, rhs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Rational sign = cs[i].rel == Relation::Less ? Rational(-1) : Rational(1);
        combo += lambda[i] * sign * cs[i].coeffs[0];
        rhs += lambda[i] * sign * cs[i].rhs;
        EXPECT_GE(lambda[i], Rational(0));
    }
    EXPECT_TRUE(combo.is_zero());
    EXPECT_GT(rhs, Rational(0));
}

TEST(SolveLp, UnconstrainedProblems) {
    LPProblem p;
    p.dimension = 2;
    p.objective = {Rational(0), Rational(0)};
    const auto zero = solve_lp(p);
    ASSERT_EQ(zero.status, LPStatus::Optimal);
    EXPECT_EQ(*zero.value, Rational(0));

    p.objective = {Rational(1), Rational(0)};
    const auto unb = solve_lp(p);
    EXPECT_EQ(unb.status, LPStatus::Unbounded);
}

TEST(SolveLp, EqualityOnlySystem) {
    LPProblem p;
    p.dimension = 2;
    p.objective = {Rational(1), Rational(1)};
    p.constraints = {row({Rational(1), Rational(1)}, Relation::Equal, Rational(2)),
                     row({Rational(1), Rational(-1)}, Relation::Equal, Rational(0))};
    const auto out = solve_lp(p);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(*out.value, Rational(2));
    EXPECT_EQ(*out.primal_witness, (Vec{Rational(1), Rational(1)}));
    // A redundant copy of a row must not disturb anything.
    p.constraints.push_back(p.constraints.front());
    const auto again = solve_lp(p);
    ASSERT_EQ(again.status, LPStatus::Optimal);
    EXPECT_EQ(*again.value, Rational(2));
}

TEST(StrictFeasibility, WeaklyFeasibleOnly) {
    // x >= 0 and x <= 0 and x > -1 is strictly feasible; adding x > 0 kills it.
    const auto out = strict_feasibility({row({Rational(1)}, Relation::GreaterEq, Rational(0)),
                                         row({Rational(1)}, Relation::LessEq, Rational(0)),
                                         row({Rational(1)}, Relation::Greater, Rational(0))},
                                        1);
    EXPECT_EQ(out.status, LPStatus::StrictlyInfeasible);
    EXPECT_EQ(*out.value, Rational(0));
}

TEST(Farkas, OpposingHalfLines) {
    const auto cert = farkas_certificate({row({Rational(1)}, Relation::GreaterEq, Rational(1)),
                                          row({Rational(-1)}, Relation::GreaterEq, Rational(0))},
                                         1);
    EXPECT_EQ(cert[0], Rational(1));
    EXPECT_EQ(cert[1], Rational(1));
}

TEST(Farkas, ThreeRows) {
    const auto cert =
        farkas_certificate({row({Rational(1), Rational(1)}, Relation::GreaterEq, Rational(2)),
                            row({Rational(-1), Rational(0)}, Relation::GreaterEq, Rational(0)),
                            row({Rational(0), Rational(-1)}, Relation::GreaterEq, Rational(0))},
                           2);
    EXPECT_EQ(cert, (Vec{Rational(1), Rational(1), Rational(1)}));
}

TEST(Farkas, FeasibleSystemThrows) {
    EXPECT_THROW(
        farkas_certificate({row({Rational(1)}, Relation::GreaterEq, Rational(0))}, 1),
        SystemFeasible);
}

// Every certificate recombines, in >=-canonical form, to 0 >= positive.
void expect_farkas_recombines(const std::vector<LinearConstraint>& cs, const Vec& cert) {
    Vec combo(cs[0].coeffs.size());
    Rational rhs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Rational sign = cs[i].rel == Relation::LessEq ? Rational(-1) : Rational(1);
        combo = add(combo, scale(cert[i] * sign, cs[i].coeffs));
        rhs += cert[i] * sign * cs[i].rhs;
        if (cs[i].rel != Relation::Equal) EXPECT_GE(cert[i], Rational(0));
    }
    EXPECT_TRUE(is_zero(combo));
    EXPECT_GT(rhs, Rational(0));
}

TEST(Farkas, RandomInfeasibleSystemsRecombine) {
    std::uint64_t state = 77;
    std::size_t found = 0;
    while (found < 40) {
        const LPProblem p = testing::random_pointed_lp(state, 3, 8);
        std::vector<LinearConstraint> cs = p.constraints;
        LPProblem probe = p;
        probe.objective = zero_vec(p.dimension);
        probe.sense = Sense::Minimize;
        if (solve_lp(probe).status != LPStatus::Infeasible) continue;
        ++found;
        expect_farkas_recombines(cs, farkas_certificate(cs, p.dimension));
    }
}

TEST(SolveLp, Deterministic) {
    std::uint64_t state = 5150;
    for (int i = 0; i < 25; ++i) {
        const LPProblem p = testing::random_pointed_lp(state);
        const auto a = solve_lp(p);
        const auto b = solve_lp(p);
        EXPECT_EQ(a.status, b.status);
        EXPECT_EQ(a.primal_witness.has_value(), b.primal_witness.has_value());
        if (a.primal_witness) EXPECT_EQ(*a.primal_witness, *b.primal_witness);
        if (a.value && b.value) EXPECT_EQ(*a.value, *b.value);
        if (a.dual_certificate) EXPECT_EQ(*a.dual_certificate, *b.dual_certificate);
    }
}

TEST(SolveLp, OracleEquivalenceSample) {
    std::uint64_t state = 314159;
    std::size_t optimal = 0, infeasible = 0, unbounded = 0;
    for (int i = 0; i < 300; ++i) {
        const LPProblem p = testing::random_pointed_lp(state);
        const auto got = solve_lp(p);
        const auto want = testing::oracle_solve(p);
        ASSERT_EQ(got.status, want.status) << "case " << i;
        if (want.status == LPStatus::Optimal) {
            ++optimal;
            ASSERT_EQ(*got.value, want.value) << "case " << i;
        }
        if (want.status == LPStatus::Infeasible) ++infeasible;
        if (want.status == LPStatus::Unbounded) ++unbounded;
    }
    // The generator must exercise all three outcomes.
    EXPECT_GT(optimal, 50u);
    EXPECT_GT(infeasible, 10u);
    EXPECT_GT(unbounded, 10u);
}

TEST(SolveLp, UnboundedRayIsValid) {
    std::uint64_t state = 271828;
    std::size_t seen = 0;
    while (seen < 20) {
        const LPProblem p = testing::random_pointed_lp(state);
        const auto out = solve_lp(p);
        if (out.status != LPStatus::Unbounded) continue;
        ++seen;
        ASSERT_TRUE(out.dual_certificate);
        EXPECT_TRUE(testing::oracle_ray_valid(p, *out.dual_certificate));
        const Rational drift = dot(p.objective, *out.dual_certificate);
        if (p.sense == Sense::Maximize)
            EXPECT_GT(drift, Rational(0));
        else
            EXPECT_LT(drift, Rational(0));
        if (out.primal_witness) EXPECT_TRUE(testing::oracle_point_feasible(p, *out.primal_witness));
    }
}

}  // namespace
}  // namespace svo
