#include <gtest/gtest.h>

#include "support/errors.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "support/three_type.hpp"

using namespace segmarket;
using fixtures::q;
using fixtures::rows;
using support::code_of;

namespace {

LpConstraint row(std::vector<Rational> a, Sense s, Rational b) { return {std::move(a), s, std::move(b)}; }

}  // namespace

TEST(Simplex, TwoVariableVertex) {
    LpProblem lp{{1, 1}, {row({1, 2}, Sense::LessEqual, 4), row({3, 1}, Sense::LessEqual, 6)}};
    const auto s = simplex_solve(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.value, q(14, 5));
    EXPECT_EQ(s.point, (std::vector<Rational>{q(8, 5), q(6, 5)}));
    EXPECT_EQ(s.basis, (std::vector<std::size_t>{0, 1}));
}

TEST(Simplex, DegenerateCyclingExampleTerminates) {
    // Beale's example: cycles under the textbook rule.
    LpProblem lp{{q(3, 4), -20, q(1, 2), -6},
                 {row({q(1, 4), -8, -1, 9}, Sense::LessEqual, 0), row({q(1, 2), -12, q(-1, 2), 3}, Sense::LessEqual, 0),
                  row({0, 0, 1, 0}, Sense::LessEqual, 1)}};
    const auto s = simplex_solve(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.value, q(5, 4));
}

TEST(Simplex, EqualityAndGreaterRows) {
    LpProblem lp{{-1, -2}, {row({1, 1}, Sense::Equal, 3), row({1, -1}, Sense::GreaterEqual, 1)}};
    const auto s = simplex_solve(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.point, (std::vector<Rational>{3, 0}));
    EXPECT_EQ(s.value, -3);
}

TEST(Simplex, RedundantEqualities) {
    LpProblem lp{{1, 0}, {row({1, 1}, Sense::Equal, 1), row({2, 2}, Sense::Equal, 2)}};
    const auto s = simplex_solve(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.value, 1);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    LpProblem infeasible{{1}, {row({1}, Sense::GreaterEqual, 2), row({1}, Sense::LessEqual, 1)}};
    EXPECT_EQ(simplex_solve(infeasible).status, LpStatus::Infeasible);
    LpProblem unbounded{{1, 0}, {row({1, -1}, Sense::LessEqual, 1)}};
    EXPECT_EQ(simplex_solve(unbounded).status, LpStatus::Unbounded);
    LpProblem ragged{{1, 1}, {row({1}, Sense::LessEqual, 1)}};
    EXPECT_EQ(code_of([&] { simplex_solve(ragged); }), ErrorCode::DimensionMismatch);
}

TEST(Simplex, MatchesVertexEnumeration) {
    gen::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 3));
        const std::size_t m = static_cast<std::size_t>(gen::uniform_int(rng, 1, 3));
        LpProblem lp;
        for (std::size_t j = 0; j < n; ++j) lp.objective.emplace_back(gen::uniform_int(rng, -4, 4));
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> a;
            for (std::size_t j = 0; j < n; ++j) a.emplace_back(gen::uniform_int(rng, -3, 3));
            const auto s = static_cast<Sense>(gen::uniform_int(rng, 0, 2));
            lp.constraints.push_back(row(std::move(a), s, Rational(gen::uniform_int(rng, -2, 4))));
        }
        lp.constraints.push_back(row(std::vector<Rational>(n, Rational(1)), Sense::LessEqual, 10));
        const auto s = simplex_solve(lp);
        const auto v = oracle::vertex_enumeration(lp);
        if (!v) {
            EXPECT_EQ(s.status, LpStatus::Infeasible);
            continue;
        }
        ASSERT_EQ(s.status, LpStatus::Optimal);
        EXPECT_EQ(s.value, *v);
        EXPECT_TRUE(oracle::detail::satisfies(lp, s.point));
    }
}

TEST(Designer, ThreeTypeValues) {
    const Market m = fixtures::market3();
    EXPECT_EQ(solve_designer(m, utilitarian(m.grid())).value, q(3, 5));
    const auto two = solve_designer(m, fixtures::lambda_table(2));
    EXPECT_EQ(two.value, q(13, 15));
    EXPECT_TRUE(two.segmentation.obedient());
    EXPECT_EQ(aggregate_welfare(two.segmentation, fixtures::lambda_table(2)), q(13, 15));
    const auto ten = solve_designer(m, fixtures::lambda_table(10));
    EXPECT_EQ(ten.value, q(16, 5));
    EXPECT_EQ(aggregate_welfare(fixtures::stage_d(), fixtures::lambda_table(10)), q(16, 5));
}

TEST(Designer, ZeroWelfare) {
    const Market m = fixtures::market3();
    const auto s = solve_designer(m, WelfareTable(m.grid(), RationalMatrix(3, 3)));
    EXPECT_EQ(s.value, 0);
    EXPECT_TRUE(s.segmentation.obedient());
    EXPECT_TRUE(s.segmentation.efficient());
}

TEST(Designer, UnrestrictedMatchesOnRedistributiveTables) {
    const Market m = fixtures::market3();
    for (long l2 : {1, 2, 4, 5, 10})
        EXPECT_EQ(solve_designer_unrestricted(m, fixtures::lambda_table(l2)), solve_designer(m, fixtures::lambda_table(l2)).value);
}

TEST(Designer, GridMismatch) {
    const Market m = fixtures::market3();
    EXPECT_EQ(code_of([&] { solve_designer(m, utilitarian(TypeGrid({1, 2, 4}))); }), ErrorCode::DimensionMismatch);
}

TEST(CsMax, Values) {
    EXPECT_EQ(cs_max(fixtures::market3()).surplus, q(3, 5));
    EXPECT_EQ(cs_max(Market(TypeGrid({1, 2}), {q(1, 4), q(3, 4)})).surplus, q(1, 4));
    EXPECT_EQ(cs_max(Market(TypeGrid({3}), {1})).surplus, 0);
    const auto r = cs_max(fixtures::market3());
    EXPECT_EQ(total_profit(r.segmentation), uniform_profit(fixtures::market3()));
}

TEST(MarginalProfit, Values) {
    const Market m = fixtures::market3();
    EXPECT_EQ(max_profit_with_marginal(m, price_marginal(fixtures::stage_d())).value, q(3, 2));
    EXPECT_EQ(max_profit_with_marginal(m, {0, 1, 0}).value, q(7, 5));
    EXPECT_EQ(max_profit_with_marginal(m, price_marginal(fixtures::stage_c())).value, q(7, 5));
    EXPECT_EQ(max_profit_with_marginal(m, {1, 0, 0}).status, LpStatus::Infeasible);
}

TEST(MarginalProfit, Errors) {
    const Market m = fixtures::market3();
    EXPECT_EQ(code_of([&] { max_profit_with_marginal(m, {1, 0}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { max_profit_with_marginal(m, {2, -1, 0}); }), ErrorCode::InvalidDistribution);
    EXPECT_EQ(code_of([&] { max_profit_with_marginal(m, {q(1, 2), 0, 0}); }), ErrorCode::InvalidDistribution);
}

TEST(Implementability, StagesAreImplementable) {
    for (const auto& s : {fixtures::stage_a(), fixtures::stage_c(), fixtures::stage_d()}) {
        const auto r = is_price_implementable(s);
        EXPECT_TRUE(r.implementable);
        EXPECT_EQ(r.gap, 0);
    }
}

TEST(Implementability, PooledTwoTypeMarketIsNot) {
    const Market m(TypeGrid({1, 2}), {q(1, 2), q(1, 2)});
    const Segmentation s(m, rows({{q(1, 4), q(1, 4)}, {q(1, 4), q(1, 4)}}));
    ASSERT_TRUE(s.obedient());
    const auto r = is_price_implementable(s);
    EXPECT_FALSE(r.implementable);
    EXPECT_EQ(r.profit, 1);
    EXPECT_EQ(r.deviation_profit, q(3, 2));
    EXPECT_EQ(r.gap, q(1, 2));
    ASSERT_TRUE(r.deviation);
    EXPECT_EQ(price_marginal(*r.deviation), price_marginal(s));
}

TEST(Implementability, RequiresObedience) {
    EXPECT_EQ(code_of([] { is_price_implementable(sigma_star(fixtures::market3()).candidate); }),
              ErrorCode::NotObedient);
}
