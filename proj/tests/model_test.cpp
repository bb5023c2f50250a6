#include <gtest/gtest.h>

#include "support/errors.hpp"
#include "support/three_type.hpp"

using namespace segmarket;
using fixtures::q;
using support::code_of;

namespace {

RationalMatrix sigma_star_matrix() {
    return fixtures::rows({{q(3, 10), 0, 0}, {q(3, 10), q(1, 10), 0}, {0, q(3, 10), 0}});
}

}  // namespace

TEST(TypeGrid, ValidatesValues) {
    EXPECT_EQ(code_of([] { TypeGrid(std::vector<Rational>{}); }), ErrorCode::EmptyGrid);
    EXPECT_EQ(code_of([] { TypeGrid({1, 1}); }), ErrorCode::NonIncreasingGrid);
    EXPECT_EQ(code_of([] { TypeGrid({2, 1}); }), ErrorCode::NonIncreasingGrid);
    EXPECT_EQ(code_of([] { TypeGrid({0, 1}); }), ErrorCode::NonPositiveType);
    const TypeGrid g({1, 2, 3});
    EXPECT_EQ(g.index_of(2), 1u);
    EXPECT_FALSE(g.find(q(5, 2)));
    EXPECT_EQ(code_of([&] { g.index_of(4); }), ErrorCode::PriceNotOnGrid);
}

TEST(Market, ValidatesMasses) {
    const TypeGrid g({1, 2});
    EXPECT_EQ(code_of([&] { Market(g, {q(1, 2)}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { Market(g, {0, 1}); }), ErrorCode::ZeroOrNegativeMass);
    EXPECT_EQ(code_of([&] { Market(g, {q(1, 2), q(1, 3)}); }), ErrorCode::MassesNotSummingToOne);
    EXPECT_EQ(validate_market({1, 2}, {q(1, 4), q(3, 4)}).mass(1), q(3, 4));
}

TEST(Market, UniformPriceOfThreeTypeMarket) {
    const Market m = fixtures::market3();
    EXPECT_EQ(uniform_price(m), 2);
    EXPECT_EQ(uniform_profit(m), q(7, 5));
    EXPECT_EQ(total_surplus(m), 2);
}

TEST(Market, UniformPriceTieGoesToLowestPrice) {
    const Market m(TypeGrid({1, 2}), {q(1, 2), q(1, 2)});
    EXPECT_EQ(uniform_price(m), 1);
    EXPECT_EQ(uniform_profit(m), 1);
}

TEST(Segmentation, ValidatesStructure) {
    const Market m = fixtures::market3();
    EXPECT_EQ(code_of([&] { Segmentation(m, RationalMatrix(2, 2)); }), ErrorCode::DimensionMismatch);
    auto neg = fixtures::stage_a().sigma();
    neg(0, 1) = q(-1, 10);
    neg(0, 0) = q(4, 10);
    EXPECT_EQ(code_of([&] { Segmentation(m, neg); }), ErrorCode::NegativeMass);
    auto off = fixtures::stage_a().sigma();
    off(0, 0) = q(1, 10);
    EXPECT_EQ(code_of([&] { Segmentation(m, off); }), ErrorCode::RowSumMismatch);
}

TEST(Segmentation, PriceMarginals) {
    EXPECT_EQ(price_marginal(fixtures::stage_a()), (std::vector<Rational>{q(3, 10), q(7, 10), 0}));
    EXPECT_EQ(price_marginal(fixtures::stage_b()), (std::vector<Rational>{q(6, 10), q(4, 10), 0}));
    EXPECT_EQ(price_marginal(fixtures::stage_d()), (std::vector<Rational>{q(6, 10), q(3, 10), q(1, 10)}));
}

TEST(Segmentation, ProfitsAndSurplus) {
    const auto c = fixtures::stage_c();
    EXPECT_EQ(segment_profit(c, 2, 2), q(4, 5));
    EXPECT_EQ(segment_profit(c, 2, 3), q(4, 5));
    EXPECT_EQ(segment_profit(c, 1, 1), q(3, 5));
    EXPECT_EQ(segment_profit(c, 1, 2), q(3, 5));
    EXPECT_EQ(total_profit(c), q(7, 5));
    EXPECT_EQ(consumer_surplus(c), q(3, 5));
    EXPECT_EQ(rent(c), 0);

    const auto d = fixtures::stage_d();
    EXPECT_EQ(total_profit(d), q(3, 2));
    EXPECT_EQ(consumer_surplus(d), q(1, 2));
    EXPECT_EQ(rent(d), q(1, 10));
}

TEST(Segmentation, NoSegmentationIsObedientButNotEfficient) {
    const auto s = no_segmentation(fixtures::market3());
    EXPECT_TRUE(s.obedient());
    EXPECT_FALSE(s.efficient());
    EXPECT_EQ(s.mass(0, 1), q(3, 10));
    EXPECT_EQ(total_profit(s), q(7, 5));
    EXPECT_EQ(consumer_surplus(s), q(3, 10));
    EXPECT_EQ(rent(s), 0);
}

TEST(Segmentation, BindingSetsOfStages) {
    const auto b = fixtures::stage_b();
    EXPECT_EQ(binding_set(b, 1), (std::vector<Rational>{1, 2}));
    EXPECT_EQ(binding_set(b, 2), (std::vector<Rational>{2}));
    const auto c = fixtures::stage_c();
    EXPECT_EQ(binding_set(c, 1), (std::vector<Rational>{1, 2}));
    EXPECT_EQ(binding_set(c, 2), (std::vector<Rational>{2, 3}));
    EXPECT_EQ(optimal_prices(c, 2), (std::vector<Rational>{2, 3}));
    EXPECT_EQ(code_of([&] { binding_set(c, 3); }), ErrorCode::EmptySegment);
    EXPECT_EQ(code_of([&] { optimal_prices(c, 3); }), ErrorCode::EmptySegment);
}

TEST(Segmentation, ObedienceViolationOfTwoSegmentCandidate) {
    const Segmentation s(fixtures::market3(), sigma_star_matrix());
    EXPECT_FALSE(s.obedient());
    EXPECT_TRUE(s.efficient());
    const auto v = check_obedience(s);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], (ObedienceViolation{2, 3, q(1, 10)}));
}

TEST(Segmentation, StagesAreObedientAndEfficient) {
    for (const auto& s : {fixtures::stage_a(), fixtures::stage_b(), fixtures::stage_c(), fixtures::stage_d()}) {
        EXPECT_TRUE(s.obedient());
        EXPECT_TRUE(s.efficient());
        EXPECT_TRUE(check_obedience(s).empty());
    }
}

TEST(Segmentation, SegmentViewAndSupport) {
    const auto d = fixtures::stage_d();
    EXPECT_EQ(d.price_support(), (std::vector<std::size_t>{0, 1, 2}));
    const auto v = d.segment(1);
    EXPECT_EQ(v.price, 2);
    EXPECT_EQ(v.total, q(3, 10));
    EXPECT_EQ(*d.max_support(0), 1u);
    EXPECT_FALSE(fixtures::stage_c().max_support(2));
}

TEST(Segmentation, SingleTypeMarket) {
    const Market m(TypeGrid({5}), {1});
    const auto s = no_segmentation(m);
    EXPECT_TRUE(s.obedient());
    EXPECT_TRUE(s.efficient());
    EXPECT_EQ(total_profit(s), 5);
    EXPECT_EQ(consumer_surplus(s), 0);
}
