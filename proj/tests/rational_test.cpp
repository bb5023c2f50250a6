#include <gtest/gtest.h>

#include "segmarket/matrix.hpp"
#include "segmarket/rational.hpp"

using segmarket::ErrorCode;
using segmarket::parse_rational;
using segmarket::Rational;

namespace {

ErrorCode code_of(const char* text) {
    try {
        parse_rational(text);
    } catch (const segmarket::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return ErrorCode::SolverFailure;
}

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
    EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
    EXPECT_EQ(parse_rational("-3/10"), Rational(-3, 10));
    EXPECT_EQ(parse_rational("4/8"), Rational(1, 2));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational(" 0.3 "), Rational(3, 10));
    EXPECT_EQ(parse_rational("-.25"), Rational(-1, 4));
    EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
    EXPECT_EQ(parse_rational("2.5E1"), Rational(25));
    EXPECT_EQ(parse_rational("3."), Rational(3));
    EXPECT_EQ(parse_rational("010/03"), Rational(10, 3));
    EXPECT_EQ(parse_rational("0.07"), Rational(7, 100));
    EXPECT_EQ(parse_rational("0"), Rational(0));
}

TEST(Rational, RejectsMalformedText) {
    EXPECT_EQ(code_of("1/0"), ErrorCode::ParseError);
    EXPECT_EQ(code_of(""), ErrorCode::ParseError);
    EXPECT_EQ(code_of("abc"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("1.2.3"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("3/-4"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("1e"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("."), ErrorCode::ParseError);
}

TEST(Rational, PrintsLowestTerms) {
    EXPECT_EQ(segmarket::to_string(Rational(6, 20)), "3/10");
    EXPECT_EQ(segmarket::to_string(Rational(4, 2)), "2");
    EXPECT_EQ(segmarket::to_string(Rational(-1, 3)), "-1/3");
    EXPECT_EQ(segmarket::to_string(Rational(0)), "0");
}

TEST(Rational, RoundTripsThroughText) {
    for (long n = -40; n <= 40; n += 7)
        for (long d = 1; d <= 30; d += 4) {
            const Rational r(n, d);
            EXPECT_EQ(parse_rational(segmarket::to_string(r)), r);
        }
}

TEST(LinearSystem, SolvesAndDetectsInconsistency) {
    segmarket::RationalMatrix a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = 3;
    auto x = segmarket::solve_linear_system(a, {Rational(5), Rational(10)});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], Rational(1));
    EXPECT_EQ((*x)[1], Rational(3));

    segmarket::RationalMatrix s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 1;
    s(1, 0) = 2;
    s(1, 1) = 2;
    EXPECT_FALSE(segmarket::solve_linear_system(s, {Rational(1), Rational(3)}));
    auto free = segmarket::solve_linear_system(s, {Rational(1), Rational(2)});
    ASSERT_TRUE(free);
    EXPECT_EQ((*free)[0] + (*free)[1], Rational(1));
}
