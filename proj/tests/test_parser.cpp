#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace frellich;

TEST(Parser, CanonicalPrinting) {
  EXPECT_EQ(to_string(parse("x2^4 + x1^4 + 2*x1^2*x2^2")), "x1^4 + 2*x1^2*x2^2 + x2^4");
  EXPECT_EQ(to_string(parse_polynomial("-x1 + 1/2")), "-x1 + 1/2");
  EXPECT_EQ(to_string(parse_polynomial("x1 - 3*x2^2")), "-3*x2^2 + x1");
  EXPECT_EQ(to_string(parse_polynomial("0")), "0");
}

TEST(Parser, ParenthesesPowersAndProducts) {
  EXPECT_EQ(parse_polynomial("(x1 + x2)^2"), parse_polynomial("x1^2 + 2*x1*x2 + x2^2"));
  EXPECT_EQ(parse_polynomial("(x1^2 + x2^2)^2"), support::bilaplacian().poly());
  EXPECT_EQ(parse_polynomial("-(x1 - x2)*(x1 + x2)"), parse_polynomial("x2^2 - x1^2"));
  EXPECT_EQ(parse_polynomial("2 x1"), parse_polynomial("2*x1"));
}

TEST(Parser, DecimalsAreExact) {
  EXPECT_EQ(parse_polynomial("0.125*x1^2").coefficient({2}), rational(1, 8));
  EXPECT_EQ(parse_polynomial("1.5e1").coefficient({0}), rational(15));
}

TEST(Parser, ParameterBinding) {
  const bindings b{{"b", rational(-1, 2)}};
  const auto s = parse("x1^4 + 2*b*x1^2*x2^2 + x2^4", b);
  EXPECT_EQ(s.poly().coefficient({2, 2}), rational(-1));
  EXPECT_THROW(parse("x1^4 + 2*b*x1^2*x2^2 + x2^4"), parse_error);
}

TEST(Parser, ErrorsCarryPositions) {
  try {
    parse_polynomial("x1^2 + * x2");
    FAIL() << "expected a parse error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_polynomial("x1^"), parse_error);
  EXPECT_THROW(parse_polynomial("(x1 + x2"), parse_error);
  EXPECT_THROW(parse_polynomial("x1^-2"), parse_error);
  EXPECT_THROW(parse_polynomial("foo*x1"), parse_error);
  EXPECT_THROW(parse_polynomial("x0"), parse_error);
  EXPECT_THROW(parse_polynomial("1/0"), parse_error);
  EXPECT_THROW(parse_polynomial(""), parse_error);
  EXPECT_THROW(parse_polynomial("x1^100000"), parse_error);
}

TEST(Parser, DimensionFromVariables) {
  EXPECT_EQ(parse_polynomial("x3^2").dimension(), 3u);
  EXPECT_EQ(parse_polynomial("x1^2", {}, 2).dimension(), 2u);
  EXPECT_EQ(parse("x1^2 + x2^2 + x3^2").dimension(), 3u);
}

TEST(Parser, RoundTrip) {
  for (const char* text : {"x1^4 + 2*x1^2*x2^2 + x2^4", "x1^6 - 7/3*x1^3*x2^3 + 1/10*x2^6",
                           "3*x1^2 - x1*x2 + 2*x2^2", "-x1^2*x2 + 5/7*x2^3 - 1"}) {
    const polynomial p = parse_polynomial(text);
    EXPECT_EQ(parse_polynomial(to_string(p)), p) << text;
    EXPECT_EQ(to_string(parse_polynomial(to_string(p))), to_string(p));
  }
}

TEST(Parser, FamilyTemplates) {
  const auto s = family_symbol(family::example2, rational(3));
  EXPECT_EQ(s.poly(), parse_polynomial("(x1^2 + x2^2)^3"));
  EXPECT_EQ(family_symbol(family::example1, rational(1)), support::bilaplacian());
}
