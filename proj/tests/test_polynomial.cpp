#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace frellich;

namespace {

polynomial x(std::size_t n, std::size_t i) { return polynomial::variable(n, i); }
polynomial k(std::size_t n, const rational& c) { return polynomial::constant(n, c); }

}  // namespace

TEST(Polynomial, ArithmeticAndCancellation) {
  const auto p = x(2, 0) + x(2, 1);
  const auto q = x(2, 0) - x(2, 1);
  const auto prod = p * q;
  EXPECT_EQ(prod, x(2, 0).pow(2) - x(2, 1).pow(2));
  EXPECT_EQ(prod.size(), 2u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.pow(0), k(2, 1));
  EXPECT_EQ(p.pow(3).degree(), 3);
  EXPECT_EQ(p.pow(4).coefficient({2, 2}), rational(6));
}

TEST(Polynomial, ExactEvaluation) {
  const auto p = parse_polynomial("x1^3 - 1/3*x1*x2 + 7");
  const std::vector<rational> pt{rational(1, 2), rational(-3, 4)};
  EXPECT_EQ(p.evaluate(pt), rational(1, 8) + rational(1, 8) + 7);
  const std::vector<double> d{0.5, -0.75};
  EXPECT_DOUBLE_EQ(evaluate(p, d), 7.25);
}

TEST(Polynomial, DimensionMismatchThrows) {
  EXPECT_THROW(x(2, 0) + x(3, 0), usage_error);
  EXPECT_THROW(x(2, 2), usage_error);
  EXPECT_THROW(multi_index({1, -1}), usage_error);
}

TEST(Polynomial, Differentiate) {
  const auto p = parse_polynomial("x1^4*x2^2 + 3*x1*x2");
  EXPECT_EQ(differentiate(p, {2, 1}), parse_polynomial("24*x1^2*x2"));
  EXPECT_EQ(differentiate(p, 0, 5), polynomial(2));
  EXPECT_EQ(differentiate(p, {1, 1}), parse_polynomial("8*x1^3*x2 + 3"));
}

TEST(Polynomial, ApplyOperatorSign) {
  // -(d²/dx²) for ξ², the bilaplacian Δ² for |ξ|⁴.
  const auto lap = parse("x1^2 + x2^2");
  const auto u = parse_polynomial("x1^2*x2^2");
  EXPECT_EQ(apply_operator(lap, u), parse_polynomial("-2*x2^2 - 2*x1^2"));
  const auto bilap = support::bilaplacian();
  EXPECT_EQ(apply_operator(bilap, u), k(2, 8));
}

TEST(Polynomial, SubstituteKeepsDimension) {
  const auto p = parse_polynomial("x1^2*x2 + x2");
  const auto q = substitute(p, 0, rational(3));
  EXPECT_EQ(q.dimension(), 2u);
  EXPECT_EQ(q, parse_polynomial("10*x2"));
}

TEST(Polynomial, IntegrateBoxExact) {
  const auto u = parse_polynomial("x1*x2^2");
  const std::vector<interval> box{{0, 1}, {rational(-1), rational(2)}};
  EXPECT_EQ(integrate_box(u, box), rational(1, 2) * rational(3));
  const std::vector<interval> bad{{1, 0}, {0, 1}};
  EXPECT_THROW(integrate_box(u, bad), domain_error);
}

TEST(Polynomial, IntegrateBoxAgainstMonteCarlo) {
  const auto p = parse_polynomial("x1^4*x2 - 3*x1*x2^3 + 2*x2^2 + 1/5");
  const std::vector<interval> box{{rational(-1, 2), rational(3, 2)}, {rational(1, 4), 2}};
  const double exact = to_double(integrate_box(p, box));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-0.5, 1.5), uy(0.25, 2.0);
  const compiled_polynomial f(p);
  const int n = 400000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::array<double, 2> pt{ux(rng), uy(rng)};
    const double v = f(pt);
    sum += v;
    sum2 += v * v;
  }
  const double vol = 2.0 * 1.75;
  const double mean = sum / n, sd = std::sqrt(sum2 / n - mean * mean);
  EXPECT_NEAR(vol * mean, exact, 5.0 * vol * sd / std::sqrt(double(n)));
}

TEST(Polynomial, GradedLexOrder) {
  const auto p = parse_polynomial("x2 + x1^2 + x1*x2 + 1 + x2^2 + x1");
  std::vector<multi_index> order;
  for (const auto& [a, c] : p.terms()) order.push_back(a);
  const std::vector<multi_index> want{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
  EXPECT_EQ(order, want);
}

TEST(SymbolPolynomial, Validation) {
  EXPECT_THROW(symbol_polynomial(parse_polynomial("x1^3 + x2^3")), domain_error);
  EXPECT_THROW(symbol_polynomial(parse_polynomial("x1^4 + x2^2")), domain_error);
  EXPECT_THROW(symbol_polynomial(polynomial(2)), domain_error);
  EXPECT_THROW(symbol_polynomial(k(2, 3)), domain_error);
  const symbol_polynomial s = parse("x1^6 + x2^6");
  EXPECT_EQ(s.half_order(), 3);
  EXPECT_EQ(s.order(), 6);
  EXPECT_DOUBLE_EQ(s(1.0, 1.0), 2.0);
}

TEST(SymbolPolynomial, Homogeneity) {
  const auto s = support::example1(rational(-1, 2));
  for (double t : {0.3, 1.7, 4.0}) {
    const double a = s(0.4, -1.3), b = s(0.4 * t, -1.3 * t);
    EXPECT_NEAR(b, std::pow(t, 4) * a, 1e-12 * std::abs(b));
  }
}
