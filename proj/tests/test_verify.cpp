#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace frellich;
using frellich::support::table_for;

namespace {

/// Σ_α a_α ∫ D^β u D^γ u with α = β + γ, |β| = |γ| = m: the quadratic form
/// after m integrations by parts.
rational dirichlet_form(const symbol_polynomial& P, const test_function& u) {
  rational sum = 0;
  const int m = P.half_order();
  for (const auto& [alpha, a] : P.poly().terms()) {
    multi_index beta(alpha.size()), gamma = alpha;
    int left = m;
    for (std::size_t i = 0; i < alpha.size() && left > 0; ++i) {
      const int take = std::min(alpha[i], left);
      beta[i] = take;
      gamma[i] -= take;
      left -= take;
    }
    sum += a * integrate_box(differentiate(u.poly(), beta) * differentiate(u.poly(), gamma), u.box());
  }
  return sum;
}

}  // namespace

TEST(TestFunction, VanishingOrderIsChecked) {
  const auto u = test_function::unit_square_bump(2);
  EXPECT_EQ(u.checked_vanishing_order(), 2);
  EXPECT_EQ(test_function::unit_square_bump(3).checked_vanishing_order(), 3);
  EXPECT_THROW(test_function({{0, 0}, {0, 1}}, 2), domain_error);
  EXPECT_THROW(test_function({{0, 1}}, 0), usage_error);
  const std::vector<double> x{0.5, 0.25};
  EXPECT_NEAR(u(x), std::pow(0.25 * 0.1875, 2), 1e-16);
  EXPECT_NEAR(u(x), evaluate(u.poly(), x), 1e-16);
}

TEST(Energy, OneDimensionalSanity) {
  const test_function u({{0, 1}}, 1);
  EXPECT_EQ(energy(parse("x1^2"), u), rational(1, 3));
}

TEST(Energy, AgreesWithDirichletForm) {
  const auto u = test_function::unit_square_bump(2);
  for (const auto& P : {support::bilaplacian(), support::example1(rational(-1, 2)),
                        parse("3*x1^4 + x1^3*x2 + 2*x1^2*x2^2 + x2^4")}) {
    const rational e = energy(P, u);
    EXPECT_EQ(e, dirichlet_form(P, u)) << to_string(P);
    EXPECT_GT(e, 0);
  }
  const test_function w({{rational(-1, 3), 1}, {0, rational(1, 2)}}, 3, parse_polynomial("1 + x1 - x2^2"));
  const auto P6 = support::example2(rational(1, 2));
  EXPECT_EQ(energy(P6, w), dirichlet_form(P6, w));
}

TEST(Energy, RejectsInsufficientVanishing) {
  const auto u = test_function::unit_square_bump(1);
  EXPECT_THROW(energy(support::bilaplacian(), u), domain_error);
}

TEST(WeightedMass, IsotropicFinslerEqualsEuclidean) {
  const auto P = support::bilaplacian();
  const auto u = test_function::unit_square_bump(2);
  const domain sq = convex_polytope::unit_square();
  const auto f = weighted_mass(P, table_for(P), sq, u, 1e-9);
  const auto e = weighted_mass_euclidean(2, sq, u, 1e-9);
  EXPECT_NEAR(f.value, e.value, 1e-9 * e.value);
}

TEST(WeightedMass, HalvingToleranceStaysWithinBound) {
  const auto P = support::example1(rational(2));
  const auto u = test_function::unit_square_bump(2);
  const domain sq = convex_polytope::unit_square();
  const auto a = weighted_mass(P, table_for(P), sq, u, 1e-6);
  const auto b = weighted_mass(P, table_for(P), sq, u, 5e-7);
  EXPECT_LE(std::abs(a.value - b.value), a.error + b.error + 1e-6 * a.value);
  EXPECT_LT(a.error, 1e-6 * a.value);
}

TEST(WeightedMass, BoxMustLieInDomain) {
  const auto P = support::bilaplacian();
  const test_function u({{rational(-1, 2), 1}, {0, 1}}, 2);
  EXPECT_THROW(weighted_mass(P, table_for(P), domain{half_space({1.0, 0.0})}, u), domain_error);
}

TEST(WeightedMass, DominatedByScaledEuclideanMass) {
  const auto P = support::example1(rational(5));
  const auto& t = table_for(P);
  const auto sq = convex_polytope::unit_square();
  const auto u = test_function::unit_square_bump(2);
  const finsler_distance_field d(t, sq);
  double top = 0;
  for (double s : d.face_scales()) top = std::max(top, std::pow(s, 4));
  const double fin = weighted_mass(P, t, domain{sq}, u).value;
  const double euc = weighted_mass_euclidean(2, domain{sq}, u).value;
  EXPECT_LE(fin, euc * top * (1 + 1e-6));
}

TEST(VerifyHalfspace, IsotropicAndH0) {
  const auto u = test_function::unit_square_bump(2);
  const auto B = support::bilaplacian();
  const auto r = verify_halfspace(B, table_for(B), half_space({0.0, 1.0}), u);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.margin, 0);
  EXPECT_DOUBLE_EQ(r.bound, 9.0 / 16.0);
  EXPECT_NEAR(r.sharp_ratio, 9.0 / 16.0, 1e-10);
  const auto H0 = support::example1(rational(0));
  const auto r0 = verify_halfspace(H0, table_for(H0), half_space({1.0, 0.0}), u);
  EXPECT_TRUE(r0.pass);
  EXPECT_LT(r0.mass_error, 1e-6 * r0.weighted_mass);
}

TEST(VerifyHalfspace, ScaleAndTranslationInvariance) {
  const auto P = support::example1(rational(-1, 2));
  const auto& t = table_for(P);
  const half_space h({0.0, 1.0});
  const auto u = test_function::unit_square_bump(2);
  const auto r = verify_halfspace(P, t, h, u, 1e-8);
  const auto r10 = verify_halfspace(P, t, h, u.scaled(10), 1e-8);
  EXPECT_EQ(r10.energy, r.energy * 100);
  EXPECT_NEAR(r10.ratio, r.ratio, 1e-7 * r.ratio);
  const std::vector<rational> shift{rational(3, 2), rational(1, 4)};
  const auto moved = verify_halfspace(P, t, h, u.translated(shift));
  EXPECT_EQ(moved.pass, r.pass);
  EXPECT_EQ(moved.energy, r.energy);
  EXPECT_NE(moved.weighted_mass, r.weighted_mass);
}

TEST(VerifyConvex, BoundOrdering) {
  const auto u = test_function::unit_square_bump(2);
  const auto sq = convex_polytope::unit_square();
  for (const rational& b : {rational(0), rational(5)}) {
    const auto P = support::example1(b);
    const auto r = verify_convex(P, table_for(P), sq, u);
    EXPECT_TRUE(r.pass) << to_string(b);
    EXPECT_TRUE(r.beats_comparison);
    EXPECT_GE(r.ratio, r.bound);
    EXPECT_GE(r.bound, r.comparison_bound - 1e-9);
  }
  const auto B = support::bilaplacian();
  const auto rb = verify_convex(B, table_for(B), sq, u);
  EXPECT_NEAR(rb.bound, 9.0 / 16.0, 1e-9);
  EXPECT_NEAR(rb.comparison_bound, 9.0 / 16.0, 1e-9);
}

TEST(Duality, IsotropicAndSampled) {
  const finsler_norm B(support::bilaplacian());
  EXPECT_GE(symbol_duality_check(B, 2000).worst_slack, -1e-12);
  const auto P = support::example1(rational(-1, 2));
  const auto r = symbol_duality_check(P, table_for(P), 5000);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.samples, 5000u);
  // equality at ξ = ω = e1 for H0
  const finsler_norm H0(support::example1(rational(0)));
  const std::vector<double> e1{1.0, 0.0};
  EXPECT_NEAR(H0.symbol()(e1) * std::pow(H0.dual(e1), 4), 1.0, 1e-12);
}

TEST(Duality, SeedDeterminesResult) {
  const finsler_norm n(support::example1(rational(3)));
  const auto a = symbol_duality_check(n, 500, 9), b = symbol_duality_check(n, 500, 9);
  EXPECT_EQ(a.worst_slack, b.worst_slack);
  EXPECT_EQ(a.worst_xi, b.worst_xi);
}

TEST(SandwichBounds, IsotropicAndEqualityCases) {
  const auto r1 = sandwich_bounds_check(family::example1, 1.0, table_for(support::example1(rational(1))));
  EXPECT_TRUE(r1.pass);
  EXPECT_NEAR(r1.max_value, 1.0, 1e-12);
  const auto r0 = sandwich_bounds_check(family::example1, 0.0, table_for(support::example1(rational(0))));
  EXPECT_TRUE(r0.pass);
  EXPECT_NEAR(r0.max_value, 2.0, 1e-9);  // ξ = (1,1)/√2
  const auto r3 = sandwich_bounds_check(family::example2, 3.0, table_for(support::example2(rational(3))));
  EXPECT_TRUE(r3.pass);
  EXPECT_THROW(sandwich_bounds_check(family::example1, -1.0, table_for(support::example1(rational(0)))), domain_error);
}

TEST(SandwichBounds, SixthOrderUpperBoundFailsBelowThree) {
  // F*⁶ on the diagonal is 4/(β+1) for the sixth-order family, which
  // exceeds max{1, 2/(β+1)} whenever β < 3. The check reports it.
  const auto P = support::example2(rational(0));
  const auto r = sandwich_bounds_check(family::example2, 0.0, table_for(P));
  EXPECT_TRUE(r.lower_ok);
  EXPECT_FALSE(r.upper_ok);
  EXPECT_NEAR(r.max_value, 4.0, 1e-9);
}
