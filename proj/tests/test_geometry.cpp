#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace frellich;
using frellich::support::table_for;

TEST(HalfSpace, Construction) {
  EXPECT_THROW(half_space({0.6, 0.6}), usage_error);
  EXPECT_THROW(half_space::from_direction({0.0, 0.0}), usage_error);
  const auto h = half_space::from_direction({3.0, 4.0});
  EXPECT_NEAR(h.normal()[0], 0.6, 1e-16);
}

TEST(HalfSpace, Distances) {
  const half_space h({0.0, 1.0});
  const std::vector<double> x{5.0, 2.0}, w{1.0, 1.0}, along{1.0, 0.0};
  EXPECT_DOUBLE_EQ(euclidean_distance(h, x), 2.0);
  EXPECT_DOUBLE_EQ(directional_distance(h, x, w), 2.0);
  EXPECT_TRUE(std::isinf(directional_distance(h, x, along)));
  const std::vector<double> out{0.0, -1.0}, on{0.0, 0.0};
  EXPECT_THROW(euclidean_distance(h, out), domain_error);
  EXPECT_THROW(directional_distance(h, on, w), domain_error);
}

TEST(Polytope, ValidationAndCenter) {
  const auto sq = convex_polytope::unit_square();
  EXPECT_NEAR(sq.inradius(), 0.5, 1e-12);
  EXPECT_NEAR(sq.interior_point()[0], 0.5, 1e-12);
  EXPECT_THROW(convex_polytope({}), usage_error);
  EXPECT_THROW(convex_polytope({{{2.0, 0.0}, 1.0}}), usage_error);
  // x ≤ 0 and x ≥ 1: empty
  EXPECT_THROW(convex_polytope::from_raw_faces({{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, -1.0}}), domain_error);
  const auto tri = convex_polytope::from_raw_faces({{{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}, {{1.0, 1.0}, 1.0}});
  EXPECT_NEAR(tri.inradius(), 1.0 / (2.0 + std::sqrt(2.0)), 1e-12);
}

TEST(Polytope, DirectionalDistanceIsMinOverBothDirections) {
  const auto sq = convex_polytope::unit_square();
  const std::vector<double> x{0.2, 0.5}, e1{1.0, 0.0}, diag{1.0, 1.0};
  EXPECT_NEAR(directional_distance(sq, x, e1), 0.2, 1e-15);
  EXPECT_NEAR(directional_distance(sq, x, diag), 0.2, 1e-15);
  EXPECT_NEAR(euclidean_distance(sq, x), 0.2, 1e-15);
  const std::vector<double> edge{0.0, 0.5};
  EXPECT_THROW(euclidean_distance(sq, edge), domain_error);
}

TEST(FinslerDistance, IsotropicEqualsEuclidean) {
  const auto P = support::bilaplacian();
  const auto& t = table_for(P);
  const domain sq = convex_polytope::unit_square();
  for (double a : {0.1, 0.37, 0.5}) {
    const std::vector<double> x{a, 1.0 - a / 2};
    EXPECT_NEAR(finsler_distance(P, t, sq, x), euclidean_distance(std::get<convex_polytope>(sq), x), 1e-10);
  }
}

TEST(FinslerDistance, HalfSpaceClosedForm) {
  // H = ξ1⁴ + ξ2⁴: F = ℓ4 is convex, F**(e1) = 1.
  const auto P = support::example1(rational(0));
  const auto& t = table_for(P);
  const domain h = half_space({1.0, 0.0});
  const std::vector<double> x{0.5, 0.0};
  EXPECT_NEAR(finsler_distance(P, t, h, x), 0.5, 1e-10);
  // diagonal normal: F**((1,1)/√2) = 2^{1/4}/√2
  const domain d = half_space::from_direction({1.0, 1.0});
  const std::vector<double> y{1.0, 1.0};
  EXPECT_NEAR(finsler_distance(P, t, d, y), std::sqrt(2.0) / (std::pow(2.0, 0.25) / std::sqrt(2.0)), 1e-9);
}

TEST(FinslerDistance, MinimizingDirectionRealizesDistance) {
  const auto P = support::example1(rational(-1, 2));
  const auto& t = table_for(P);
  for (const auto& nu : std::vector<std::vector<double>>{{0.0, 1.0}, {0.6, 0.8}, {1.0, 0.0}}) {
    const half_space h(nu);
    const auto theta = minimizing_direction(P, t, h);
    EXPECT_GT(dot(nu, theta), 0.0);
    const std::vector<double> x{0.3 + nu[0], 0.2 + nu[1]};
    const double dh = finsler_distance(P, t, domain{h}, x);
    EXPECT_NEAR(dh, t.fstar(theta) * directional_distance(h, x, theta), 1e-9);
    // and no other direction does better
    for (int k = 0; k < 64; ++k) {
      const double a = two_pi * k / 64;
      const std::vector<double> w{std::cos(a), std::sin(a)};
      if (std::abs(dot(nu, w)) < 1e-12) continue;
      EXPECT_GE(t.fstar(w) * directional_distance(h, x, w), dh * (1 - 1e-10));
    }
  }
}

TEST(FinslerDistance, AgreesWithBoundarySampling) {
  std::mt19937_64 rng(11);
  for (const auto& P : {support::example1(rational(0)), support::example1(rational(-1, 2)), support::example1(rational(6))}) {
    const auto& t = table_for(P);
    auto cheap = [&](double a, double b) { return support::fstar_interpolated(t, a, b); };
    auto exact = [&](double a, double b) { return t.fstar(std::vector<double>{a, b}); };
    for (int k = 0; k < 3; ++k) {
      const auto poly = support::random_polygon(rng);
      const auto x = support::random_interior_point(poly, rng);
      const double brute = support::boundary_sampling_distance(support::polygon_vertices(poly), x, cheap, exact, 20000);
      EXPECT_NEAR(finsler_distance(P, t, domain{poly}, x), brute, 1e-6) << to_string(P);
    }
  }
}

TEST(FinslerDistance, DominatedByScaledEuclidean) {
  const auto P = support::example1(rational(5));
  const auto& t = table_for(P);
  const auto sq = convex_polytope::unit_square();
  const finsler_distance_field d(t, sq);
  double lo = 1e300, hi = 0;
  for (double s : d.face_scales()) lo = std::min(lo, s), hi = std::max(hi, s);
  for (double a : {0.05, 0.3, 0.61}) {
    const std::vector<double> x{a, 0.5 * a + 0.2};
    EXPECT_LE(d(x), sq.slack(x) / lo + 1e-15);
    EXPECT_GE(d(x), sq.slack(x) / hi - 1e-15);
  }
}
