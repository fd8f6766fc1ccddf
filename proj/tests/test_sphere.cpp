#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace frellich;

TEST(Golden, FindsInteriorMaximum) {
  const auto e = golden_maximize([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 2.0, 1e-12);
  EXPECT_NEAR(e.angle, 0.3, 1e-9);
  EXPECT_NEAR(e.value, 0.0, 1e-15);
}

TEST(Circle, PeriodicMaximumWrapsAround) {
  // Peak at angle 2π - 1e-4: just left of the seam.
  const double peak = two_pi - 1e-4;
  const auto e = maximize_on_circle([&](double t) { return std::cos(t - peak); }, 64, 1e-12);
  EXPECT_NEAR(std::cos(e.angle - peak), 1.0, 1e-14);
  EXPECT_NEAR(e.value, 1.0, 1e-14);
}

TEST(Circle, NarrowPeakBetweenGridPoints) {
  // A peak far narrower than the grid spacing next to a broad one.
  auto f = [](double t) {
    const double d = std::remainder(t - 1.0001, two_pi);
    return 1.0 + 0.02 * std::exp(-d * d / 1e-6) + 0.5 * std::cos(t - 1.0);
  };
  const auto e = maximize_on_circle(f, 1024, 1e-13);
  EXPECT_NEAR(e.angle, 1.0001, 1e-4);
  EXPECT_GT(e.value, 1.5);
}

TEST(SphereExtrema, ExampleFamilyClosedForms) {
  // λ, Λ of ξ1⁴ + 2βξ1²ξ2² + ξ2⁴ are min/max of 1 and (1+β)/2.
  for (double b : {-0.9, -0.5, 0.0, 0.5, 2.0, 10.0}) {
    const auto e = min_max_on_sphere(support::example1(from_double(b)));
    EXPECT_NEAR(e.lambda, std::min(1.0, (1.0 + b) / 2.0), 1e-12) << b;
    EXPECT_NEAR(e.Lambda, std::max(1.0, (1.0 + b) / 2.0), 1e-12) << b;
    EXPECT_TRUE(e.certified);
  }
}

TEST(SphereExtrema, Ellipticity) {
  EXPECT_TRUE(is_elliptic(support::bilaplacian()));
  EXPECT_FALSE(is_elliptic(parse("x1^4 - 4*x1^2*x2^2 + x2^4")));
  EXPECT_FALSE(is_elliptic(parse("(x1^2 - x2^2)^2")));
  EXPECT_FALSE(is_elliptic(parse("x1^2", {}, 2)));
  EXPECT_TRUE(is_elliptic(parse("x1^2")));  // one variable
  EXPECT_THROW(require_elliptic(parse("-x1^2 - x2^2")), ellipticity_error);
}

TEST(SphereExtrema, SampledInThreeDimensions) {
  const auto e = min_max_on_sphere(parse("x1^4 + x2^4 + x3^4"));
  EXPECT_FALSE(e.certified);
  EXPECT_NEAR(e.Lambda, 1.0, 1e-8);
  EXPECT_NEAR(e.lambda, 1.0 / 3.0, 1e-8);
}
