#include <gtest/gtest.h>

#include <numbers>

#include "test_support.hpp"

using namespace frellich;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2NMinus1) {
  const auto& r = gauss_legendre_rule<16>::get();
  double wsum = 0.0;
  for (double w : r.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-14);
  EXPECT_NEAR(r.integrate([](double t) { return std::pow(t, 30); }, 0.0, 1.0), 1.0 / 31.0, 1e-15);
  const auto& r5 = gauss_legendre_rule<5>::get();
  EXPECT_NEAR(r5.integrate([](double t) { return t * t * t * t; }, -1.0, 1.0), 0.4, 1e-15);
}

TEST(AdaptiveIntegrate, VectorValuedWithKink) {
  auto f = [](double t, std::span<double> out) {
    out[0] = std::abs(t - 0.3);
    out[1] = std::sqrt(std::abs(t - 0.7));
  };
  auto [v, err] = adaptive_integrate(f, 2, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(v[0], 0.5 * (0.09 + 0.49), 1e-12);
  EXPECT_NEAR(v[1], 2.0 / 3.0 * (std::pow(0.7, 1.5) + std::pow(0.3, 1.5)), 1e-11);
  EXPECT_LT(err, 1e-11);
}

TEST(AdaptiveCubature, SmoothAndBoundaryLayer) {
  const box_bounds box{{0.0, 0.0}, {1.0, 2.0}};
  const auto smooth = adaptive_cubature([](std::span<const double> x) { return std::exp(x[0] + x[1]); }, box, 1e-12);
  EXPECT_NEAR(smooth.value, (std::numbers::e - 1.0) * (std::exp(2.0) - 1.0), 1e-11);
  // x^{-1/2} singularity on a face.
  const auto sing = adaptive_cubature([](std::span<const double> x) { return 1.0 / std::sqrt(x[0]); },
                                      box_bounds{{0.0, 0.0}, {1.0, 1.0}}, 1e-8);
  EXPECT_NEAR(sing.value, 2.0, 1e-7);
  EXPECT_GT(sing.cells, 1u);
}

TEST(AdaptiveCubature, BudgetExceeded) {
  auto f = [](std::span<const double> x) { return 1.0 / (x[0] + 1e-300); };
  EXPECT_THROW(adaptive_cubature<8>(f, box_bounds{{0.0, 0.0}, {1.0, 1.0}}, 1e-10, 64), convergence_error);
}

TEST(AdaptiveCubature, Deterministic) {
  auto f = [](std::span<const double> x) { return std::pow(x[0] * (1 - x[0]) * x[1], 4) / std::pow(x[1] + 0.01, 3); };
  const box_bounds box{{0.0, 0.0}, {1.0, 1.0}};
  const auto a = adaptive_cubature(f, box, 1e-9), b = adaptive_cubature(f, box, 1e-9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.cells, b.cells);
}
