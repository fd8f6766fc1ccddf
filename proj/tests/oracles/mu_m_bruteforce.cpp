// Standalone brute force for mu and M of H(xi) = xi1^4 + xi2^4.
// Nothing from the library is used. F = l4 norm is convex, so F** = F and
// F*(w) = (|w1|^(4/3) + |w2|^(4/3))^(3/4) in closed form. For each xi on an
// N-point circle grid, G(xi) = (1/2pi) * sum over an N-point w grid of
// (xi.w)^4 / F*(w)^4 (trapezoid rule); mu and M are the grid min and max of
// G/H with no refinement.
//
// usage: mu_m_bruteforce [log2 N] > fixtures/h0_mu_M.json

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

int main(int argc, char** argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 16;
  const std::size_t n = std::size_t{1} << k;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);

  std::vector<double> cw(n), sw(n), inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = h * static_cast<double>(j);
    cw[j] = std::cos(t);
    sw[j] = std::sin(t);
    const double fs = std::pow(std::pow(std::abs(cw[j]), 4.0 / 3.0) + std::pow(std::abs(sw[j]), 4.0 / 3.0), 0.75);
    inv[j] = 1.0 / (fs * fs * fs * fs);
  }

  double mu = 1e300, M = -1e300, mu_at = 0, M_at = 0;
  // G/H is invariant under xi -> -xi and the swap xi1 <-> xi2, so a quarter turn suffices.
  for (std::size_t i = 0; i <= n / 4; ++i) {
    const double t = h * static_cast<double>(i);
    const double c = std::cos(t), s = std::sin(t);
    long double g = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = c * cw[j] + s * sw[j];
      const double d2 = d * d;
      g += static_cast<long double>(d2 * d2 * inv[j]);
    }
    const double G = static_cast<double>(g / static_cast<long double>(n));
    const double H = c * c * c * c + s * s * s * s;
    const double r = G / H;
    if (r < mu) mu = r, mu_at = t;
    if (r > M) M = r, M_at = t;
  }

  std::printf("{\n");
  std::printf("  \"provenance\": \"tests/oracles/mu_m_bruteforce.cpp, N = 2^%d, closed-form l_{4/3} dual norm, "
              "trapezoid moment, grid min/max without refinement\",\n", k);
  std::printf("  \"symbol\": \"x1^4 + x2^4\",\n");
  std::printf("  \"grid_points\": %zu,\n", n);
  std::printf("  \"mu\": %.17g,\n", mu);
  std::printf("  \"M\": %.17g,\n", M);
  std::printf("  \"s\": %.17g,\n", mu / M);
  std::printf("  \"mu_angle\": %.17g,\n", mu_at);
  std::printf("  \"M_angle\": %.17g\n", M_at);
  std::printf("}\n");
}
