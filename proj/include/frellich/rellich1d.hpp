#pragma once

// One-dimensional Rellich machinery for the minimizer family
// g_ε(t) = t^s, s = (2m-1)/2 + ε.
//
// Closed form: g^{(m)}(t) = c·t^{s-m} with c = ∏_{j=0}^{m-1}(s-j), so both
// (g^{(m)})^2 and g^2/t^{2m} are multiples of t^{2ε-1}; on (0,1) they
// integrate to c^2/(2ε) and 1/(2ε), and the quotient is
//   Q(m, ε) = ∏_{j=0}^{m-1} ((2m-1)/2 + ε - j)^2  →  A(m)  as ε → 0+.

#include <cmath>
#include <vector>

#include "frellich/constants.hpp"
#include "frellich/errors.hpp"
#include "frellich/finsler.hpp"
#include "frellich/quadrature.hpp"

namespace frellich {

struct minimizer_family {
  int m;
  double eps;

  minimizer_family(int m_, double eps_) : m(m_), eps(eps_) {
    if (m < 1) throw usage_error("minimizer_family: m must be >= 1");
    if (!(eps > 0.0)) throw domain_error("minimizer_family: eps must be positive");
  }
  double exponent() const noexcept { return (2.0 * m - 1.0) / 2.0 + eps; }
};

inline double quotient_closed_form(int m, double eps) {
  const minimizer_family g(m, eps);
  const double s = g.exponent();
  double q = 1.0;
  for (int j = 0; j < m; ++j) q *= (s - j) * (s - j);
  return q;
}

namespace detail {

/// c·t^p
struct power_term {
  double coef;
  double exponent;
  power_term derivative() const { return {coef * exponent, exponent - 1.0}; }
  double operator()(double t) const { return coef * std::pow(t, exponent); }
};

}  // namespace detail

/// Ratio ∫_0^1 (g^{(m)})^2 / ∫_0^1 g^2/t^{2m}: numerical Gauss–Legendre on
/// dyadic panels of (δ, 1) plus the analytic tails over (0, δ).
inline double quotient_numeric(int m, double eps, double delta = 1e-3) {
  const minimizer_family fam(m, eps);
  if (!(delta > 0.0 && delta < 1.0)) throw usage_error("quotient_numeric: need 0 < delta < 1");
  detail::power_term g{1.0, fam.exponent()};
  detail::power_term dg = g;
  for (int k = 0; k < m; ++k) dg = dg.derivative();

  auto energy = [&](double t) { return dg(t) * dg(t); };
  auto weighted = [&](double t) { return g(t) * g(t) / std::pow(t, 2 * m); };

  const auto& rule = gauss_legendre_rule<32>::get();
  double num = 0.0, den = 0.0;
  for (double a = delta; a < 1.0;) {
    const double b = std::min(1.0, 2.0 * a);
    num += rule.integrate(energy, a, b);
    den += rule.integrate(weighted, a, b);
    a = b;
  }
  // Tails: both integrands are pure powers c·t^p with p = 2(s-m) > -1.
  const double p_num = 2.0 * dg.exponent, p_den = 2.0 * g.exponent - 2.0 * m;
  if (!(p_num > -1.0) || !(p_den > -1.0)) throw convergence_error("quotient_numeric: divergent tail");
  num += dg.coef * dg.coef * std::pow(delta, p_num + 1.0) / (p_num + 1.0);
  den += g.coef * g.coef * std::pow(delta, p_den + 1.0) / (p_den + 1.0);
  if (!std::isfinite(num / den)) throw convergence_error("quotient_numeric: quadrature failure");
  return num / den;
}

/// (F(ν)/F**(ν))^{2m}·A(m): the limit of the Rellich quotient of the
/// localized minimizers on the half-space with inward normal ν.
inline double sharp_ratio_halfspace(const symbol_polynomial& P, const norm_table& table,
                                    std::span<const double> nu) {
  if (!(table.symbol() == P)) throw usage_error("sharp_ratio_halfspace: table was built for a different symbol");
  if (std::abs(std::hypot(nu[0], nu[1]) - 1.0) > 1e-12)
    throw usage_error("sharp_ratio_halfspace: nu must be a unit vector");
  const double ratio = finsler_F(P, nu) / table.fstarstar(nu);
  return std::pow(ratio, P.order()) * to_double(rellich_constant(P.half_order()));
}

}  // namespace frellich
