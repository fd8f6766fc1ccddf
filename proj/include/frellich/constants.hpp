#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frellich/errors.hpp"
#include "frellich/finsler.hpp"
#include "frellich/parser.hpp"
#include "frellich/polynomial.hpp"
#include "frellich/quadrature.hpp"
#include "frellich/rational.hpp"
#include "frellich/sphere.hpp"

namespace frellich {

/// A(m) = ∏_{j=1}^{m} (2j-1)^2 / 4^m, the sharp one-dimensional Rellich constant.
inline rational rellich_constant(int m) {
  if (m < 0) throw usage_error("rellich_constant: m must be non-negative");
  rational a = 1;
  for (int j = 1; j <= m; ++j) a *= rational((2 * j - 1) * (2 * j - 1), 4);
  return a;
}

/// Moments μ_k = ∫_{S^1} ω1^k ω2^{2m-k} / F*(ω)^{2m} dσ(ω), k = 0..2m, with
/// dσ the normalized measure. Because (ξ·ω)^{2m} expands binomially, the
/// angular moment G(ξ) is the degree-2m form Σ_k C(2m,k) ξ1^k ξ2^{2m-k} μ_k.
class angular_moments {
 public:
  angular_moments(int m, std::vector<double> mu, double error)
      : m_(m), mu_(std::move(mu)), error_(error) {
    binom_.resize(mu_.size());
    double b = 1.0;
    for (int k = 0; k <= 2 * m_; ++k) {
      binom_[static_cast<std::size_t>(k)] = b;
      b = b * (2 * m_ - k) / (k + 1);
    }
  }

  int half_order() const noexcept { return m_; }
  std::span<const double> moments() const noexcept { return mu_; }
  double error() const noexcept { return error_; }

  /// G(ξ) = ∫ (ξ·ω)^{2m} / F*(ω)^{2m} dσ(ω).
  double operator()(double x1, double x2) const {
    double sum = 0.0, p1 = 1.0;
    for (int k = 0; k <= 2 * m_; ++k) {
      sum += binom_[static_cast<std::size_t>(k)] * p1 * std::pow(x2, 2 * m_ - k) *
             mu_[static_cast<std::size_t>(k)];
      p1 *= x1;
    }
    return sum;
  }

 private:
  int m_;
  std::vector<double> mu_;
  std::vector<double> binom_;
  double error_;
};

/// Computes the moments by adaptive Gauss–Legendre over [0, π] (the
/// integrand is π-periodic), with exact F* evaluations from the table's
/// evaluator. Adaptive panels resolve the kinks F* has when F is not convex.
inline angular_moments compute_angular_moments(const norm_table& table, double rel_tol = 1e-12) {
  const finsler_norm& norm = table.norm();
  const int m = norm.half_order();
  const std::size_t K = static_cast<std::size_t>(2 * m + 1);
  auto integrand = [&](double t, std::span<double> out) {
    const double c = std::cos(t), s = std::sin(t);
    const double w = std::pow(norm.dual_angle(t), -2.0 * m);
    double pc = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      out[k] = pc * std::pow(s, static_cast<double>(K - 1 - k)) * w;
      pc *= c;
    }
  };
  auto [mu, err] = adaptive_integrate(integrand, K, 0.0, std::numbers::pi, rel_tol);
  for (auto& v : mu) v /= std::numbers::pi;
  return angular_moments(m, std::move(mu), err / std::numbers::pi);
}

/// G(ξ) for one vector.
inline double angular_moment(const symbol_polynomial& P, std::span<const double> xi,
                             const norm_table& table) {
  if (!(table.symbol() == P)) throw usage_error("angular_moment: table was built for a different symbol");
  if (xi.size() != 2) throw usage_error("angular_moment: planar symbols only");
  return compute_angular_moments(table)(xi[0], xi[1]);
}

/// Periodic trapezoidal rule on the table grid, doubling (with fresh F*
/// values at the midpoints) until successive values agree to rel_tol.
/// Spectrally accurate when F* is smooth; only O(h^2) across kinks.
inline double angular_moment_trapezoid(const norm_table& table, std::span<const double> xi,
                                       double rel_tol = 1e-10, std::size_t max_points = 1u << 18) {
  const finsler_norm& norm = table.norm();
  const int m = norm.half_order();
  auto term = [&](double t, double fstar) {
    return std::pow(xi[0] * std::cos(t) + xi[1] * std::sin(t), 2 * m) / std::pow(fstar, 2 * m);
  };
  std::size_t n = table.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += term(table.angle(i), table.value(i));
  double prev = sum / static_cast<double>(n);
  while (2 * n <= max_points) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      sum += term(t, norm.dual_angle(t));
    }
    n *= 2;
    const double cur = sum / static_cast<double>(n);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw convergence_error("angular_moment_trapezoid: no agreement within the doubling cap");
}

struct mu_M_result {
  double mu = 0.0;
  double M = 0.0;
  double mu_angle = 0.0;  ///< direction ψ attaining μ_H
  double M_angle = 0.0;   ///< direction ψ attaining M_H
};

/// μ_H = min_{|ξ|=1} G(ξ)/F**(ξ)^{2m},  M_H = max_{|ξ|=1} G(ξ)/H(ξ).
inline mu_M_result mu_M(const symbol_polynomial& P, const norm_table& table,
                        const angular_moments& G, double tol = 1e-10) {
  if (!(table.symbol() == P)) throw usage_error("mu_M: table was built for a different symbol");
  const int m = P.half_order();
  const std::size_t N = default_sphere_grid;

  auto ratio_M = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return G(c, s) / P(c, s);
  };
  const extremum M = maximize_on_circle(ratio_M, N, tol);

  // Grid pass with table-only F**, polish with exact F**.
  std::vector<double> samples(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double t = two_pi * static_cast<double>(i) / static_cast<double>(N);
    samples[i] = -G(std::cos(t), std::sin(t)) / std::pow(table.fstarstar_scan(t), 2 * m);
  }
  auto neg_ratio_mu = [&](double t) {
    return -G(std::cos(t), std::sin(t)) / std::pow(table.biconjugate_angle(t).value, 2 * m);
  };
  const extremum mu = refine_periodic_max(neg_ratio_mu, samples, tol);
  return {-mu.value, M.value, mu.angle, M.angle};
}

inline mu_M_result mu_M(const symbol_polynomial& P, const norm_table& table, double tol = 1e-10) {
  return mu_M(P, table, compute_angular_moments(table), tol);
}

/// c = λ/Λ, the ratio in the comparison bound A(m)·λ/Λ.
inline double comparison_constant(const symbol_polynomial& P) {
  const sphere_extrema e = min_max_on_sphere(P);
  if (!(e.lambda > 0.0)) throw ellipticity_error("comparison_constant: symbol is not elliptic");
  return e.lambda / e.Lambda;
}

/// A(m)·μ_H/M_H.
inline double finsler_constant(const symbol_polynomial& P, const norm_table& table) {
  const mu_M_result r = mu_M(P, table);
  return to_double(rellich_constant(P.half_order())) * r.mu / r.M;
}

struct constants_report {
  int m = 0;
  double lambda = 0.0;
  double Lambda = 0.0;
  double c = 0.0;  ///< λ/Λ
  double mu = 0.0;
  double M = 0.0;
  double s = 0.0;  ///< μ_H/M_H
  rational A;      ///< A(m)
  double finsler_bound = 0.0;    ///< A(m)·μ_H/M_H
  double comparison = 0.0;  ///< A(m)·λ/Λ
  double moment_error = 0.0;
  double table_tol = 0.0;
  std::size_t table_points = 0;
};

inline constants_report compute_constants(const symbol_polynomial& P, const norm_table& table,
                                          double tol = 1e-10) {
  constants_report r;
  r.m = P.half_order();
  const sphere_extrema e = min_max_on_sphere(P, tol);
  if (!(e.lambda > 0.0)) throw ellipticity_error("compute_constants: symbol is not elliptic");
  r.lambda = e.lambda;
  r.Lambda = e.Lambda;
  r.c = e.lambda / e.Lambda;
  const angular_moments G = compute_angular_moments(table);
  const mu_M_result mm = mu_M(P, table, G, tol);
  r.mu = mm.mu;
  r.M = mm.M;
  r.s = mm.mu / mm.M;
  r.A = rellich_constant(r.m);
  const double a = to_double(r.A);
  r.finsler_bound = a * r.s;
  r.comparison = a * r.c;
  r.moment_error = G.error();
  r.table_tol = table.achieved_tol();
  r.table_points = table.size();
  return r;
}

inline constants_report compute_constants(const symbol_polynomial& P, const direction_grid& grid = {},
                                          double tol = 1e-10) {
  require_elliptic(P);
  return compute_constants(P, build_norm_table(P, grid), tol);
}

// ---------------------------------------------------------------------------
// Example families

enum class family { example1, example2, custom };

/// H_β = ξ1^4 + 2β ξ1^2 ξ2^2 + ξ2^4.
inline constexpr const char* example1_template = "x1^4 + 2*b*x1^2*x2^2 + x2^4";
/// Ĥ_β = ξ1^6 + β ξ1^4 ξ2^2 + β ξ1^2 ξ2^4 + ξ2^6.
inline constexpr const char* example2_template = "x1^6 + b*x1^4*x2^2 + b*x1^2*x2^4 + x2^6";

inline std::optional<family> family_from_string(const std::string& name) {
  if (name == "example1") return family::example1;
  if (name == "example2") return family::example2;
  if (name == "custom") return family::custom;
  return std::nullopt;
}

inline std::string family_template(family f, const std::string& custom = {}) {
  switch (f) {
    case family::example1: return example1_template;
    case family::example2: return example2_template;
    case family::custom: return custom;
  }
  return custom;
}

/// Binds the family parameter (named `param`, default "b") to β exactly.
inline symbol_polynomial family_symbol(family f, const rational& beta, const std::string& custom = {},
                                       const std::string& param = "b", bindings extra = {}) {
  extra[param] = beta;
  return parse(family_template(f, custom), extra, 2);
}

/// Closed-form λ/Λ of the example1 and example2 families.
inline double example_comparison_closed_form(family f, double beta) {
  if (f == family::example1) return beta <= 1.0 ? (beta + 1.0) / 2.0 : 2.0 / (beta + 1.0);
  if (f == family::example2) return beta <= 3.0 ? (beta + 1.0) / 4.0 : 4.0 / (beta + 1.0);
  throw usage_error("example_comparison_closed_form: example families only");
}

enum class row_failure { none, parse, ellipticity, domain, convergence, usage };

struct sweep_row {
  double beta = 0.0;
  double lambda = 0.0;
  double Lambda = 0.0;
  double c = 0.0;
  double mu = 0.0;
  double M = 0.0;
  double s = 0.0;
  std::string error;  ///< empty on success
  row_failure failure = row_failure::none;
  bool ok() const noexcept { return error.empty(); }
};

/// β grid log-spaced in β+1 over [lo, hi]; optional collapse points are
/// merged in (sorted, duplicates dropped).
inline std::vector<double> log_beta_grid(std::size_t points, double lo = -0.99, double hi = 100.0,
                                         std::vector<double> include = {}) {
  if (points < 2) throw usage_error("log_beta_grid: need at least two points");
  if (!(lo > -1.0) || !(hi > lo)) throw usage_error("log_beta_grid: need -1 < lo < hi");
  std::vector<double> g(points);
  const double a = std::log(lo + 1.0), b = std::log(hi + 1.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    g[i] = std::exp(a + t * (b - a)) - 1.0;
  }
  g.front() = lo;
  g.back() = hi;
  g.insert(g.end(), include.begin(), include.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

inline sweep_row sweep_one(family f, double beta, const direction_grid& grid, double tol,
                           const std::string& custom = {}, const std::string& param = "b") {
  sweep_row row;
  row.beta = beta;
  try {
    if (f != family::custom && !(beta > -1.0)) throw domain_error("beta must exceed -1");
    const symbol_polynomial P = family_symbol(f, from_double(beta), custom, param);
    const constants_report r = compute_constants(P, grid, tol);
    row.lambda = r.lambda;
    row.Lambda = r.Lambda;
    row.c = r.c;
    row.mu = r.mu;
    row.M = r.M;
    row.s = r.s;
  } catch (const parse_error& e) {
    row.error = e.what();
    row.failure = row_failure::parse;
  } catch (const ellipticity_error& e) {
    row.error = e.what();
    row.failure = row_failure::ellipticity;
  } catch (const domain_error& e) {
    row.error = e.what();
    row.failure = row_failure::domain;
  } catch (const convergence_error& e) {
    row.error = e.what();
    row.failure = row_failure::convergence;
  } catch (const error& e) {
    row.error = e.what();
    row.failure = row_failure::usage;
  }
  return row;
}

/// One independent row per β, in input order. Row failures are recorded
/// on the row and do not abort the sweep.
inline std::vector<sweep_row> sweep_family(family f, std::span<const double> betas,
                                           const direction_grid& grid = {}, double tol = 1e-10,
                                           const std::string& custom = {},
                                           const std::string& param = "b") {
  std::vector<sweep_row> rows;
  rows.reserve(betas.size());
  for (double b : betas) rows.push_back(sweep_one(f, b, grid, tol, custom, param));
  return rows;
}

}  // namespace frellich
