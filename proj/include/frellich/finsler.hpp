#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "frellich/errors.hpp"
#include "frellich/polynomial.hpp"
#include "frellich/sphere.hpp"

namespace frellich {

/// F_H(ξ) = H(ξ)^{1/(2m)}.
inline double finsler_F(const symbol_polynomial& P, std::span<const double> xi) {
  if (xi.size() != P.dimension()) throw usage_error("finsler_F: dimension mismatch");
  const double h = P(xi);
  if (h < 0.0) throw ellipticity_error("finsler_F: H(xi) < 0, symbol is not elliptic");
  return std::pow(h, 1.0 / P.order());
}

inline constexpr double default_angle_tol = 1e-11;

/// Evaluator for F, its dual F*(ω) = max_{|ξ|=1} ω·ξ / F(ξ) and related
/// searches. For n = 2 the maximand is sampled on a uniform ξ-grid
/// (precomputed cos φ_j / F(e_j), sin φ_j / F(e_j)) and every competitive
/// peak is polished by golden section. For n >= 3 the search is sampled
/// and not certified.
class finsler_norm {
 public:
  explicit finsler_norm(symbol_polynomial P, std::size_t search_grid = default_sphere_grid,
                        double angle_tol = default_angle_tol)
      : P_(std::move(P)), grid_(search_grid), angle_tol_(angle_tol), inv_order_(1.0 / P_.order()) {
    if (P_.dimension() == 2) {
      if (grid_ < 16) throw usage_error("finsler_norm: search grid must have >= 16 points");
      a_.resize(grid_);
      b_.resize(grid_);
      for (std::size_t j = 0; j < grid_; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(grid_);
        const double f = F_angle(t);
        a_[j] = std::cos(t) / f;
        b_[j] = std::sin(t) / f;
      }
    }
    require_elliptic(P_);
  }

  const symbol_polynomial& symbol() const noexcept { return P_; }
  std::size_t dimension() const noexcept { return P_.dimension(); }
  int half_order() const noexcept { return P_.half_order(); }
  std::size_t search_grid() const noexcept { return grid_; }
  bool certified() const noexcept { return P_.dimension() <= 2; }

  double F(std::span<const double> xi) const { return finsler_F(P_, xi); }

  double F_angle(double t) const {
    const double h = P_(std::cos(t), std::sin(t));
    if (!(h > 0.0)) throw ellipticity_error("finsler_norm: H <= 0 on the unit circle, symbol is not elliptic");
    return std::pow(h, inv_order_);
  }

  /// F*(e(θ)) together with the angle φ of the maximizing ξ.
  extremum dual_with_argmax(double theta) const {
    require_planar();
    const double c = std::cos(theta), s = std::sin(theta);
    thread_local std::vector<double> samples;
    samples.resize(grid_);
    for (std::size_t j = 0; j < grid_; ++j) samples[j] = c * a_[j] + s * b_[j];
    auto f = [&](double phi) { return (c * std::cos(phi) + s * std::sin(phi)) / F_angle(phi); };
    return refine_periodic_max(f, samples, angle_tol_);
  }

  double dual_angle(double theta) const { return dual_with_argmax(theta).value; }

  double dual(std::span<const double> omega) const {
    if (omega.size() != P_.dimension()) throw usage_error("dual_norm: dimension mismatch");
    double r2 = 0.0;
    for (double v : omega) r2 += v * v;
    if (r2 == 0.0) return 0.0;
    const double r = std::sqrt(r2);
    if (P_.dimension() == 1) return r / std::pow(P_(std::array<double, 1>{1.0}), inv_order_);
    if (P_.dimension() == 2) return r * dual_angle(std::atan2(omega[1], omega[0]));
    auto f = [&](std::span<const double> xi) {
      double d = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i) d += omega[i] * xi[i];
      return d / F(xi);
    };
    return maximize_on_sphere_sampled(f, P_.dimension()).value;
  }

 private:
  void require_planar() const {
    if (P_.dimension() != 2) throw usage_error("finsler_norm: angular API requires n = 2");
  }

  symbol_polynomial P_;
  std::size_t grid_;
  double angle_tol_;
  double inv_order_;
  std::vector<double> a_, b_;
};

/// F*_H(ω) to relative tolerance `tol` (n = 2 certified).
inline double dual_norm(const symbol_polynomial& P, std::span<const double> omega,
                        double tol = default_angle_tol) {
  return finsler_norm(P, default_sphere_grid, tol).dual(omega);
}

/// Uniform discretization of S^1 used by norm tables.
struct direction_grid {
  std::size_t dimension = 2;
  std::size_t points = 4096;          ///< starting N, power of two, >= 16
  std::size_t max_points = 1u << 20;  ///< doubling cap
  double tol = 1e-8;                  ///< agreement required between successive tables

  void validate() const {
    if (dimension != 2) throw usage_error("direction_grid: norm tables are planar (n = 2) only");
    if (points < 16 || (points & (points - 1)) != 0)
      throw usage_error("direction_grid: point count must be a power of two >= 16");
    if (max_points < points) throw usage_error("direction_grid: cap below starting size");
    if (!(tol > 0.0)) throw usage_error("direction_grid: tolerance must be positive");
  }
};

/// F* tabulated at the angles 2πk/N, plus the evaluator that produced it
/// (used to polish searches between table angles).
class norm_table {
 public:
  norm_table(std::shared_ptr<const finsler_norm> norm, direction_grid grid, std::vector<double> values,
             double achieved_tol, int doublings)
      : norm_(std::move(norm)), grid_(grid), values_(std::move(values)),
        achieved_tol_(achieved_tol), doublings_(doublings) {
    ca_.resize(values_.size());
    sa_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      ca_[i] = std::cos(angle(i)) / values_[i];
      sa_[i] = std::sin(angle(i)) / values_[i];
    }
  }

  const finsler_norm& norm() const noexcept { return *norm_; }
  const symbol_polynomial& symbol() const noexcept { return norm_->symbol(); }
  const direction_grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  double angle(std::size_t i) const {
    return two_pi * static_cast<double>(i) / static_cast<double>(values_.size());
  }
  double achieved_tol() const noexcept { return achieved_tol_; }
  int doublings() const noexcept { return doublings_; }

  /// F* at an arbitrary vector (1-homogeneous extension).
  double fstar(std::span<const double> omega) const { return norm_->dual(omega); }

  /// max over ω of (ξ̂·ω)/F*(ω) with ξ̂ = e(ψ): the table is scanned, the
  /// best peaks polished with exact F* evaluations. Returns the
  /// maximizing ω-angle.
  extremum biconjugate_angle(double psi) const {
    const double c = std::cos(psi), s = std::sin(psi);
    const std::size_t n = values_.size();
    thread_local std::vector<double> samples;
    samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = c * ca_[i] + s * sa_[i];
    auto f = [&](double t) { return (c * std::cos(t) + s * std::sin(t)) / norm_->dual_angle(t); };
    return refine_periodic_max(f, samples, default_angle_tol);
  }

  /// Table-only estimate of F**(e(ψ)) (no polishing); a lower bound
  /// accurate to O(h^2) on smooth stretches.
  double fstarstar_scan(double psi) const {
    const double c = std::cos(psi), s = std::sin(psi);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values_.size(); ++i) best = std::max(best, c * ca_[i] + s * sa_[i]);
    return best;
  }

  /// F**(ξ).
  double fstarstar(std::span<const double> xi) const {
    if (xi.size() != 2) throw usage_error("biconjugate: dimension mismatch");
    const double r = std::hypot(xi[0], xi[1]);
    if (r == 0.0) return 0.0;
    return r * biconjugate_angle(std::atan2(xi[1], xi[0])).value;
  }

 private:
  std::shared_ptr<const finsler_norm> norm_;
  direction_grid grid_;
  std::vector<double> values_;
  double achieved_tol_;
  int doublings_;
  std::vector<double> ca_, sa_;
};

namespace detail {

// F*(-ω) = F*(ω) because symbols have even degree; n is even.
inline std::vector<double> tabulate_dual(const finsler_norm& norm, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    v[i] = norm.dual_angle(two_pi * static_cast<double>(i) / static_cast<double>(n));
    v[i + n / 2] = v[i];
  }
  return v;
}

}  // namespace detail

/// Tabulates F* on the grid, doubling N (table and ξ-search resolution
/// together) until two successive tables agree on their shared angles to
/// grid.tol. The finer table is returned.
inline norm_table build_norm_table(const symbol_polynomial& P, direction_grid grid = {}) {
  grid.validate();
  if (P.dimension() != 2) throw usage_error("build_norm_table: symbol must be planar (n = 2)");
  std::size_t n = grid.points;
  auto coarse_norm = std::make_shared<const finsler_norm>(P, std::max(n, default_sphere_grid));
  std::vector<double> coarse = detail::tabulate_dual(*coarse_norm, n);
  int doublings = 0;
  while (2 * n <= grid.max_points) {
    auto fine_norm = std::make_shared<const finsler_norm>(P, std::max(2 * n, default_sphere_grid));
    std::vector<double> fine = detail::tabulate_dual(*fine_norm, 2 * n);
    ++doublings;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(fine[2 * i] - coarse[i]) / fine[2 * i]);
    if (diff <= grid.tol) {
      direction_grid g = grid;
      g.points = 2 * n;
      return norm_table(std::move(fine_norm), g, std::move(fine), diff, doublings);
    }
    n *= 2;
    coarse = std::move(fine);
    coarse_norm = std::move(fine_norm);
  }
  throw convergence_error("build_norm_table: successive tables never agreed within the doubling cap");
}

/// F**(ξ) = sup_ω ξ·ω / F*(ω), computed from a table built for P.
inline double biconjugate(const symbol_polynomial& P, std::span<const double> xi,
                          const norm_table& table) {
  if (!(table.symbol() == P)) throw usage_error("biconjugate: table was built for a different symbol");
  return table.fstarstar(xi);
}

}  // namespace frellich
