#pragma once

// Numerical checks of the Finsler–Rellich inequalities
//   ∫ u·Hu ≥ κ ∫ u² / d_H^{2m}
// with polynomial bump test functions. A bump ∏_i (x_i-a_i)^m (b_i-x_i)^m·q
// vanishes to order m on every face of its box, so its zero extension lies
// in H^m_0 of any domain containing the box, and ∫u·Hu equals the energy
// form exactly (all boundary terms of the m integrations by parts vanish).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "frellich/constants.hpp"
#include "frellich/errors.hpp"
#include "frellich/finsler.hpp"
#include "frellich/geometry.hpp"
#include "frellich/polynomial.hpp"
#include "frellich/quadrature.hpp"
#include "frellich/rational.hpp"
#include "frellich/rellich1d.hpp"

namespace frellich {

/// u = ∏_i (x_i - a_i)^k (b_i - x_i)^k · q on the box ∏[a_i, b_i], zero outside.
class test_function {
 public:
  test_function(std::vector<interval> box, int vanishing_order, std::optional<polynomial> multiplier = {})
      : box_(std::move(box)), order_(vanishing_order) {
    const std::size_t n = box_.size();
    if (n == 0) throw usage_error("test_function: empty box");
    if (order_ < 1) throw usage_error("test_function: vanishing order must be >= 1");
    for (const auto& iv : box_)
      if (!(iv.lo < iv.hi)) throw domain_error("test_function: degenerate box");
    q_ = multiplier ? *multiplier : polynomial::constant(n, 1);
    if (q_.dimension() != n) throw usage_error("test_function: multiplier dimension mismatch");

    poly_ = q_;
    for (std::size_t i = 0; i < n; ++i) {
      const polynomial x = polynomial::variable(n, i);
      const polynomial left = x - polynomial::constant(n, box_[i].lo);
      const polynomial right = polynomial::constant(n, box_[i].hi) - x;
      poly_ = poly_ * (left * right).pow(static_cast<unsigned>(order_));
    }
    if (poly_.is_zero()) throw domain_error("test_function: identically zero");
    fast_q_ = compiled_polynomial(q_);
    for (const auto& iv : box_) {
      lo_.push_back(to_double(iv.lo));
      hi_.push_back(to_double(iv.hi));
    }
  }

  /// The canonical bump ∏ (x_i-a_i)^m (b_i-x_i)^m.
  static test_function bump(std::vector<interval> box, int m) { return test_function(std::move(box), m); }

  static test_function unit_square_bump(int m) { return bump({{0, 1}, {0, 1}}, m); }

  const std::vector<interval>& box() const noexcept { return box_; }
  box_bounds bounds() const { return {lo_, hi_}; }
  int vanishing_order() const noexcept { return order_; }
  const polynomial& poly() const noexcept { return poly_; }
  std::size_t dimension() const noexcept { return box_.size(); }

  /// u(x) from the factored form, accurate near the faces.
  double operator()(std::span<const double> x) const {
    double v = fast_q_(x);
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      const double f = (x[i] - lo_[i]) * (hi_[i] - x[i]);
      v *= std::pow(f, order_);
    }
    return v;
  }

  /// Order of vanishing on every face, checked symbolically: the smallest
  /// k with ∂_i^k u ≠ 0 on some face x_i = a_i or b_i.
  int checked_vanishing_order() const {
    int worst = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < box_.size(); ++i)
      for (const rational& face : {box_[i].lo, box_[i].hi}) {
        int k = 0;
        while (k <= poly_.degree() && substitute(differentiate(poly_, i, k), i, face).is_zero()) ++k;
        worst = std::min(worst, k);
      }
    return worst;
  }

  /// Copy multiplied by a rational constant.
  test_function scaled(const rational& c) const {
    return test_function(box_, order_, q_ * c);
  }

  /// Copy translated by a rational offset per axis.
  test_function translated(std::span<const rational> shift) const {
    if (shift.size() != box_.size()) throw usage_error("test_function: shift dimension mismatch");
    if (q_.degree() > 0) throw usage_error("test_function: translation supports constant multipliers only");
    auto b = box_;
    for (std::size_t i = 0; i < b.size(); ++i) {
      b[i].lo += shift[i];
      b[i].hi += shift[i];
    }
    return test_function(std::move(b), order_, q_);
  }

 private:
  std::vector<interval> box_;
  int order_;
  polynomial q_;
  polynomial poly_;
  compiled_polynomial fast_q_;
  std::vector<double> lo_, hi_;
};

/// ∫ u·Hu, exact.
inline rational energy(const symbol_polynomial& P, const test_function& u) {
  if (P.dimension() != u.dimension()) throw usage_error("energy: dimension mismatch");
  if (u.checked_vanishing_order() < P.half_order())
    throw domain_error("energy: test function does not vanish to order m on its box faces");
  return integrate_box(u.poly() * apply_operator(P, u.poly()), u.box());
}

struct weighted_mass_result {
  double value = 0.0;
  double error = 0.0;  ///< absolute error estimate
  std::size_t cells = 0;
};

inline constexpr double default_quadrature_tol = 1e-6;

namespace detail {

inline void require_box_in_closure(const convex_polytope& p, const test_function& u) {
  const auto b = u.bounds();
  const std::size_t n = b.dimension();
  std::vector<double> corner(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t d = 0; d < n; ++d) corner[d] = (mask >> d) & 1u ? b.hi[d] : b.lo[d];
    if (p.slack(corner) < -1e-12) throw domain_error("test function support box is not inside the domain");
  }
}

}  // namespace detail

/// ∫ u² / d_H^{2m} over the support box by adaptive tensor Gauss–Legendre.
inline weighted_mass_result weighted_mass(const symbol_polynomial& P, const norm_table& table,
                                          const domain& dom, const test_function& u,
                                          double tol = default_quadrature_tol) {
  if (!(table.symbol() == P)) throw usage_error("weighted_mass: table was built for a different symbol");
  if (u.dimension() != 2) throw usage_error("weighted_mass: planar test functions only");
  const finsler_distance_field dist(table, dom);
  detail::require_box_in_closure(dist.polytope(), u);
  const int two_m = P.order();
  auto integrand = [&](std::span<const double> x) {
    const double v = u(x);
    return v * v / std::pow(dist.unchecked(x), two_m);
  };
  const quadrature_result q = adaptive_cubature<32>(integrand, u.bounds(), tol);
  return {q.value, q.error, q.cells};
}

/// Same integral with the Euclidean distance d in place of d_H.
inline weighted_mass_result weighted_mass_euclidean(int m, const domain& dom, const test_function& u,
                                                    double tol = default_quadrature_tol) {
  const convex_polytope p = as_polytope(dom);
  detail::require_box_in_closure(p, u);
  auto integrand = [&](std::span<const double> x) {
    const double v = u(x);
    return v * v / std::pow(p.slack(x), 2 * m);
  };
  const quadrature_result q = adaptive_cubature<32>(integrand, u.bounds(), tol);
  return {q.value, q.error, q.cells};
}

struct quotient_report {
  std::string inequality;  ///< "halfspace" or "convex"
  rational energy;
  double energy_value = 0.0;
  double weighted_mass = 0.0;
  double mass_error = 0.0;
  double ratio = 0.0;
  double bound = 0.0;  ///< lower bound being tested
  double margin = 0.0;  ///< ratio - bound
  double tol = 0.0;
  bool pass = false;
  // context
  double sharp_ratio = 0.0;       ///< half-space: (F(ν)/F**(ν))^{2m} A(m)
  double comparison_bound = 0.0;  ///< convex: A(m) λ/Λ
  bool beats_comparison = false;  ///< convex: A(m) μ/M > A(m) λ/Λ
};

namespace detail {

inline quotient_report make_report(const symbol_polynomial& P, const norm_table& table, const domain& dom,
                                   const test_function& u, double bound, double tol) {
  quotient_report r;
  r.energy = energy(P, u);
  r.energy_value = to_double(r.energy);
  const weighted_mass_result w = weighted_mass(P, table, dom, u, tol);
  r.weighted_mass = w.value;
  r.mass_error = w.error;
  if (!(r.weighted_mass > 0.0)) throw domain_error("verify: weighted mass is not positive");
  r.ratio = r.energy_value / r.weighted_mass;
  r.bound = bound;
  r.margin = r.ratio - bound;
  r.tol = tol;
  r.pass = r.ratio >= bound - tol && w.error <= tol * std::abs(w.value);
  return r;
}

}  // namespace detail

/// ∫u·Hu ≥ A(m) ∫u²/d_H^{2m} on {ν·x > 0}.
inline quotient_report verify_halfspace(const symbol_polynomial& P, const norm_table& table,
                                        const half_space& h, const test_function& u,
                                        double tol = default_quadrature_tol) {
  const double A = to_double(rellich_constant(P.half_order()));
  quotient_report r = detail::make_report(P, table, domain{h}, u, A, tol);
  r.inequality = "halfspace";
  r.sharp_ratio = sharp_ratio_halfspace(P, table, h.normal());
  return r;
}

/// ∫u·Hu ≥ A(m) μ_H/M_H ∫u²/d_H^{2m} on a convex polytope.
inline quotient_report verify_convex(const symbol_polynomial& P, const norm_table& table,
                                     const convex_polytope& poly, const test_function& u,
                                     const constants_report& k, double tol = default_quadrature_tol) {
  quotient_report r = detail::make_report(P, table, domain{poly}, u, k.finsler_bound, tol);
  r.inequality = "convex";
  r.comparison_bound = k.comparison;
  r.beats_comparison = k.finsler_bound > k.comparison;
  return r;
}

inline quotient_report verify_convex(const symbol_polynomial& P, const norm_table& table,
                                     const convex_polytope& poly, const test_function& u,
                                     double tol = default_quadrature_tol) {
  return verify_convex(P, table, poly, u, compute_constants(P, table), tol);
}

struct duality_report {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double worst_slack = 0.0;  ///< min over pairs of (lhs - rhs)/max(|lhs|, |rhs|)
  std::vector<double> worst_xi, worst_omega;
  bool pass = false;
};

inline constexpr std::uint64_t default_seed = 20240917;
inline constexpr double duality_slack_tol = 1e-9;

/// Samples H(ξ)·F*(ω)^{2m} ≥ (ω·ξ)^{2m} at random pairs.
inline duality_report symbol_duality_check(const finsler_norm& norm, std::size_t samples,
                                           std::uint64_t seed = default_seed) {
  if (norm.dimension() != 2) throw usage_error("symbol_duality_check: planar symbols only");
  const symbol_polynomial& P = norm.symbol();
  const int two_m = P.order();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, two_pi), logr(-2.0, 2.0);
  duality_report r;
  r.samples = samples;
  r.seed = seed;
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = angle(rng), b = angle(rng);
    const double ra = std::exp(logr(rng)), rb = std::exp(logr(rng));
    const std::vector<double> xi{ra * std::cos(a), ra * std::sin(a)};
    const std::vector<double> om{rb * std::cos(b), rb * std::sin(b)};
    const double lhs = P(xi) * std::pow(norm.dual(om), two_m);
    const double rhs = std::pow(dot(om, xi), two_m);
    const double slack = (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    if (slack < r.worst_slack) {
      r.worst_slack = slack;
      r.worst_xi = xi;
      r.worst_omega = om;
    }
  }
  r.pass = r.worst_slack >= -duality_slack_tol;
  return r;
}

inline duality_report symbol_duality_check(const symbol_polynomial& P, const norm_table& table,
                                           std::size_t samples, std::uint64_t seed = default_seed) {
  if (!(table.symbol() == P)) throw usage_error("symbol_duality_check: table was built for a different symbol");
  return symbol_duality_check(table.norm(), samples, seed);
}

struct sandwich_report {
  double beta = 0.0;
  double lower_factor = 0.0;  ///< 1/4 (example1) or 1/8 (example2)
  double scale = 0.0;         ///< max{1, 2/(β+1)}
  double min_value = 0.0;     ///< min over the grid of F*(ξ)^{2m}, |ξ| = 1
  double max_value = 0.0;
  double lower_margin = 0.0;  ///< min_value / (lower_factor·scale) - 1
  double upper_margin = 0.0;  ///< 1 - max_value / scale
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass = false;
};

/// Checks c·max{1, 2/(β+1)} ≤ F*(ξ)^{2m} ≤ max{1, 2/(β+1)} on the unit
/// circle, with c = 1/4 for example1 (2m = 4) and c = 1/8 for example2
/// (2m = 6), on `grid_points` equally spaced directions.
inline sandwich_report sandwich_bounds_check(family f, double beta, const norm_table& table,
                                         std::size_t grid_points = 4096, double slack = 1e-9) {
  if (f == family::custom) throw usage_error("sandwich_bounds_check: example families only");
  if (!(beta > -1.0)) throw domain_error("sandwich_bounds_check: beta must exceed -1");
  sandwich_report r;
  r.beta = beta;
  r.lower_factor = f == family::example1 ? 0.25 : 0.125;
  r.scale = std::max(1.0, 2.0 / (beta + 1.0));
  const int two_m = table.symbol().order();
  r.min_value = std::numeric_limits<double>::infinity();
  r.max_value = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double t = two_pi * static_cast<double>(i) / static_cast<double>(grid_points);
    const double v = std::pow(table.norm().dual_angle(t), two_m);
    r.min_value = std::min(r.min_value, v);
    r.max_value = std::max(r.max_value, v);
  }
  r.lower_margin = r.min_value / (r.lower_factor * r.scale) - 1.0;
  r.upper_margin = 1.0 - r.max_value / r.scale;
  r.lower_ok = r.lower_margin >= -slack;
  r.upper_ok = r.upper_margin >= -slack;
  r.pass = r.lower_ok && r.upper_ok;
  return r;
}

}  // namespace frellich
