#pragma once

// Extremization of continuous functions on S^1 (certified: dense uniform
// grid plus golden-section polishing of every competitive grid peak) and
// on S^{n-1}, n >= 3 (heuristic: quasi-random sampling plus local pattern
// search).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "frellich/errors.hpp"
#include "frellich/polynomial.hpp"

namespace frellich {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct extremum {
  double angle = 0.0;  ///< location on the circle (n = 2 only)
  double value = 0.0;
};

/// Maximizes f on [a, b] by golden-section search. Assumes f unimodal on
/// the bracket; always returns the best point seen.
template <class F>
extremum golden_maximize(F&& f, double a, double b, double tol, int max_iter = 300) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  extremum best = fc >= fd ? extremum{c, fc} : extremum{d, fd};
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  if (!std::isfinite(best.value)) throw convergence_error("golden section: non-finite objective");
  return best;
}

/// Global maximum of a 2π-periodic f whose values at the angles
/// k·2π/N (k = 0..N-1) are given in `samples`. Every discrete local
/// maximum within `window` (relative) of the best sample is polished by
/// golden section on its two neighbouring grid cells; at most
/// `max_candidates` peaks are polished. Ties go to the smallest angle.
template <class F>
extremum refine_periodic_max(F&& f, std::span<const double> samples, double angle_tol,
                             double window = 1e-3, std::size_t max_candidates = 8) {
  const std::size_t n = samples.size();
  if (n < 3) throw usage_error("refine_periodic_max: need at least 3 samples");
  const double h = two_pi / static_cast<double>(n);

  std::size_t best_i = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (samples[i] > samples[best_i]) best_i = i;
  const double best_sample = samples[best_i];
  if (!std::isfinite(best_sample)) throw convergence_error("periodic search: non-finite samples");
  const double cutoff = best_sample - window * std::max(std::abs(best_sample), 1e-300);

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    if (samples[i] < cutoff) continue;
    const double prev = samples[i == 0 ? n - 1 : i - 1], next = samples[i + 1 == n ? 0 : i + 1];
    if (samples[i] >= prev && samples[i] >= next) peaks.push_back(i);
  }
  // Highest first; stable so equal values keep ascending angle order.
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a] > samples[b]; });
  if (peaks.size() > max_candidates) peaks.resize(max_candidates);
  if (peaks.empty()) peaks.push_back(best_i);
  std::sort(peaks.begin(), peaks.end());

  extremum best{static_cast<double>(best_i) * h, best_sample};
  for (std::size_t i : peaks) {
    const double centre = static_cast<double>(i) * h;
    extremum e = golden_maximize(f, centre - h, centre + h, angle_tol);
    if (samples[i] >= e.value) e = {centre, samples[i]};
    e.angle = std::fmod(e.angle + two_pi, two_pi);
    if (e.value > best.value || (e.value == best.value && e.angle < best.angle)) best = e;
  }
  return best;
}

/// Samples f on the uniform N-point circle grid, then refines.
template <class F>
extremum maximize_on_circle(F&& f, std::size_t grid_points, double angle_tol) {
  std::vector<double> s(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    s[i] = f(two_pi * static_cast<double>(i) / static_cast<double>(grid_points));
  return refine_periodic_max(f, s, angle_tol);
}

template <class F>
extremum minimize_on_circle(F&& f, std::size_t grid_points, double angle_tol) {
  auto neg = [&](double t) { return -f(t); };
  extremum e = maximize_on_circle(neg, grid_points, angle_tol);
  e.value = -e.value;
  return e;
}

/// Point on S^{n-1} with its objective value.
struct sphere_point {
  std::vector<double> x;
  double value = 0.0;
};

namespace detail {

inline double radical_inverse(std::size_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline unsigned nth_prime(std::size_t k) {
  static constexpr std::array<unsigned, 16> primes{2,  3,  5,  7,  11, 13, 17, 19,
                                                   23, 29, 31, 37, 41, 43, 47, 53};
  if (k >= primes.size()) throw usage_error("sphere sampling: dimension too large");
  return primes[k];
}

inline void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

}  // namespace detail

/// Heuristic global maximization on S^{n-1}: Halton points pushed through
/// the normal quantile and normalized, then pattern search from the best
/// few samples. Not certified.
template <class F>
sphere_point maximize_on_sphere_sampled(F&& f, std::size_t n, std::size_t samples = 100000,
                                        std::size_t starts = 8, double step_tol = 1e-10) {
  if (n < 2) throw usage_error("sphere sampling: dimension must be >= 2");
  const boost::math::normal_distribution<double> normal;
  std::vector<sphere_point> best;
  std::vector<double> x(n);
  for (std::size_t i = 1; i <= samples; ++i) {
    for (std::size_t d = 0; d < n; ++d) {
      double u = detail::radical_inverse(i, detail::nth_prime(d));
      u = std::clamp(u, 1e-12, 1.0 - 1e-12);
      x[d] = boost::math::quantile(normal, u);
    }
    detail::normalize(x);
    const double v = f(std::span<const double>(x));
    if (best.size() < starts || v > best.back().value) {
      best.push_back({x, v});
      std::stable_sort(best.begin(), best.end(),
                       [](const auto& a, const auto& b) { return a.value > b.value; });
      if (best.size() > starts) best.pop_back();
    }
  }

  sphere_point winner = best.front();
  for (auto p : best) {
    double step = 0.05;
    std::vector<double> trial(n);
    while (step > step_tol) {
      bool moved = false;
      for (std::size_t d = 0; d < n && !moved; ++d) {
        for (double sgn : {1.0, -1.0}) {
          // Move along the projection of e_d onto the tangent space.
          const double pd = p.x[d];
          for (std::size_t k = 0; k < n; ++k) trial[k] = p.x[k] - sgn * step * pd * p.x[k];
          trial[d] += sgn * step;
          detail::normalize(trial);
          const double v = f(std::span<const double>(trial));
          if (v > p.value) {
            p.x = trial;
            p.value = v;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    if (p.value > winner.value) winner = p;
  }
  return winner;
}

/// Extremes of a symbol on the unit sphere.
struct sphere_extrema {
  double lambda = 0.0;  ///< min of H on S^{n-1}
  double Lambda = 0.0;  ///< max of H on S^{n-1}
  double argmin_angle = 0.0;
  double argmax_angle = 0.0;
  bool certified = true;  ///< false on the sampled n >= 3 path
};

inline constexpr std::size_t default_sphere_grid = 4096;
inline constexpr double default_ellipticity_tol = 1e-12;

/// λ = min_{|ξ|=1} H(ξ), Λ = max_{|ξ|=1} H(ξ).
inline sphere_extrema min_max_on_sphere(const symbol_polynomial& P, double tol = 1e-10) {
  const std::size_t n = P.dimension();
  sphere_extrema r;
  if (n == 1) {
    const double v = P(std::array<double, 1>{1.0});
    r.lambda = r.Lambda = v;
    return r;
  }
  if (n == 2) {
    auto h = [&](double t) { return P(std::cos(t), std::sin(t)); };
    const extremum lo = minimize_on_circle(h, default_sphere_grid, tol);
    const extremum hi = maximize_on_circle(h, default_sphere_grid, tol);
    r.lambda = lo.value;
    r.Lambda = hi.value;
    r.argmin_angle = lo.angle;
    r.argmax_angle = hi.angle;
    return r;
  }
  auto h = [&](std::span<const double> x) { return P(x); };
  auto neg = [&](std::span<const double> x) { return -P(x); };
  r.Lambda = maximize_on_sphere_sampled(h, n).value;
  r.lambda = -maximize_on_sphere_sampled(neg, n).value;
  r.certified = false;
  return r;
}

inline bool is_elliptic(const symbol_polynomial& P, double tol = default_ellipticity_tol) {
  return min_max_on_sphere(P).lambda >= tol;
}

inline void require_elliptic(const symbol_polynomial& P, double tol = default_ellipticity_tol) {
  if (!is_elliptic(P, tol)) throw ellipticity_error("symbol is not elliptic (min on sphere below tolerance)");
}

}  // namespace frellich
