#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "frellich/errors.hpp"

namespace frellich {

/// Gauss–Legendre rule on [-1, 1], expanded from Boost's half tables.
template <unsigned N>
struct gauss_legendre_rule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  gauss_legendre_rule() {
    using g = boost::math::quadrature::gauss<double, N>;
    const auto& x = g::abscissa();
    const auto& w = g::weights();
    std::size_t k = 0;
    // Boost stores non-negative nodes; for odd N the first one is 0.
    for (std::size_t i = x.size(); i-- > 0;) {
      if (x[i] == 0.0) continue;
      nodes[k] = -x[i];
      weights[k++] = w[i];
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes[k] = x[i];
      weights[k++] = w[i];
    }
  }

  static const gauss_legendre_rule& get() {
    static const gauss_legendre_rule rule;
    return rule;
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (unsigned i = 0; i < N; ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
  }
};

struct quadrature_result {
  double value = 0.0;
  double error = 0.0;  ///< absolute error estimate
  std::size_t cells = 0;
};

/// Adaptive bisection for a vector-valued integrand: f(t, out) writes
/// `components` values into `out`. Each panel compares a 16-point rule
/// against the same rule on its halves; refinement stops when the summed
/// estimate is below rel_tol times the largest component magnitude.
template <class F>
std::pair<std::vector<double>, double> adaptive_integrate(F&& f, std::size_t components, double a,
                                                          double b, double rel_tol,
                                                          std::size_t max_panels = 1u << 16) {
  const auto& rule = gauss_legendre_rule<16>::get();
  using vec = std::vector<double>;
  vec buf(components);
  auto gl = [&](double lo, double hi) {
    vec s(components, 0.0);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (lo + hi);
    for (unsigned i = 0; i < 16; ++i) {
      f(mid + half * rule.nodes[i], std::span<double>(buf));
      for (std::size_t k = 0; k < components; ++k) s[k] += rule.weights[i] * buf[k];
    }
    for (auto& x : s) x *= half;
    return s;
  };
  struct panel {
    double lo, hi;
    vec left, right;
    double err;
  };
  auto make = [&](double lo, double hi, const vec& whole) {
    const double mid = 0.5 * (lo + hi);
    panel p{lo, hi, gl(lo, mid), gl(mid, hi), 0.0};
    for (std::size_t k = 0; k < components; ++k)
      p.err = std::max(p.err, std::abs(whole[k] - p.left[k] - p.right[k]));
    return p;
  };

  // Panels are kept sorted by left endpoint, so sums are deterministic.
  std::vector<panel> panels;
  panels.push_back(make(a, b, gl(a, b)));
  for (;;) {
    vec total(components, 0.0);
    double err = 0.0;
    for (const auto& p : panels) {
      for (std::size_t k = 0; k < components; ++k) total[k] += p.left[k] + p.right[k];
      err += p.err;
    }
    double scale = 0.0;
    for (double v : total) scale = std::max(scale, std::abs(v));
    if (err <= rel_tol * scale || err == 0.0) return {total, err};
    if (panels.size() >= max_panels) throw convergence_error("adaptive_integrate: panel budget exceeded");

    // Split every panel carrying more than its fair share of the error.
    const double share = err / static_cast<double>(panels.size());
    std::vector<panel> next;
    next.reserve(2 * panels.size());
    for (auto& p : panels) {
      const double mid = 0.5 * (p.lo + p.hi);
      if (p.err >= share && mid > p.lo && mid < p.hi) {
        next.push_back(make(p.lo, mid, p.left));
        next.push_back(make(mid, p.hi, p.right));
      } else {
        if (!(mid > p.lo && mid < p.hi)) p.err = 0.0;
        next.push_back(std::move(p));
      }
    }
    panels = std::move(next);
  }
}

/// Axis-aligned box in R^n with double bounds.
struct box_bounds {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t dimension() const noexcept { return lo.size(); }
};

/// Adaptive tensor Gauss–Legendre cubature (N points per axis per cell).
/// For every axis a cell compares its own value with the sum over its two
/// halves along that axis; the largest difference is the cell's error and
/// picks the split axis. Bisecting one axis at a time keeps face and edge
/// singularities cheap. The worst cell is split until the total estimate
/// drops below rel_tol·|I|. Leaves are summed in creation order, so the
/// result is deterministic.
template <unsigned N = 32, class F>
quadrature_result adaptive_cubature(F&& f, const box_bounds& box, double rel_tol,
                                    std::size_t max_cells = 1u << 20) {
  const std::size_t n = box.dimension();
  if (n == 0 || box.hi.size() != n) throw usage_error("adaptive_cubature: malformed box");
  const auto& rule = gauss_legendre_rule<N>::get();

  std::vector<double> x(n);
  std::vector<unsigned> idx(n);
  auto tensor_gl = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    double jac = 1.0;
    for (std::size_t d = 0; d < n; ++d) jac *= 0.5 * (hi[d] - lo[d]);
    std::fill(idx.begin(), idx.end(), 0u);
    double sum = 0.0;
    for (;;) {
      double w = 1.0;
      for (std::size_t d = 0; d < n; ++d) {
        x[d] = 0.5 * (lo[d] + hi[d]) + 0.5 * (hi[d] - lo[d]) * rule.nodes[idx[d]];
        w *= rule.weights[idx[d]];
      }
      sum += w * f(std::span<const double>(x));
      std::size_t d = 0;
      while (d < n && ++idx[d] == N) idx[d++] = 0;
      if (d == n) break;
    }
    return sum * jac;
  };

  struct cell {
    std::vector<double> lo, hi;
    double coarse = 0.0;
    std::size_t axis = 0;
    double half[2] = {0.0, 0.0};  // the two halves along `axis`
    double fine = 0.0;
    double err = 0.0;
  };
  auto half_bounds = [&](const cell& c, std::size_t d, int side, std::vector<double>& lo,
                         std::vector<double>& hi) {
    lo = c.lo;
    hi = c.hi;
    const double mid = 0.5 * (c.lo[d] + c.hi[d]);
    (side == 0 ? hi[d] : lo[d]) = mid;
  };
  auto finish = [&](cell& c) {
    std::vector<double> lo, hi;
    c.err = -1.0;
    for (std::size_t d = 0; d < n; ++d) {
      half_bounds(c, d, 0, lo, hi);
      const double a = tensor_gl(lo, hi);
      half_bounds(c, d, 1, lo, hi);
      const double b = tensor_gl(lo, hi);
      const double e = std::abs(a + b - c.coarse);
      if (e > c.err) {
        c.err = e;
        c.axis = d;
        c.half[0] = a;
        c.half[1] = b;
      }
    }
    c.fine = c.half[0] + c.half[1];
  };

  std::vector<cell> cells;
  std::vector<bool> alive;
  cell root{box.lo, box.hi};
  root.coarse = tensor_gl(root.lo, root.hi);
  finish(root);
  cells.push_back(std::move(root));
  alive.push_back(true);

  auto cmp = [&](std::size_t a, std::size_t b) {
    return cells[a].err < cells[b].err || (cells[a].err == cells[b].err && a > b);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
  heap.push(0);

  double total = cells[0].fine, err = cells[0].err;
  std::size_t since_resum = 0;
  std::size_t leaves = 1;
  while (err > rel_tol * std::abs(total) && err > 0.0) {
    if (leaves + 1 > max_cells)
      throw convergence_error("adaptive_cubature: cell budget exceeded (error estimate " +
                              std::to_string(err) + ")");
    const std::size_t worst = heap.top();
    heap.pop();
    alive[worst] = false;
    total -= cells[worst].fine;
    err -= cells[worst].err;
    std::vector<double> lo, hi;
    for (int side = 0; side < 2; ++side) {
      half_bounds(cells[worst], cells[worst].axis, side, lo, hi);
      cell c{lo, hi, cells[worst].half[side]};
      finish(c);
      total += c.fine;
      err += c.err;
      cells.push_back(std::move(c));
      alive.push_back(true);
      heap.push(cells.size() - 1);
    }
    ++leaves;
    if (++since_resum == 512) {
      since_resum = 0;
      total = err = 0.0;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (alive[i]) {
          total += cells[i].fine;
          err += cells[i].err;
        }
    }
  }
  quadrature_result r;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (alive[i]) {
      r.value += cells[i].fine;
      r.error += cells[i].err;
    }
  r.cells = leaves;
  return r;
}

}  // namespace frellich
