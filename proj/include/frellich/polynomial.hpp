#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frellich/errors.hpp"
#include "frellich/rational.hpp"

namespace frellich {

/// Exponent vector of a monomial; one entry per variable.
class multi_index {
 public:
  multi_index() = default;
  explicit multi_index(std::size_t n) : exps_(n, 0) {}
  multi_index(std::initializer_list<int> e) : exps_(e) {
    for (int v : exps_)
      if (v < 0) throw usage_error("multi_index: negative exponent");
  }
  explicit multi_index(std::vector<int> e) : exps_(std::move(e)) {
    for (int v : exps_)
      if (v < 0) throw usage_error("multi_index: negative exponent");
  }

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  int order() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  friend multi_index operator+(const multi_index& a, const multi_index& b) {
    if (a.size() != b.size()) throw usage_error("multi_index: dimension mismatch");
    multi_index r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    return r;
  }
  friend bool operator==(const multi_index&, const multi_index&) = default;

 private:
  std::vector<int> exps_;
};

/// Graded lexicographic order: higher total degree first, then
/// lexicographically larger exponent vectors first (x1 dominates).
struct graded_lex {
  bool operator()(const multi_index& a, const multi_index& b) const {
    int da = a.order(), db = b.order();
    if (da != db) return da > db;
    return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                        a.exponents().begin(), a.exponents().end());
  }
};

/// Multivariate polynomial with exact rational coefficients.
class polynomial {
 public:
  using term_map = std::map<multi_index, rational, graded_lex>;

  polynomial() : dim_(1) {}
  explicit polynomial(std::size_t dimension) : dim_(dimension) {
    if (dimension == 0) throw usage_error("polynomial: dimension must be >= 1");
  }

  static polynomial constant(std::size_t n, const rational& c) {
    polynomial p(n);
    p.add_term(multi_index(n), c);
    return p;
  }
  static polynomial variable(std::size_t n, std::size_t i) {
    if (i >= n) throw usage_error("polynomial: variable index out of range");
    multi_index a(n);
    a[i] = 1;
    polynomial p(n);
    p.add_term(a, 1);
    return p;
  }
  static polynomial monomial(const multi_index& a, const rational& c) {
    polynomial p(a.size());
    p.add_term(a, c);
    return p;
  }

  std::size_t dimension() const noexcept { return dim_; }
  const term_map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : terms_.begin()->first.order();
  }

  rational coefficient(const multi_index& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? rational(0) : it->second;
  }

  void add_term(const multi_index& a, const rational& c) {
    if (a.size() != dim_) throw usage_error("polynomial: term dimension mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  polynomial& operator+=(const polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  polynomial& operator-=(const polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  polynomial& operator*=(const rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
  friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }
  friend polynomial operator-(polynomial a) { return a *= rational(-1); }
  friend polynomial operator*(polynomial a, const rational& s) { return a *= s; }
  friend polynomial operator*(const rational& s, polynomial a) { return a *= s; }
  friend polynomial operator*(const polynomial& a, const polynomial& b) {
    a.check_dim(b);
    polynomial r(a.dim_);
    for (const auto& [ia, ca] : a.terms_)
      for (const auto& [ib, cb] : b.terms_) r.add_term(ia + ib, ca * cb);
    return r;
  }
  friend bool operator==(const polynomial& a, const polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  polynomial pow(unsigned k) const {
    polynomial result = constant(dim_, 1);
    polynomial base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  /// Exact evaluation at a rational point.
  rational evaluate(std::span<const rational> x) const {
    if (x.size() != dim_) throw usage_error("polynomial: point dimension mismatch");
    rational sum = 0;
    for (const auto& [a, c] : terms_) {
      rational t = c;
      for (std::size_t i = 0; i < dim_; ++i)
        for (int k = 0; k < a[i]; ++k) t *= x[i];
      sum += t;
    }
    return sum;
  }

 private:
  void check_dim(const polynomial& o) const {
    if (o.dim_ != dim_) throw usage_error("polynomial: dimension mismatch");
  }

  std::size_t dim_;
  term_map terms_;
};

/// Floating-point evaluator built once from an exact polynomial. Powers of
/// each coordinate are tabulated per call, so evaluation costs one
/// multiply-add chain per term.
class compiled_polynomial {
 public:
  compiled_polynomial() = default;
  explicit compiled_polynomial(const polynomial& p) : dim_(p.dimension()) {
    for (const auto& [a, c] : p.terms()) {
      coefs_.push_back(to_double(c));
      for (std::size_t i = 0; i < dim_; ++i) {
        exps_.push_back(a[i]);
        max_exp_ = std::max(max_exp_, a[i]);
      }
    }
  }

  std::size_t dimension() const noexcept { return dim_; }

  double operator()(std::span<const double> x) const {
    if (x.size() != dim_) throw usage_error("polynomial: point dimension mismatch");
    const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
    const std::size_t need = stride * dim_;
    std::array<double, 128> stack{};
    std::vector<double> heap;
    double* pw = stack.data();
    if (need > stack.size()) {
      heap.resize(need);
      pw = heap.data();
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      double* row = pw + i * stride;
      row[0] = 1.0;
      for (std::size_t k = 1; k < stride; ++k) row[k] = row[k - 1] * x[i];
    }
    double sum = 0.0;
    const int* e = exps_.data();
    for (double c : coefs_) {
      double t = c;
      for (std::size_t i = 0; i < dim_; ++i) t *= pw[i * stride + static_cast<std::size_t>(e[i])];
      sum += t;
      e += dim_;
    }
    return sum;
  }

 private:
  std::size_t dim_ = 0;
  int max_exp_ = 0;
  std::vector<double> coefs_;
  std::vector<int> exps_;
};

/// Homogeneous symbol H(ξ) = Σ_{|α|=2m} a_α ξ^α of a constant-coefficient
/// operator of order 2m.
class symbol_polynomial {
 public:
  /// Validates homogeneity and infers m from the common degree.
  explicit symbol_polynomial(polynomial p) : poly_(std::move(p)) {
    if (poly_.is_zero()) throw domain_error("symbol: zero polynomial");
    const int deg = poly_.degree();
    for (const auto& [a, c] : poly_.terms())
      if (a.order() != deg)
        throw domain_error("symbol: non-homogeneous polynomial (degrees " +
                           std::to_string(deg) + " and " + std::to_string(a.order()) + ")");
    if (deg == 0 || deg % 2 != 0)
      throw domain_error("symbol: total degree " + std::to_string(deg) +
                         " is not a positive even number");
    m_ = deg / 2;
    fast_ = compiled_polynomial(poly_);
  }

  const polynomial& poly() const noexcept { return poly_; }
  int half_order() const noexcept { return m_; }
  int order() const noexcept { return 2 * m_; }
  std::size_t dimension() const noexcept { return poly_.dimension(); }

  double operator()(std::span<const double> xi) const { return fast_(xi); }
  double operator()(double x1, double x2) const {
    const std::array<double, 2> p{x1, x2};
    return fast_(p);
  }

  friend bool operator==(const symbol_polynomial& a, const symbol_polynomial& b) {
    return a.poly_ == b.poly_;
  }

 private:
  polynomial poly_;
  int m_ = 0;
  compiled_polynomial fast_;
};

inline double evaluate(const polynomial& p, std::span<const double> x) {
  return compiled_polynomial(p)(x);
}
inline double evaluate(const symbol_polynomial& p, std::span<const double> x) {
  if (x.size() != p.dimension()) throw usage_error("evaluate: dimension mismatch");
  return p(x);
}

/// D^α p.
inline polynomial differentiate(const polynomial& p, const multi_index& alpha) {
  if (alpha.size() != p.dimension()) throw usage_error("differentiate: dimension mismatch");
  polynomial r(p.dimension());
  for (const auto& [a, c] : p.terms()) {
    multi_index b = a;
    rational coef = c;
    bool vanished = false;
    for (std::size_t i = 0; i < a.size() && !vanished; ++i) {
      if (alpha[i] > a[i]) {
        vanished = true;
        break;
      }
      for (int k = 0; k < alpha[i]; ++k) coef *= (a[i] - k);
      b[i] = a[i] - alpha[i];
    }
    if (!vanished) r.add_term(b, coef);
  }
  return r;
}

/// Derivative of order k in variable i.
inline polynomial differentiate(const polynomial& p, std::size_t var, int k) {
  multi_index a(p.dimension());
  a[var] = k;
  return differentiate(p, a);
}

/// Hu = (-1)^m Σ a_α D^α u.
inline polynomial apply_operator(const symbol_polynomial& H, const polynomial& u) {
  if (H.dimension() != u.dimension()) throw usage_error("apply_operator: dimension mismatch");
  polynomial r(u.dimension());
  for (const auto& [alpha, a] : H.poly().terms()) r += differentiate(u, alpha) * a;
  if (H.half_order() % 2 != 0) r *= rational(-1);
  return r;
}

/// Replaces variable `var` by the constant `value`; the dimension is kept.
inline polynomial substitute(const polynomial& p, std::size_t var, const rational& value) {
  if (var >= p.dimension()) throw usage_error("substitute: variable out of range");
  polynomial r(p.dimension());
  for (const auto& [a, c] : p.terms()) {
    multi_index b = a;
    b[var] = 0;
    rational t = c;
    for (int k = 0; k < a[var]; ++k) t *= value;
    r.add_term(b, t);
  }
  return r;
}

struct interval {
  rational lo;
  rational hi;
};

/// Exact ∫_box p dx, monomial by monomial.
inline rational integrate_box(const polynomial& p, std::span<const interval> box) {
  if (box.size() != p.dimension()) throw usage_error("integrate_box: dimension mismatch");
  for (const auto& iv : box)
    if (iv.lo > iv.hi) throw domain_error("integrate_box: lower bound exceeds upper bound");
  // Cache ∫ x^k over each axis.
  std::vector<std::vector<rational>> moments(box.size());
  auto moment = [&](std::size_t i, int k) -> const rational& {
    auto& row = moments[i];
    while (static_cast<int>(row.size()) <= k) {
      const int j = static_cast<int>(row.size());
      rational hi = 1, lo = 1;
      for (int t = 0; t <= j; ++t) {
        hi *= box[i].hi;
        lo *= box[i].lo;
      }
      row.push_back((hi - lo) / (j + 1));
    }
    return row[static_cast<std::size_t>(k)];
  };
  rational sum = 0;
  for (const auto& [a, c] : p.terms()) {
    rational t = c;
    for (std::size_t i = 0; i < box.size(); ++i) t *= moment(i, a[i]);
    sum += t;
  }
  return sum;
}

}  // namespace frellich
