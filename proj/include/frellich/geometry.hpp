#pragma once

// Half-spaces and convex polytopes with their Euclidean and Finsler
// distances to the boundary.
//
// Finsler distance to a hyperplane {y : ν·y = b} from a point x with
// ν·x < b: writing z = y - x, the constraint is ν·z = b - ν·x =: δ > 0 and
//   min_{ν·z = δ} F*(z) = δ · min_{ν·z = 1} F*(z) = δ / max_{F*(z) ≤ 1} ν·z
//                       = δ / F**(ν).
// For a convex polytope every boundary point lies on a face hyperplane, so
// d_H(x) >= min_i δ_i / F**(ν_i). Conversely the segment from x to the
// minimizer on hyperplane i leaves the polytope at a boundary point no
// farther from x, and F* is 1-homogeneous, so equality holds:
//   d_H(x) = min_i (b_i - ν_i·x) / F**(ν_i).

#include <cmath>
#include <limits>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "frellich/errors.hpp"
#include "frellich/finsler.hpp"

namespace frellich {

using vector_t = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline constexpr double unit_normal_tol = 1e-12;

/// {x : ν·x > 0}, ν the inward unit normal.
class half_space {
 public:
  explicit half_space(vector_t normal) : nu_(std::move(normal)) {
    if (nu_.empty()) throw usage_error("half_space: empty normal");
    const double len = std::sqrt(dot(nu_, nu_));
    if (std::abs(len - 1.0) > unit_normal_tol) throw usage_error("half_space: normal must be a unit vector");
  }
  /// Normalizes an arbitrary nonzero vector.
  static half_space from_direction(vector_t v) {
    const double len = std::sqrt(dot(v, v));
    if (!(len > 0.0)) throw usage_error("half_space: zero normal");
    for (double& c : v) c /= len;
    return half_space(std::move(v));
  }

  const vector_t& normal() const noexcept { return nu_; }
  std::size_t dimension() const noexcept { return nu_.size(); }

 private:
  vector_t nu_;
};

struct face {
  vector_t normal;  ///< outward unit normal
  double offset;    ///< face is {x : normal·x = offset}
};

/// {x : ν_i·x ≤ b_i for all i} with nonempty interior.
class convex_polytope {
 public:
  explicit convex_polytope(std::vector<face> faces) : faces_(std::move(faces)) {
    if (faces_.empty()) throw usage_error("convex_polytope: no faces");
    const std::size_t n = faces_.front().normal.size();
    if (n == 0) throw usage_error("convex_polytope: empty normal");
    for (const auto& f : faces_) {
      if (f.normal.size() != n) throw usage_error("convex_polytope: inconsistent face dimensions");
      if (std::abs(std::sqrt(dot(f.normal, f.normal)) - 1.0) > unit_normal_tol)
        throw usage_error("convex_polytope: face normals must be unit vectors");
    }
    chebyshev_center();
    if (!(radius_ > 1e-12)) throw domain_error("convex_polytope: empty interior");
  }

  /// Normalizes each (normal, offset) pair by |normal|.
  static convex_polytope from_raw_faces(std::vector<face> faces) {
    for (auto& f : faces) {
      const double len = std::sqrt(dot(f.normal, f.normal));
      if (!(len > 0.0)) throw usage_error("convex_polytope: zero face normal");
      for (double& c : f.normal) c /= len;
      f.offset /= len;
    }
    return convex_polytope(std::move(faces));
  }

  static convex_polytope unit_square() {
    return convex_polytope({{{-1.0, 0.0}, 0.0}, {{1.0, 0.0}, 1.0}, {{0.0, -1.0}, 0.0}, {{0.0, 1.0}, 1.0}});
  }

  static convex_polytope from_half_space(const half_space& h) {
    vector_t out = h.normal();
    for (double& c : out) c = -c;
    return convex_polytope({{out, 0.0}});
  }

  const std::vector<face>& faces() const noexcept { return faces_; }
  std::size_t dimension() const noexcept { return faces_.front().normal.size(); }
  /// Centre and radius of the largest inscribed ball (clipped to |x_j| ≤ 1e6).
  const vector_t& interior_point() const noexcept { return center_; }
  double inradius() const noexcept { return radius_; }

  /// Min over faces of b_i - ν_i·x (positive strictly inside).
  double slack(std::span<const double> x) const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& f : faces_) s = std::min(s, f.offset - dot(f.normal, x));
    return s;
  }
  bool contains(std::span<const double> x) const { return slack(x) > 0.0; }

  /// Copy with the offset of face i replaced.
  convex_polytope with_offset(std::size_t i, double offset) const {
    auto f = faces_;
    f.at(i).offset = offset;
    return convex_polytope(std::move(f));
  }

 private:
  // max r s.t. ν_i·x + r ≤ b_i, by enumerating vertices of the (n+1)-dim LP.
  void chebyshev_center() {
    const std::size_t n = dimension();
    constexpr double bound = 1e6;
    std::vector<vector_t> A;
    vector_t b;
    for (const auto& f : faces_) {
      A.push_back(f.normal);
      b.push_back(f.offset);
    }
    for (std::size_t j = 0; j < n; ++j)
      for (double sgn : {1.0, -1.0}) {
        vector_t e(n, 0.0);
        e[j] = sgn;
        A.push_back(e);
        b.push_back(bound);
      }
    const std::size_t k = A.size();
    std::vector<std::size_t> pick(n + 1);
    for (std::size_t i = 0; i <= n; ++i) pick[i] = i;
    radius_ = -std::numeric_limits<double>::infinity();
    Eigen::MatrixXd M(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    for (;;) {
      for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t c = 0; c < n; ++c) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = A[pick[r]][c];
        M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n)) = 1.0;
        rhs(static_cast<Eigen::Index>(r)) = b[pick[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (lu.isInvertible()) {
        const Eigen::VectorXd z = lu.solve(rhs);
        const double r = z(static_cast<Eigen::Index>(n));
        bool feasible = true;
        for (std::size_t i = 0; i < k && feasible; ++i) {
          double lhs = r;
          for (std::size_t c = 0; c < n; ++c) lhs += A[i][c] * z(static_cast<Eigen::Index>(c));
          feasible = lhs <= b[i] + 1e-9;
        }
        if (feasible && r > radius_) {
          radius_ = r;
          center_.assign(z.data(), z.data() + n);
        }
      }
      // next (n+1)-combination of k
      std::size_t i = n + 1;
      while (i-- > 0 && pick[i] == k - (n + 1) + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++pick[i];
      for (std::size_t j = i + 1; j <= n; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  std::vector<face> faces_;
  vector_t center_;
  double radius_ = 0.0;
};

using domain = std::variant<half_space, convex_polytope>;

inline convex_polytope as_polytope(const domain& d) {
  if (const auto* h = std::get_if<half_space>(&d)) return convex_polytope::from_half_space(*h);
  return std::get<convex_polytope>(d);
}

namespace detail {

inline void require_inside(const convex_polytope& p, std::span<const double> x) {
  if (x.size() != p.dimension()) throw usage_error("geometry: point dimension mismatch");
  if (!p.contains(x)) throw domain_error("geometry: point is not strictly inside the domain");
}

}  // namespace detail

/// d_ω(x) = inf{|s| : x + sω ∉ Ω}; +∞ when the line never leaves Ω.
inline double directional_distance(const convex_polytope& p, std::span<const double> x,
                                   std::span<const double> omega) {
  detail::require_inside(p, x);
  double d = std::numeric_limits<double>::infinity();
  for (const auto& f : p.faces()) {
    const double rate = dot(f.normal, omega);
    if (rate == 0.0) continue;
    d = std::min(d, (f.offset - dot(f.normal, x)) / std::abs(rate));
  }
  return d;
}

inline double directional_distance(const half_space& h, std::span<const double> x,
                                   std::span<const double> omega) {
  if (x.size() != h.dimension()) throw usage_error("geometry: point dimension mismatch");
  const double depth = dot(h.normal(), x);
  if (!(depth > 0.0)) throw domain_error("geometry: point is not strictly inside the half-space");
  const double rate = std::abs(dot(h.normal(), omega));
  return rate == 0.0 ? std::numeric_limits<double>::infinity() : depth / rate;
}

/// d(x) = min_ω d_ω(x).
inline double euclidean_distance(const convex_polytope& p, std::span<const double> x) {
  detail::require_inside(p, x);
  return p.slack(x);
}

inline double euclidean_distance(const half_space& h, std::span<const double> x) {
  if (x.size() != h.dimension()) throw usage_error("geometry: point dimension mismatch");
  const double depth = dot(h.normal(), x);
  if (!(depth > 0.0)) throw domain_error("geometry: point is not strictly inside the half-space");
  return depth;
}

/// d_H on a fixed domain: F**(ν_i) is computed once per face.
class finsler_distance_field {
 public:
  finsler_distance_field(const norm_table& table, const convex_polytope& p) : poly_(p) {
    if (p.dimension() != 2) throw usage_error("finsler distance: planar domains only");
    for (const auto& f : p.faces()) scale_.push_back(table.fstarstar(f.normal));
  }
  finsler_distance_field(const norm_table& table, const domain& d)
      : finsler_distance_field(table, as_polytope(d)) {}

  const convex_polytope& polytope() const noexcept { return poly_; }
  /// F**(ν_i) per face.
  std::span<const double> face_scales() const noexcept { return scale_; }

  /// No containment check; callers integrating over interior nodes use this.
  double unchecked(std::span<const double> x) const {
    double d = std::numeric_limits<double>::infinity();
    const auto& faces = poly_.faces();
    for (std::size_t i = 0; i < faces.size(); ++i)
      d = std::min(d, (faces[i].offset - dot(faces[i].normal, x)) / scale_[i]);
    return d;
  }

  double operator()(std::span<const double> x) const {
    detail::require_inside(poly_, x);
    return unchecked(x);
  }

 private:
  convex_polytope poly_;
  std::vector<double> scale_;
};

/// d_H(x) = min{F*(x - y) : y ∈ ∂Ω}.
inline double finsler_distance(const symbol_polynomial& P, const norm_table& table, const domain& d,
                               std::span<const double> x) {
  if (!(table.symbol() == P)) throw usage_error("finsler_distance: table was built for a different symbol");
  return finsler_distance_field(table, d)(x);
}

/// Unit θ minimizing F*(ω)/|ν·ω|; it realizes d_H(x) = F*(θ) d_θ(x) for
/// every x in the half-space. Returned with ν·θ > 0.
inline vector_t minimizing_direction(const symbol_polynomial& P, const norm_table& table,
                                     const half_space& h) {
  if (!(table.symbol() == P)) throw usage_error("minimizing_direction: table was built for a different symbol");
  if (h.dimension() != 2) throw usage_error("minimizing_direction: planar half-spaces only");
  const auto& nu = h.normal();
  const double t = table.biconjugate_angle(std::atan2(nu[1], nu[0])).angle;
  return {std::cos(t), std::sin(t)};
}

}  // namespace frellich
