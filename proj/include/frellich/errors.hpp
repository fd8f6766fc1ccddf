#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frellich {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position()` is the 0-based offset of the
/// offending character in the input.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Input outside an operation's mathematical domain (non-elliptic symbol,
/// point outside the domain, non-homogeneous symbol, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// The symbol is not positive on the unit sphere.
class ellipticity_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Iterative refinement or adaptive quadrature ran out of budget.
class convergence_error : public error {
 public:
  using error::error;
};

/// API misuse: mismatched dimensions, a table built for another symbol, ...
class usage_error : public error {
 public:
  using error::error;
};

}  // namespace frellich
