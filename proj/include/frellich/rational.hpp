#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace frellich {

using rational = boost::multiprecision::cpp_rational;
using integer = boost::multiprecision::cpp_int;

inline double to_double(const rational& r) { return r.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
inline rational from_double(double v) { return rational(v); }

inline std::string to_string(const rational& r) { return r.str(); }

/// Parses `[-]digits`, `[-]digits.digits` or `[-]digits/digits` exactly.
/// Returns nullopt on anything else.
inline std::optional<rational> parse_rational(std::string_view text) {
  bool negative = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](integer& out) {
    std::size_t start = i;
    out = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out = out * 10 + (text[i] - '0');
      ++i;
    }
    return i > start;
  };
  integer whole;
  bool have_whole = digits(whole);
  rational value(whole);
  if (i < text.size() && text[i] == '.') {
    ++i;
    integer scale = 1;
    integer frac = 0;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      ++i;
    }
    if (!have_whole && i == start) return std::nullopt;
    value += rational(frac, scale);
  } else if (i < text.size() && text[i] == '/') {
    if (!have_whole) return std::nullopt;
    ++i;
    integer den;
    if (!digits(den) || den == 0) return std::nullopt;
    value = rational(whole, den);
  } else if (!have_whole) {
    return std::nullopt;
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E') && text.find('/') == std::string_view::npos) {
    ++i;
    bool down = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) down = text[i++] == '-';
    integer e;
    if (!digits(e) || e > 400) return std::nullopt;
    integer p = 1;
    for (int k = 0; k < static_cast<int>(e); ++k) p *= 10;
    value = down ? rational(value / p) : rational(value * p);
  }
  if (i != text.size()) return std::nullopt;
  return negative ? rational(-value) : value;
}

}  // namespace frellich
