#pragma once

// Textual polynomial grammar (whitespace is ignored between tokens):
//
//   expr     = term { ("+" | "-") term } ;
//   term     = unary { "*" unary | power } ;   (juxtaposition multiplies)
//   unary    = ("+" | "-") unary | power ;
//   power    = primary [ "^" uint ] ;
//   primary  = number | variable | parameter | "(" expr ")" ;
//   number   = decimal [ ("e" | "E") ["+" | "-"] uint ] | uint "/" uint ;
//   decimal  = uint [ "." digits ] | "." digits ;
//   variable = "x" ("1".."9") ;
//   parameter= letter ;              (single letter, bound before parsing)
//
// The canonical printer emits terms in graded-lexicographic order using
// the same grammar, so printing and re-parsing is the identity.

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "frellich/errors.hpp"
#include "frellich/polynomial.hpp"
#include "frellich/rational.hpp"

namespace frellich {

using bindings = std::map<std::string, rational>;

namespace detail {

class polynomial_parser {
 public:
  polynomial_parser(std::string_view text, const bindings& params)
      : text_(text), params_(params) {}

  polynomial run(std::size_t min_dimension) {
    scan_dimension();
    dim_ = std::max<std::size_t>({dim_, min_dimension, 1});
    skip_ws();
    if (pos_ == text_.size()) throw parse_error("empty expression", pos_);
    polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  // Variables fix the dimension before any arithmetic happens.
  void scan_dimension() {
    for (std::size_t i = 0; i + 1 < text_.size(); ++i) {
      const bool starts = i == 0 || !std::isalnum(static_cast<unsigned char>(text_[i - 1]));
      if (starts && text_[i] == 'x' && std::isdigit(static_cast<unsigned char>(text_[i + 1])))
        dim_ = std::max<std::size_t>(dim_, static_cast<std::size_t>(text_[i + 1] - '0'));
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  polynomial expr() {
    polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  polynomial term() {
    polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
        continue;
      }
      // "2 x1", "x1(x1 + x2)": a primary that is not a sign starts a factor.
      skip_ws();
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(')) {
        acc = acc * power();
        continue;
      }
      return acc;
    }
  }

  polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  polynomial power() {
    polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      unsigned k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        k = k * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (k > 1000) throw parse_error("exponent too large", start);
        ++pos_;
      }
      if (pos_ == start) throw parse_error("expected non-negative integer exponent", start);
      return base.pow(k);
    }
    return base;
  }

  polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      polynomial p = expr();
      if (!accept(')')) throw parse_error("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  polynomial number() {
    const std::size_t start = pos_;
    auto is_digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (is_digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (is_digit(pos_)) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t j = pos_ + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (is_digit(j)) {
        pos_ = j;
        while (is_digit(pos_)) ++pos_;
      }
    } else if (pos_ < text_.size() && text_[pos_] == '/' && is_digit(pos_ + 1)) {
      ++pos_;
      while (is_digit(pos_)) ++pos_;
    }
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) throw parse_error("malformed number", start);
    return polynomial::constant(dim_, *value);
  }

  polynomial identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9')
      return polynomial::variable(dim_, static_cast<std::size_t>(name[1] - '1'));
    if (name.size() == 1) {
      auto it = params_.find(name);
      if (it == params_.end()) throw parse_error("unbound parameter '" + name + "'", start);
      return polynomial::constant(dim_, it->second);
    }
    throw parse_error("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  const bindings& params_;
  std::size_t pos_ = 0;
  std::size_t dim_ = 0;
};

}  // namespace detail

/// Parses a general polynomial. The dimension is the largest variable
/// index used, raised to `min_dimension` if that is larger.
inline polynomial parse_polynomial(std::string_view text, const bindings& params = {},
                                   std::size_t min_dimension = 1) {
  return detail::polynomial_parser(text, params).run(min_dimension);
}

/// Parses an operator symbol; m is inferred from the common degree.
inline symbol_polynomial parse(std::string_view text, const bindings& params = {},
                               std::size_t min_dimension = 1) {
  return symbol_polynomial(parse_polynomial(text, params, min_dimension));
}

/// Canonical text form, graded-lex term order.
inline std::string to_string(const polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    const bool negative = c < 0;
    const rational mag = negative ? rational(-c) : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;

    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (any) mono << '*';
      mono << 'x' << (i + 1);
      if (a[i] > 1) mono << '^' << a[i];
      any = true;
    }
    if (!any)
      out << to_string(mag);
    else if (mag == 1)
      out << mono.str();
    else
      out << to_string(mag) << '*' << mono.str();
  }
  return out.str();
}

inline std::string to_string(const symbol_polynomial& s) { return to_string(s.poly()); }

}  // namespace frellich
