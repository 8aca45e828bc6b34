#pragma once

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "corput/polynomial.hpp"
#include "corput/polynomial1d.hpp"

namespace corput {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

class PolyLexer {
 public:
  explicit PolyLexer(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char ch) {
    if (peek() != ch) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }

  double number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) fail("expected number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  int integer() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    int v = 0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) fail("expected integer");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  /// Variable index (zero-based). Accepts x1..xn; bare `x` and `t` name x1.
  int variable() {
    const char ch = peek();
    if (ch == 't') {
      ++pos_;
      return 0;
    }
    if (ch != 'x') fail("expected variable");
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return 0;
    const int k = integer();
    if (k < 1) fail("variable index must be >= 1");
    return k - 1;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

struct RawTerm {
  double coef = 1.0;
  std::vector<std::pair<int, int>> factors;  // (variable, power)
};

inline std::vector<RawTerm> parse_terms(std::string_view text, int& max_var) {
  PolyLexer lex(text);
  std::vector<RawTerm> out;
  max_var = -1;
  if (lex.done()) lex.fail("empty polynomial");
  bool first = true;
  while (!lex.done()) {
    RawTerm term;
    if (lex.accept('+')) {
    } else if (lex.accept('-')) {
      term.coef = -1.0;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;
    bool need_factor = true;
    while (need_factor) {
      const char ch = lex.peek();
      if (ch == 'x' || ch == 't') {
        const int v = lex.variable();
        int p = 1;
        if (lex.accept('^')) p = lex.integer();
        if (p < 0) lex.fail("negative power");
        term.factors.emplace_back(v, p);
        max_var = std::max(max_var, v);
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        term.coef *= lex.number();
      } else {
        lex.fail("expected factor");
      }
      need_factor = lex.accept('*');
    }
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace detail

/// Parses `3*x1^2*x2 - 2.5*x1 + 1`. The dimension is max(n, largest variable index).
inline Polynomial parse_polynomial(std::string_view text, int n = 0) {
  int max_var = -1;
  const auto raw = detail::parse_terms(text, max_var);
  const int dim = std::max({n, max_var + 1, 1});
  Polynomial p(dim);
  for (const auto& t : raw) {
    Exponent e(static_cast<std::size_t>(dim), 0);
    for (auto [v, pw] : t.factors) e[static_cast<std::size_t>(v)] += pw;
    p.add_term(e, t.coef);
  }
  return p;
}

/// Parses a univariate polynomial in t (or x, x1).
inline Polynomial1D parse_polynomial1d(std::string_view text) {
  const Polynomial p = parse_polynomial(text, 1);
  if (p.dimension() != 1) throw ParseError("univariate polynomial expected: '" + std::string(text) + "'");
  return as_univariate(p);
}

namespace detail {

inline std::string format_term(double coef, const std::string& monomial, bool leading) {
  std::string out;
  double mag = coef;
  if (coef < 0) {
    out += leading ? "-" : " - ";
    mag = -coef;
  } else if (!leading) {
    out += " + ";
  }
  if (monomial.empty()) return out + format_double(mag);
  if (mag != 1.0) out += format_double(mag) + "*";
  return out + monomial;
}

}  // namespace detail

/// Canonical text: terms in descending graded-lex order.
inline std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool leading = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::string mono;
    for (std::size_t k = 0; k < it->first.size(); ++k) {
      const int j = it->first[k];
      if (j == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(k + 1);
      if (j > 1) mono += "^" + std::to_string(j);
    }
    out += detail::format_term(it->second, mono, leading);
    leading = false;
  }
  return out;
}

inline std::string to_string(const Polynomial1D& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool leading = true;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p.coefficient(k);
    if (c == 0.0) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    out += detail::format_term(c, mono, leading);
    leading = false;
  }
  return out;
}

}  // namespace corput
