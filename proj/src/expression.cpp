// SPDX-License-Identifier: Apache-2.0
#include "branchdual/expression.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace branchdual {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  Expression parse(int trunc_ceiling) {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == text_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      if (peek() == 'O') {
        if (sign < 0) fail("order term cannot be negated");
        parse_order();
        skip();
        if (pos_ != text_.size()) fail("order term must come last");
        break;
      }
      parse_term(sign);
    }
    return build(trunc_ceiling);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  int exponent() {
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 6) {
      pos_ = at;
      fail("exponent too large");
    }
    return std::stoi(d);
  }

  void note_variable(char v) {
    if (variable_ && *variable_ != v) fail("mixed variables t and u");
    variable_ = v;
  }

  void parse_term(int sign) {
    skip();
    Rational c = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      has_coeff = true;
      const std::string num = digits();
      skip();
      if (peek() == '/') {
        ++pos_;
        const std::size_t at = pos_;
        const std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) {
          pos_ = at;
          fail("zero denominator");
        }
        c = Rational(Integer(num), Integer(den));
        c.canonicalize();
      } else {
        c = Rational(Integer(num));
      }
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (peek() != 't' && peek() != 'u') fail("expected t or u after '*'");
      }
    }
    int exp = 0;
    if (peek() == 't' || peek() == 'u') {
      note_variable(peek());
      ++pos_;
      skip();
      exp = 1;
      if (peek() == '^') {
        ++pos_;
        exp = exponent();
      }
    } else if (!has_coeff) {
      fail(peek() == '\0' ? "unexpected end of expression" : std::string("unexpected character '") + peek() + "'");
    }
    terms_[exp] += sign * c;
  }

  void parse_order() {
    ++pos_;
    skip();
    if (peek() != '(') fail("expected '(' after O");
    ++pos_;
    skip();
    if (peek() != 't') fail(peek() == 'u' ? "order term only applies to series in t" : "expected t");
    note_variable('t');
    ++pos_;
    skip();
    int n = 1;
    if (peek() == '^') {
      ++pos_;
      n = exponent();
    }
    skip();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    if (n < 1) fail("order term needs a positive exponent");
    order_ = n;
  }

  Expression build(int trunc_ceiling) const {
    if (variable_ == 'u') {
      int top = -1;
      for (const auto& [e, c] : terms_)
        if (!is_zero(c)) top = std::max(top, e);
      std::vector<Rational> coeffs(static_cast<std::size_t>(top + 1));
      for (const auto& [e, c] : terms_)
        if (e <= top) coeffs[static_cast<std::size_t>(e)] = c;
      return DiffOp(std::move(coeffs));
    }
    int degree = -1;
    for (const auto& [e, c] : terms_)
      if (!is_zero(c)) degree = std::max(degree, e);
    const int trunc = order_ ? *order_ - 1 : std::max({trunc_ceiling, degree, 0});
    Series f(trunc);
    for (const auto& [e, c] : terms_)
      if (e <= trunc && !is_zero(c)) f.set_coeff(e, c);
    return f;
  }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
  std::optional<char> variable_;
  std::optional<int> order_;
  std::map<int, Rational> terms_;
};

std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view text, char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      out.emplace_back(text.substr(start, i - start), start);
      start = i + 1;
    }
  }
  return out;
}

std::string coefficient_prefix(const Rational& c, bool leading, bool bare) {
  std::string out;
  const bool negative = sgn(c) < 0;
  if (leading)
    out = negative ? "-" : "";
  else
    out = negative ? " - " : " + ";
  const Rational a = abs(c);
  if (bare) return out + to_string(a);
  if (a != 1) out += to_string(a) + " ";
  return out;
}

template <typename Coeffs>
std::string polynomial(const Coeffs& coeffs, char var) {
  std::string out;
  bool leading = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Rational& c = coeffs[i];
    if (is_zero(c)) continue;
    out += coefficient_prefix(c, leading, i == 0);
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
    leading = false;
  }
  return leading ? "0" : out;
}

}  // namespace

Expression parse_expression(std::string_view text, int trunc_ceiling) {
  return Parser(text, 0).parse(trunc_ceiling);
}

Series parse_series(std::string_view text, int trunc_ceiling) {
  auto e = parse_expression(text, trunc_ceiling);
  if (auto* f = std::get_if<Series>(&e)) return std::move(*f);
  throw ParseError("expected a series in t", 0);
}

DiffOp parse_diffop(std::string_view text) {
  auto e = parse_expression(text);
  if (auto* g = std::get_if<DiffOp>(&e)) return std::move(*g);
  const auto& f = std::get<Series>(e);
  if (f.degree() > 0) throw ParseError("expected an operator in u", 0);
  // A bare constant.
  return DiffOp(std::vector<Rational>{f.coeff(0)});
}

std::vector<Series> parse_series_list(std::string_view text, char sep, int trunc_ceiling) {
  std::vector<Series> out;
  for (const auto& [piece, offset] : split(text, sep)) {
    auto e = Parser(piece, offset).parse(trunc_ceiling);
    auto* f = std::get_if<Series>(&e);
    if (!f) throw ParseError("expected a series in t", offset);
    out.push_back(std::move(*f));
  }
  return out;
}

std::vector<DiffOp> parse_diffop_list(std::string_view text, char sep) {
  std::vector<DiffOp> out;
  for (const auto& [piece, offset] : split(text, sep)) {
    auto e = Parser(piece, offset).parse(kDefaultTruncCeiling);
    if (auto* g = std::get_if<DiffOp>(&e)) {
      out.push_back(std::move(*g));
      continue;
    }
    const auto& f = std::get<Series>(e);
    if (f.degree() > 0) throw ParseError("expected an operator in u", offset);
    out.emplace_back(std::vector<Rational>{f.coeff(0)});
  }
  return out;
}

std::string to_expression(const Series& f, bool with_order) {
  const auto c = f.coefficients();
  std::string out = polynomial(c, 't');
  if (!with_order) return out;
  const std::string order = "O(t^" + std::to_string(f.trunc() + 1) + ")";
  return out == "0" ? order : out + " + " + order;
}

std::string to_expression(const DiffOp& g) { return polynomial(g.coefficients(), 'u'); }

std::string to_expression(const LaurentTail& alpha) {
  std::string out;
  bool leading = true;
  for (std::size_t i = 0; i < alpha.coeffs.size(); ++i) {
    const Rational& c = alpha.coeffs[i];
    if (is_zero(c)) continue;
    out += coefficient_prefix(c, leading, false);
    out += "t^-" + std::to_string(i + 1);
    leading = false;
  }
  return leading ? "0" : out;
}

}  // namespace branchdual
