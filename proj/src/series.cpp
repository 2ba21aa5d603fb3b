// SPDX-License-Identifier: Apache-2.0
#include "branchdual/series.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "branchdual/error.hpp"

namespace branchdual {

namespace {

const Rational& zero_rational() {
  static const Rational zero(0);
  return zero;
}

}  // namespace

Series::Series(int trunc) : coeffs_(static_cast<std::size_t>(std::max(trunc, 0)) + 1), trunc_(trunc) {
  if (trunc < 0) throw InvalidArgument("series truncation must be non-negative");
}

Series::Series(std::vector<Rational> coeffs, int trunc) : coeffs_(std::move(coeffs)), trunc_(trunc) {
  if (trunc < 0) throw InvalidArgument("series truncation must be non-negative");
  coeffs_.resize(static_cast<std::size_t>(trunc) + 1);
}

Series Series::monomial(int exponent, int trunc, const Rational& coeff) {
  if (exponent < 0) throw InvalidArgument("negative exponent");
  Series s(trunc);
  if (exponent <= trunc) s.coeffs_[static_cast<std::size_t>(exponent)] = coeff;
  return s;
}

const Rational& Series::coeff(int i) const {
  if (i < 0 || i > trunc_) return zero_rational();
  return coeffs_[static_cast<std::size_t>(i)];
}

void Series::set_coeff(int i, Rational value) {
  if (i < 0 || i > trunc_)
    throw PrecisionExhausted("coefficient t^" + std::to_string(i) + " is beyond the known precision", i);
  coeffs_[static_cast<std::size_t>(i)] = std::move(value);
}

std::optional<int> Series::order() const {
  for (int i = 0; i <= trunc_; ++i)
    if (!branchdual::is_zero(coeffs_[static_cast<std::size_t>(i)])) return i;
  return std::nullopt;
}

int Series::degree() const {
  for (int i = trunc_; i >= 0; --i)
    if (!branchdual::is_zero(coeffs_[static_cast<std::size_t>(i)])) return i;
  return -1;
}

Series Series::with_trunc(int trunc) const { return Series(coeffs_, trunc); }

Series& Series::operator+=(const Series& other) {
  add_scaled(Rational(1), other);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  add_scaled(Rational(-1), other);
  return *this;
}

Series& Series::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

void Series::add_scaled(const Rational& scalar, const Series& other) {
  if (other.trunc_ < trunc_) {
    trunc_ = other.trunc_;
    coeffs_.resize(static_cast<std::size_t>(trunc_) + 1);
  }
  if (branchdual::is_zero(scalar)) return;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!branchdual::is_zero(other.coeffs_[i])) coeffs_[i] += scalar * other.coeffs_[i];
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(const Rational& scalar, Series f) { return f *= scalar; }

Series mul(const Series& f, const Series& g) {
  const int n = std::min(f.trunc(), g.trunc());
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  const auto fc = f.coefficients();
  const auto gc = g.coefficients();
  std::vector<int> g_support;
  for (int j = 0; j <= n; ++j)
    if (!is_zero(gc[static_cast<std::size_t>(j)])) g_support.push_back(j);
  for (int i = 0; i <= n; ++i) {
    const Rational& a = fc[static_cast<std::size_t>(i)];
    if (is_zero(a)) continue;
    for (int j : g_support) {
      if (i + j > n) break;
      out[static_cast<std::size_t>(i + j)] += a * gc[static_cast<std::size_t>(j)];
    }
  }
  return Series(std::move(out), n);
}

Series truncate(const Series& f, int s) {
  if (s < 0) throw InvalidArgument("negative truncation order");
  if (s > f.trunc())
    throw PrecisionExhausted("cannot truncate at t^" + std::to_string(s) + ": series known only modulo t^" +
                                 std::to_string(f.trunc() + 1),
                             s);
  return f.with_trunc(s);
}

Series compose(const Series& f, const Series& h) {
  if (!is_zero(h.coeff(0))) throw InvalidArgument("substituted series must have zero constant term");
  const int v = h.order().value_or(h.trunc() + 1);
  // Unknown tail of f lies in t^((trunc f + 1) v); the unknown tail of h first
  // enters through the lowest power h^m with f_m != 0, m >= 1.
  long long bound = static_cast<long long>(f.trunc() + 1) * v - 1;
  for (int m = 1; m <= f.trunc(); ++m) {
    if (is_zero(f.coeff(m))) continue;
    bound = std::min(bound, static_cast<long long>(h.trunc()) + static_cast<long long>(m - 1) * v);
    break;
  }
  if (bound > std::numeric_limits<int>::max() / 2) throw InvalidArgument("composition precision overflow");
  const int n = static_cast<int>(bound);
  // Evaluating at the known polynomial part of h is exact up to the bound above.
  const Series hw = h.with_trunc(n);
  const int top = std::min(f.trunc(), n / std::max(v, 1));
  Series result(n);
  for (int i = top; i >= 0; --i) {
    if (i != top) result = mul(result, hw);
    result.set_coeff(0, result.coeff(0) + f.coeff(i));
  }
  return result;
}

Series divide_by_unit(const Series& f, const Series& v) {
  if (is_zero(v.coeff(0))) throw InvalidArgument("divisor is not a unit (zero constant term)");
  const int n = std::min(f.trunc(), v.trunc());
  const Rational inv = 1 / v.coeff(0);
  std::vector<Rational> q(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Rational acc = f.coeff(k);
    for (int j = 1; j <= k; ++j)
      if (!is_zero(v.coeff(j)) && !is_zero(q[static_cast<std::size_t>(k - j)]))
        acc -= v.coeff(j) * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc * inv;
  }
  return Series(std::move(q), n);
}

Series unit_root(const Series& u, int k) {
  if (k < 1) throw InvalidArgument("root index must be positive");
  if (u.coeff(0) != 1) throw InvalidArgument("unit_root expects constant term 1");
  const int n = u.trunc();
  const Rational alpha(1, k);
  std::vector<Rational> w(static_cast<std::size_t>(n) + 1);
  w[0] = 1;
  // u w' = alpha u' w, solved coefficientwise.
  for (int m = 1; m <= n; ++m) {
    Rational acc;
    for (int j = 1; j <= m; ++j) {
      if (is_zero(u.coeff(j))) continue;
      acc += ((alpha + 1) * j - m) * u.coeff(j) * w[static_cast<std::size_t>(m - j)];
    }
    w[static_cast<std::size_t>(m)] = acc / m;
  }
  return Series(std::move(w), n);
}

DiffOp::DiffOp(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

DiffOp DiffOp::monomial(int degree, const Rational& coeff) {
  if (degree < 0) throw InvalidArgument("negative degree");
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coeff;
  return DiffOp(std::move(c));
}

Rational DiffOp::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

std::optional<int> DiffOp::low_degree() const {
  for (int i = 0; i <= degree(); ++i)
    if (!branchdual::is_zero(coeffs_[static_cast<std::size_t>(i)])) return i;
  return std::nullopt;
}

void DiffOp::trim() {
  while (!coeffs_.empty() && branchdual::is_zero(coeffs_.back())) coeffs_.pop_back();
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
DiffOp operator*(const Rational& scalar, DiffOp g) { return g *= scalar; }

namespace {

void require_precision(const DiffOp& g, const Series& f) {
  if (f.trunc() < g.degree())
    throw PrecisionExhausted("operator of degree " + std::to_string(g.degree()) +
                                 " needs the series modulo t^" + std::to_string(g.degree() + 1),
                             g.degree());
}

}  // namespace

Series apply(const DiffOp& g, const Series& f) {
  require_precision(g, f);
  const int d = std::max(g.degree(), 0);
  const int n = f.trunc() - d;
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= g.degree(); ++i) {
    const Rational& gi = g.coefficients()[static_cast<std::size_t>(i)];
    if (is_zero(gi)) continue;
    for (int k = 0; k <= n; ++k) {
      const Rational& fk = f.coeff(k + i);
      if (is_zero(fk)) continue;
      // d^i t^(k+i) = (k+i)!/k! t^k
      out[static_cast<std::size_t>(k)] += gi * fk * Rational(factorial(k + i), factorial(k));
    }
  }
  return Series(std::move(out), n);
}

Rational perp(const DiffOp& g, const Series& f) {
  require_precision(g, f);
  Rational acc;
  for (int i = 0; i <= g.degree(); ++i) {
    const Rational& gi = g.coefficients()[static_cast<std::size_t>(i)];
    if (is_zero(gi) || is_zero(f.coeff(i))) continue;
    acc += gi * f.coeff(i) * factorial(i);
  }
  return acc;
}

}  // namespace branchdual
