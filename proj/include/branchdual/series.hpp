// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "branchdual/error.hpp"
#include "branchdual/rational.hpp"

namespace branchdual {

// Element of k[[t]] known modulo t^(trunc+1). Holds exactly trunc+1 coefficients.
class Series {
 public:
  Series() : Series(0) {}
  explicit Series(int trunc);
  Series(std::vector<Rational> coeffs, int trunc);

  static Series monomial(int exponent, int trunc, const Rational& coeff = 1);

  int trunc() const { return trunc_; }
  const Rational& coeff(int i) const;
  void set_coeff(int i, Rational value);
  std::span<const Rational> coefficients() const { return coeffs_; }

  // Least exponent with a nonzero coefficient; nullopt means "zero modulo t^(trunc+1)".
  std::optional<int> order() const;
  bool is_zero() const { return !order(); }
  // Highest exponent with a nonzero coefficient, -1 for zero.
  int degree() const;

  // Re-declares the truncation order without changing known coefficients. Padding
  // with zeros is only sound when the caller knows the series to be a polynomial.
  Series with_trunc(int trunc) const;

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& scalar);
  // Adds scalar*other in place; the truncation becomes the minimum of both.
  void add_scaled(const Rational& scalar, const Series& other);

  bool operator==(const Series& other) const = default;

 private:
  std::vector<Rational> coeffs_;
  int trunc_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Rational& scalar, Series f);

// Product with trunc = min(trunc f, trunc g).
Series mul(const Series& f, const Series& g);
inline Series operator*(const Series& f, const Series& g) { return mul(f, g); }

// [f]_{<=s}; throws PrecisionExhausted if s > trunc(f).
Series truncate(const Series& f, int s);

// f(h(t)) by Horner evaluation. h must have zero constant term. The result
// carries the largest truncation justified by the precision of f and h.
Series compose(const Series& f, const Series& h);

// q with q*v = f; v(0) must be nonzero.
Series divide_by_unit(const Series& f, const Series& v);

// u^(1/k) for a unit with u(0) = 1, the branch with constant term 1.
Series unit_root(const Series& u, int k);

// Element of k[u]; u acts on k[[t]] as d/dt.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(std::vector<Rational> coeffs);
  static DiffOp monomial(int degree, const Rational& coeff = 1);

  // -1 for the zero operator.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int i) const;
  std::span<const Rational> coefficients() const { return coeffs_; }
  // Least degree with a nonzero coefficient, nullopt for zero.
  std::optional<int> low_degree() const;

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  DiffOp& operator*=(const Rational& scalar);

  bool operator==(const DiffOp& other) const = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

DiffOp operator+(DiffOp a, const DiffOp& b);
DiffOp operator-(DiffOp a, const DiffOp& b);
DiffOp operator*(const Rational& scalar, DiffOp g);

// g o f = sum_i g_i d^i f / dt^i, with trunc(f) - deg(g) orders of precision left.
Series apply(const DiffOp& g, const Series& f);

// (g o f)(0) = sum_i g_i i! f_i.
Rational perp(const DiffOp& g, const Series& f);

}  // namespace branchdual
