// SPDX-License-Identifier: Apache-2.0
#include "branchdual/inverse_system.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "series_echelon.hpp"

namespace branchdual {

using detail::SeriesEchelon;

int InverseSystem::max_degree() const {
  int d = -1;
  for (const auto& g : basis) d = std::max(d, g.degree());
  return d;
}

namespace {

QVector op_vector(const DiffOp& g, int top) {
  QVector v(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= g.degree(); ++i) v[static_cast<std::size_t>(i)] = g.coeff(i);
  return v;
}

Series as_series(const QVector& v, int trunc) {
  return Series(std::vector<Rational>(v.begin(), v.end()), trunc);
}

}  // namespace

InverseSystem make_inverse_system(const std::vector<DiffOp>& ops, int conductor_bound) {
  InverseSystem out;
  out.conductor_bound = conductor_bound;
  int top = 0;
  for (const auto& g : ops) top = std::max(top, g.degree());
  std::vector<QVector> rows;
  for (const auto& g : ops)
    if (!g.is_zero()) rows.push_back(op_vector(g, top));
  if (rows.empty()) return out;
  // Columns ordered by increasing degree: rref pivots are the lowest-degree terms.
  for (auto& r : row_basis(rows, static_cast<std::size_t>(top) + 1)) out.basis.emplace_back(std::move(r));
  return out;
}

bool in_span(const DiffOp& g, const InverseSystem& v) {
  DiffOp rest = g;
  for (const auto& b : v.basis) {
    const int pivot = *b.low_degree();
    const Rational c = rest.coeff(pivot);
    if (!is_zero(c)) rest -= c * b;
  }
  return rest.is_zero();
}

bool contains(const InverseSystem& outer, const InverseSystem& inner) {
  return std::all_of(inner.basis.begin(), inner.basis.end(),
                     [&](const DiffOp& g) { return in_span(g, outer); });
}

std::vector<Series> natural_set(const AlgebraInput& a, int d) {
  if (d < 0) return {};
  std::vector<Series> gens;
  std::vector<int> orders;
  for (const auto& f : a.gens) {
    if (f.trunc() < d)
      throw PrecisionExhausted("generator known only modulo t^" + std::to_string(f.trunc() + 1) +
                                   ", natural set needs t^" + std::to_string(d + 1),
                               d);
    const Series t = f.with_trunc(d);
    const auto o = t.order();
    if (!o) continue;
    if (*o == 0) throw InvalidArgument("generators must have zero constant term");
    gens.push_back(t);
    orders.push_back(*o);
  }
  std::vector<std::pair<int, Series>> found;
  std::function<void(std::size_t, const Series&, int)> extend = [&](std::size_t from, const Series& prod,
                                                                    int order) {
    for (std::size_t j = from; j < gens.size(); ++j) {
      if (order + orders[j] > d) continue;
      Series next = mul(prod, gens[j]);
      const auto o = next.order();
      if (!o) continue;
      found.emplace_back(*o, next);
      extend(j, next, order + orders[j]);
    }
  };
  extend(0, Series::monomial(0, d), 0);
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Series> out;
  for (auto& [order, f] : found) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Series& g) { return g == f; });
    if (!seen) out.push_back(std::move(f));
  }
  return out;
}

InverseSystem inverse_system(const AlgebraInput& a, const Staircase& s) {
  const int c = s.conductor;
  if (c <= 1) {
    if (s.delta != 0) throw InternalError("staircase with conductor <= 1 but positive delta");
    return InverseSystem{{}, c};
  }
  // Unknowns: coefficients of u^1 .. u^(c-1).
  const auto hs = natural_set(a, c - 1);
  QMatrix m(hs.size(), static_cast<std::size_t>(c - 1));
  for (std::size_t r = 0; r < hs.size(); ++r)
    for (int i = 1; i <= c - 1; ++i)
      if (!is_zero(hs[r].coeff(i))) m(r, static_cast<std::size_t>(i - 1)) = hs[r].coeff(i) * factorial(i);
  std::vector<DiffOp> ops;
  for (const auto& v : nullspace(m)) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(c));
    for (int i = 1; i <= c - 1; ++i) coeffs[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i - 1)];
    ops.emplace_back(std::move(coeffs));
  }
  InverseSystem out = make_inverse_system(ops, c);
  if (static_cast<int>(out.dim()) != s.delta)
    throw InternalError("inverse system has dimension " + std::to_string(out.dim()) + " but delta is " +
                        std::to_string(s.delta));
  return out;
}

AFCertificate is_algebra_forming(const std::vector<DiffOp>& v, const Staircase& s, const AlgebraInput& a,
                                 int degree_bound) {
  std::vector<DiffOp> ops;
  int top = -1;
  for (const auto& g : v) {
    if (!is_zero(g.coeff(0)))
      throw InvalidArgument("operators in an algebra-forming space must have zero constant term");
    if (g.is_zero()) continue;
    ops.push_back(g);
    top = std::max(top, g.degree());
  }
  AFCertificate cert;
  const int d = std::max({degree_bound, s.conductor - 1, top + 1});
  cert.degree_bound = d;
  if (ops.empty()) return cert;

  const auto hs = natural_set(a, d);
  cert.generators = hs.size();
  const std::size_t m = hs.size();
  QMatrix lin(ops.size(), m);
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) lin(i, j) = perp(ops[i], hs[j]);
  const auto solutions = nullspace(lin);
  cert.linear_solutions = solutions.size();
  if (solutions.empty()) return cert;

  // Quadric i: Q_i[j][l] = g_i . (h_j h_l).
  std::vector<QMatrix> quadrics(ops.size(), QMatrix(m, m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = j; l < m; ++l) {
      const Series prod = mul(hs[j], hs[l]);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const Rational q = perp(ops[i], prod);
        quadrics[i](j, l) = q;
        quadrics[i](l, j) = q;
      }
    }

  auto combination = [&](const QVector& lambda) {
    Series f(d);
    for (std::size_t j = 0; j < m; ++j)
      if (!is_zero(lambda[j])) f.add_scaled(lambda[j], hs[j]);
    return f;
  };
  const std::size_t p = solutions.size();
  for (const auto& q : quadrics) {
    std::vector<QVector> qw;
    for (const auto& w : solutions) qw.push_back(q * w);
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = x; y < p; ++y) {
        Rational polar;
        for (std::size_t j = 0; j < m; ++j)
          if (!is_zero(solutions[x][j]) && !is_zero(qw[y][j])) polar += solutions[x][j] * qw[y][j];
        if (is_zero(polar)) continue;
        cert.verdict = false;
        if (x == y) {
          cert.witness = combination(solutions[x]);
        } else {
          // q(w_x) = q(w_y) = 0 here, so q(w_x + w_y) = 2 polar(w_x, w_y) != 0.
          QVector sum = solutions[x];
          for (std::size_t j = 0; j < m; ++j) sum[j] += solutions[y][j];
          cert.witness = combination(sum);
        }
        return cert;
      }
  }
  return cert;
}

namespace {

// Span of B modulo t^n: the staircase elements and t^c .. t^(n-1).
std::vector<Series> span_modulo(const Staircase& s, int n) {
  std::vector<Series> out;
  for (std::size_t k = 0; k < s.values.size(); ++k) out.push_back(s.element(k, n - 1));
  for (int j = s.conductor; j < n; ++j) out.push_back(Series::monomial(j, n - 1));
  return out;
}

// Positive-order part of the span of B modulo t^n, plus products of pairs.
std::vector<Series> maximal_ideal_modulo(const Staircase& s, int n) {
  std::vector<Series> out;
  for (auto& f : span_modulo(s, n))
    if (f.order().value_or(0) > 0) out.push_back(std::move(f));
  return out;
}

std::vector<Series> square_of_maximal_ideal_modulo(const Staircase& s, int n) {
  const auto m = maximal_ideal_modulo(s, n);
  std::vector<Series> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      if (*m[i].order() + *m[j].order() >= n) continue;
      out.push_back(mul(m[i], m[j]));
    }
  return out;
}

}  // namespace

Staircase annihilator(const std::vector<DiffOp>& v, const Staircase& s) {
  const AFCertificate cert = is_algebra_forming(v, s, generators_of(s));
  if (!cert.verdict) throw NotAlgebraForming(cert);
  int top = -1;
  for (const auto& g : v) top = std::max(top, g.degree());
  if (top < 0) return s;

  const int n = std::max(s.conductor, top + 1);
  const auto span = span_modulo(s, n);
  QMatrix m(v.size(), span.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < span.size(); ++k) m(i, k) = perp(v[i], span[k]);
  SeriesEchelon echelon(n - 1);
  for (const auto& w : nullspace(m)) {
    Series f(n - 1);
    for (std::size_t k = 0; k < span.size(); ++k)
      if (!is_zero(w[k])) f.add_scaled(w[k], span[k]);
    echelon.insert(std::move(f));
  }
  // Everything from t^n on is annihilated, so the conductor is the start of the
  // final run of pivots below n.
  int conductor = n;
  while (conductor > 0 && echelon.has_pivot(conductor - 1)) --conductor;
  Staircase result = detail::staircase_from_echelon(echelon, conductor);

  // Re-close: an algebra-forming V must give a span that is already an algebra.
  ClosureOptions opts;
  opts.initial_trunc = result.conductor + result.e0 + 1;
  opts.trunc_ceiling = std::max(kDefaultTruncCeiling, opts.initial_trunc);
  Staircase reclosed = closure(generators_of(result, opts.initial_trunc), opts);
  if (!(reclosed == result)) throw InternalError("annihilator of an algebra-forming space is not closed");
  return result;
}

bool is_derivation(const DiffOp& g, const Staircase& s) {
  if (!is_zero(g.coeff(0))) return false;
  if (g.is_zero()) return true;
  const int n = g.degree() + 1;
  for (const auto& f : square_of_maximal_ideal_modulo(s, n))
    if (!is_zero(perp(g, f))) return false;
  return true;
}

namespace {

// Elements of m_B at the values not reached by m_B^2, all modulo t^n.
std::vector<Series> cotangent_lifts(const Staircase& s, int n, const std::vector<Series>& squares) {
  SeriesEchelon sq(n - 1);
  for (const auto& f : squares) sq.insert(f);
  std::vector<Series> out;
  for (auto& f : maximal_ideal_modulo(s, n))
    if (!sq.has_pivot(*f.order())) out.push_back(std::move(f));
  return out;
}

}  // namespace

DerivationSpace derivation_space(const Staircase& s) {
  // t^(c+e0) k[[t]] lies in m_B^2, so operators of degree < c + e0 + 1 suffice.
  const int n = s.conductor + s.e0 + 1;
  const auto squares = square_of_maximal_ideal_modulo(s, n);
  DerivationSpace out;
  out.cotangent_basis = cotangent_lifts(s, n, squares);
  std::vector<Series> rows{Series::monomial(0, n - 1)};
  rows.insert(rows.end(), squares.begin(), squares.end());
  rows.insert(rows.end(), out.cotangent_basis.begin(), out.cotangent_basis.end());
  QMatrix m(rows.size(), static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int i = 0; i < n; ++i)
      if (!is_zero(rows[r].coeff(i))) m(r, static_cast<std::size_t>(i)) = rows[r].coeff(i) * factorial(i);
  const std::size_t fixed = 1 + squares.size();
  for (std::size_t j = 0; j < out.cotangent_basis.size(); ++j) {
    QVector b(rows.size());
    b[fixed + j] = 1;
    const auto sol = solve(m, b);
    if (!sol) throw InternalError("cotangent lifts are not independent modulo m_B^2");
    out.functionals.emplace_back(sol->particular);
  }
  return out;
}

namespace {

bool algebra_contains(const Staircase& outer, const Staircase& inner) {
  const int n = std::max(outer.conductor, inner.conductor);
  for (const auto& f : span_modulo(inner, std::max(n, 1)))
    if (!membership(f, outer)) return false;
  return true;
}

InverseSystem perp_of(const Staircase& s) {
  return inverse_system(generators_of(s, std::max(s.conductor + s.e0, 1)), s);
}

}  // namespace

CuttingDerivation cutting_derivation(const Staircase& c, const Staircase& b) {
  if (!algebra_contains(b, c)) throw InvalidArgument("the smaller algebra is not contained in the larger one");
  if (c.delta != b.delta + 1) throw InvalidArgument("the algebras do not differ by codimension one");
  const InverseSystem c_perp = perp_of(c);
  const InverseSystem b_perp = perp_of(b);

  // C-perp = B-perp + <g>; take the representative reduced against B-perp.
  DiffOp g;
  for (const auto& candidate : c_perp.basis) {
    DiffOp rest = candidate;
    for (const auto& e : b_perp.basis) {
      const Rational k = rest.coeff(*e.low_degree());
      if (!is_zero(k)) rest -= k * e;
    }
    if (!rest.is_zero()) {
      g = Rational(1 / rest.coeff(*rest.low_degree())) * rest;
      break;
    }
  }
  if (g.is_zero()) throw InternalError("inverse systems of nested algebras coincide");

  CuttingDerivation cut;
  cut.functional = g;
  const int n = std::max({b.conductor + b.e0 + 1, c.conductor, g.degree() + 1});
  Series l(std::vector<Rational>(g.coefficients().begin(), g.coefficients().end()), n - 1);
  if (!is_zero(l.coeff(0)) || !membership(l, b)) {
    // Fall back to the element of B at the value that C lacks.
    int missing = 0;
    while (c.is_value(missing) || !b.is_value(missing)) ++missing;
    l = Series::monomial(missing, n - 1);
    for (std::size_t k = 0; k < b.values.size(); ++k)
      if (b.values[k] == missing) l = b.element(k, n - 1);
  }
  cut.element = l;

  const auto squares = square_of_maximal_ideal_modulo(b, n);
  cut.cotangent_basis = cotangent_lifts(b, n, squares);
  for (const auto& f : cut.cotangent_basis) cut.cotangent_values.push_back(perp(g, f));

  // alpha kills m_B^2 and C, and is nonzero on l.
  for (const auto& f : squares)
    if (!is_zero(perp(g, f))) throw InternalError("cutting functional does not vanish on m_B^2");
  for (const auto& f : span_modulo(c, n))
    if (!is_zero(perp(g, f))) throw InternalError("cutting functional does not vanish on the subalgebra");
  if (is_zero(perp(g, l))) throw InternalError("cutting functional vanishes on the complement element");
  return cut;
}

Filtration standard_filtration(const AlgebraInput& a, const ClosureOptions& options) {
  Filtration filt;
  filt.base = closure(a, options);
  std::vector<int> gaps(filt.base.gaps.rbegin(), filt.base.gaps.rend());
  Staircase current = filt.base;
  for (int gap : gaps) {
    AlgebraInput next = generators_of(current, current.conductor + current.e0 + 1);
    next.gens.push_back(Series::monomial(gap, current.conductor + current.e0 + 1));
    ClosureOptions opts = options;
    opts.initial_trunc = current.conductor + current.e0 + 1;
    Staircase bigger = closure(next, opts);
    if (bigger.delta != current.delta - 1)
      throw InternalError("adjoining t^" + std::to_string(gap) + " did not lower the codimension by one");
    FiltrationStep step;
    step.gap_exponent = gap;
    step.cut = cutting_derivation(current, bigger);
    step.algebra = bigger;
    filt.steps.push_back(std::move(step));
    current = std::move(bigger);
  }
  if (current.delta != 0) throw InternalError("standard filtration did not end at k[[t]]");
  return filt;
}

QMatrix transport_matrix(const Series& h, int c) {
  if (c < 1) throw InvalidArgument("transport needs a positive bound c");
  if (h.order() != 1) throw InvalidArgument("h must be a uniformizer (order exactly 1)");
  if (h.trunc() < c - 1)
    throw PrecisionExhausted("h must be known modulo t^" + std::to_string(c), c - 1);
  const Series hw = h.with_trunc(c - 1);
  QMatrix m(static_cast<std::size_t>(c), static_cast<std::size_t>(c));
  Series power = Series::monomial(0, c - 1);
  for (int i = 0; i < c; ++i) {
    for (int r = 0; r < c; ++r) m(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) = power.coeff(r);
    power = mul(power, hw);
  }
  return m;
}

namespace {

void require_degree_below(const InverseSystem& v, int c) {
  if (v.max_degree() > c - 1)
    throw InvalidArgument("operator degree exceeds c - 1 = " + std::to_string(c - 1));
}

// Coordinates in the dual basis u^i / i!.
QVector dual_coordinates(const DiffOp& g, int c) {
  QVector y(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i) y[static_cast<std::size_t>(i)] = g.coeff(i) * factorial(i);
  return y;
}

DiffOp from_dual_coordinates(const QVector& x) {
  std::vector<Rational> coeffs(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) coeffs[j] = x[j] / factorial(static_cast<int>(j));
  return DiffOp(std::move(coeffs));
}

}  // namespace

Transport transport_dual(const Series& h, int c, const InverseSystem& v2) {
  require_degree_below(v2, c);
  Transport t{transport_matrix(h, c), {}};
  const QMatrix mt = t.matrix.transposed();
  std::vector<DiffOp> image;
  for (const auto& g : v2.basis) image.push_back(from_dual_coordinates(mt * dual_coordinates(g, c)));
  t.image = make_inverse_system(image, c);
  return t;
}

Transport transport_dual_inverse(const Series& h, int c, const InverseSystem& v1) {
  require_degree_below(v1, c);
  Transport t{transport_matrix(h, c), {}};
  const QMatrix mt = t.matrix.transposed();
  std::vector<DiffOp> image;
  for (const auto& g : v1.basis) {
    const auto sol = solve(mt, dual_coordinates(g, c));
    if (!sol) throw InternalError("transport matrix is singular");
    image.push_back(from_dual_coordinates(sol->particular));
  }
  t.image = make_inverse_system(image, c);
  return t;
}

DualityCheck verify_duality(const AlgebraInput& a, const ClosureOptions& options) {
  DualityCheck check;
  const Staircase s = closure(a, options);
  const InverseSystem v = inverse_system(a, s);
  const int c = s.conductor;
  check.dimension_matches = static_cast<int>(v.dim()) == s.delta;
  check.top_degree_matches = s.delta == 0 || v.max_degree() == c - 1;
  if (c == 0) {
    check.round_trip = v.dim() == 0;
    return check;
  }
  // Ann(V) modulo t^c: unknown coefficients of t^0 .. t^(c-1).
  QMatrix m(v.dim(), static_cast<std::size_t>(c));
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (int j = 0; j < c; ++j)
      m(r, static_cast<std::size_t>(j)) = v.basis[r].coeff(j) * factorial(j);
  const auto kernel = nullspace(m);
  if (kernel.empty()) return check;
  const auto reduced = row_basis(kernel, static_cast<std::size_t>(c));
  bool same = reduced.size() == s.basis.size();
  for (std::size_t k = 0; same && k < reduced.size(); ++k) same = as_series(reduced[k], c - 1) == s.basis[k];
  check.round_trip = same;
  return check;
}

LaurentTail rosenlicht(const DiffOp& g, int c) {
  if (g.degree() > c - 1) throw InvalidArgument("operator degree exceeds c - 1");
  LaurentTail alpha;
  alpha.conductor = c;
  alpha.coeffs.resize(static_cast<std::size_t>(std::max(c, 0)));
  for (int i = 0; i < c; ++i) alpha.coeffs[static_cast<std::size_t>(i)] = g.coeff(i) * factorial(i);
  return alpha;
}

Rational residue(const Series& f, const LaurentTail& alpha) {
  const int c = alpha.conductor;
  if (c > 0 && f.trunc() < c - 1)
    throw PrecisionExhausted("residue needs the series modulo t^" + std::to_string(c), c - 1);
  Rational acc;
  for (int i = 0; i < c; ++i)
    if (!is_zero(f.coeff(i)) && !is_zero(alpha.coeffs[static_cast<std::size_t>(i)]))
      acc += f.coeff(i) * alpha.coeffs[static_cast<std::size_t>(i)];
  return acc;
}

}  // namespace branchdual
