// SPDX-License-Identifier: Apache-2.0
#include "branchdual/subalgebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "branchdual/error.hpp"
#include "series_echelon.hpp"

namespace branchdual {

using detail::SeriesEchelon;

Series Staircase::element(std::size_t k, int trunc) const { return basis.at(k).with_trunc(trunc); }

bool Staircase::is_value(int v) const {
  if (v >= conductor) return true;
  return std::binary_search(values.begin(), values.end(), v);
}

namespace {

// Conductor of the numerical semigroup generated by gens (gcd must be 1).
int semigroup_conductor(const std::vector<int>& gens) {
  const int smallest = *std::min_element(gens.begin(), gens.end());
  std::vector<bool> member{true};
  int run = 0;
  for (int v = 1;; ++v) {
    bool in = false;
    for (int g : gens)
      if (g <= v && member[static_cast<std::size_t>(v - g)]) {
        in = true;
        break;
      }
    member.push_back(in);
    run = in ? run + 1 : 0;
    if (run == smallest) return v - smallest + 1;
  }
}

// Span of the algebra generated by gens, modulo t^(n+1): the smallest subspace
// containing 1 and stable under multiplication by every generator.
SeriesEchelon close_modulo(const std::vector<Series>& gens, int n) {
  SeriesEchelon echelon(n);
  std::vector<Series> truncated;
  std::vector<int> orders;
  for (const auto& g : gens) {
    Series t = g.trunc() >= n ? g.with_trunc(n) : g;
    const auto o = t.order();
    if (!o) continue;
    truncated.push_back(std::move(t));
    orders.push_back(*o);
  }
  std::deque<int> queue;
  if (auto p = echelon.insert(Series::monomial(0, n))) queue.push_back(*p);
  while (!queue.empty()) {
    const int pivot = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < truncated.size(); ++j) {
      if (pivot + orders[j] > n) continue;
      if (auto p = echelon.insert(mul(echelon.at(pivot), truncated[j]))) queue.push_back(*p);
    }
  }
  return echelon;
}

// True when every generator lies in k[[s]] for the series s of order g obtained
// as a root of the lowest-order generator, checked to the generators' precision.
// Any subalgebra whose values all share the divisor g lies in such a k[[s]], and
// s is determined by any one element of B.
bool lies_in_power_series_of_order(const std::vector<Series>& gens, int g) {
  const Series* base = nullptr;
  int base_order = 0;
  for (const auto& f : gens) {
    const int o = *f.order();
    if (!base || o < base_order) {
      base = &f;
      base_order = o;
    }
  }
  if (base_order % g != 0) return false;
  const int k = base_order / g;
  const int unit_trunc = base->trunc() - base_order;
  std::vector<Rational> unit(static_cast<std::size_t>(unit_trunc) + 1);
  const Rational lead = base->coeff(base_order);
  for (int j = 0; j <= unit_trunc; ++j) unit[static_cast<std::size_t>(j)] = base->coeff(base_order + j) / lead;
  const Series root = unit_root(Series(std::move(unit), unit_trunc), k);
  int precision = root.trunc() + g;
  for (const auto& f : gens) precision = std::min(precision, f.trunc());
  std::vector<Rational> sc(static_cast<std::size_t>(precision) + 1);
  for (int j = 0; j + g <= precision; ++j) sc[static_cast<std::size_t>(j + g)] = root.coeff(j);
  const Series s(std::move(sc), precision);

  std::vector<Series> powers{Series::monomial(0, precision)};
  auto power = [&](int m) -> const Series& {
    while (static_cast<int>(powers.size()) <= m) powers.push_back(mul(powers.back(), s));
    return powers[static_cast<std::size_t>(m)];
  };
  for (const auto& f : gens) {
    Series rest = f.with_trunc(precision);
    while (const auto v = rest.order()) {
      if (*v % g != 0) return false;
      rest.add_scaled(-Rational(rest.coeff(*v)), power(*v / g));
    }
  }
  return true;
}

}  // namespace

Staircase detail::staircase_from_echelon(const SeriesEchelon& echelon, int conductor) {
  Staircase s;
  s.conductor = conductor;
  s.work_trunc = echelon.trunc();
  s.e0 = 1;
  while (s.e0 < conductor && !echelon.has_pivot(s.e0)) ++s.e0;
  const int keep = std::max(conductor - 1, 0);
  SeriesEchelon low(keep);
  for (int v = 0; v < conductor; ++v) {
    if (!echelon.has_pivot(v)) {
      s.gaps.push_back(v);
      continue;
    }
    s.values.push_back(v);
  }
  // Terms at exponents >= c lie in B and are dropped; reduce among the low pivots.
  for (int v : s.values) low.insert(echelon.at(v).with_trunc(keep));
  low.fully_reduce();
  for (int v : s.values) s.basis.push_back(low.at(v));
  s.delta = static_cast<int>(s.gaps.size());
  return s;
}

Staircase closure(const AlgebraInput& a, const ClosureOptions& options) {
  if (a.gens.empty()) throw InvalidArgument("an algebra needs at least one generator");
  int gen_trunc = options.trunc_ceiling;
  int order_sum = 0;
  int min_order = 0;
  std::vector<int> orders;
  for (const auto& f : a.gens) {
    const auto o = f.order();
    if (!o)
      throw PrecisionExhausted("a generator vanishes modulo t^" + std::to_string(f.trunc() + 1) +
                                   "; its order is unknown",
                               f.trunc() + 1);
    if (*o == 0) throw InvalidArgument("generators must have zero constant term");
    gen_trunc = std::min(gen_trunc, f.trunc());
    order_sum += *o;
    orders.push_back(*o);
    min_order = min_order == 0 ? *o : std::min(min_order, *o);
  }
  const int cap = std::min(gen_trunc, options.trunc_ceiling);
  int order_gcd = 0;
  for (int o : orders) order_gcd = std::gcd(order_gcd, o);
  // The leading exponents alone already generate a semigroup whose conductor
  // bounds c; with gcd > 1 there is no such bound and we start from a guess.
  int n = options.initial_trunc;
  if (n <= 0) n = order_gcd == 1 ? semigroup_conductor(orders) + min_order - 1 : 4 * order_sum;
  n = std::max(1, std::min(n, cap));

  for (;;) {
    const SeriesEchelon echelon = close_modulo(a.gens, n);
    std::vector<int> positive;
    for (int v = 1; v <= n; ++v)
      if (echelon.has_pivot(v)) positive.push_back(v);

    int wanted;
    if (positive.empty()) {
      wanted = std::max(2 * n, min_order + 1);
    } else {
      const int e0 = positive.front();
      int g = 0;
      for (int v : positive) g = std::gcd(g, v);
      if (g > 1) {
        if (lies_in_power_series_of_order(a.gens, g))
          throw InfiniteCodimension("all values of the algebra are divisible by " + std::to_string(g) +
                                        "; its codimension in k[[t]] is infinite",
                                    g);
        wanted = 2 * n;
      } else {
        int run_start = n + 1;
        while (run_start > 0 && echelon.has_pivot(run_start - 1)) --run_start;
        if (n - run_start + 1 >= e0) return detail::staircase_from_echelon(echelon, run_start);
        // Values found so far generate a semigroup whose conductor bounds c.
        wanted = std::max(n + 1, semigroup_conductor(positive) + e0 - 1);
      }
    }
    if (n >= cap) {
      const bool ceiling_hit = cap == options.trunc_ceiling;
      throw PrecisionExhausted(ceiling_hit ? "closure did not stabilize below the truncation ceiling " +
                                                 std::to_string(options.trunc_ceiling)
                                           : "generators are known only modulo t^" +
                                                 std::to_string(gen_trunc + 1) +
                                                 ", too little to resolve the conductor",
                               wanted);
    }
    n = std::min(wanted, cap);
  }
}

bool membership(const Series& f, const Staircase& s) {
  if (s.conductor == 0) return true;
  if (f.trunc() < s.conductor - 1)
    throw PrecisionExhausted("membership needs the series modulo t^" + std::to_string(s.conductor),
                             s.conductor - 1);
  Series rest = f.with_trunc(s.conductor - 1);
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const Rational c = rest.coeff(s.values[k]);
    if (!is_zero(c)) rest.add_scaled(-c, s.basis[k]);
  }
  return rest.is_zero();
}

AlgebraInput generators_of(const Staircase& s, int trunc) {
  AlgebraInput a;
  const int top = s.conductor + s.e0 - 1;
  trunc = std::max(trunc, top);
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] > 0) a.gens.push_back(s.element(k, trunc));
  if (s.conductor == 0) {
    a.gens.push_back(Series::monomial(1, trunc));
  } else {
    for (int i = 0; i < s.e0; ++i) a.gens.push_back(Series::monomial(s.conductor + i, trunc));
  }
  return a;
}

HilbertData hilbert(const Staircase& s) {
  HilbertData h;
  if (s.conductor == 0) {
    h.hf = {1, 1};
    h.hf1 = {1, 2};
    return h;
  }
  const int c = s.conductor;
  const int e0 = s.e0;
  std::vector<std::size_t> positive;
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] > 0) positive.push_back(k);
  auto values_below = [&](int m) { return static_cast<int>(s.values.size()) + std::max(0, m - c); };

  // m^n contains t^M k[[t]] with M = (n-1) e0 + c, so m^n is resolved modulo t^M.
  int bound = c;
  std::vector<Series> power;
  for (auto k : positive) power.push_back(s.element(k, c - 1));
  h.hf1.push_back(values_below(bound) - static_cast<int>(power.size()));
  h.hf.push_back(h.hf1.back());

  const int max_steps = 4 * (c + e0) + 8;
  for (int step = 1; step < max_steps; ++step) {
    const int next = bound + e0;
    SeriesEchelon echelon(next - 1);
    for (const auto& x : power) {
      const Series xl = x.with_trunc(next - 1);
      for (auto k : positive) echelon.insert(mul(xl, s.element(k, next - 1)));
    }
    power.clear();
    for (int p : echelon.pivots()) power.push_back(echelon.at(p));
    bound = next;
    h.hf1.push_back(values_below(bound) - static_cast<int>(power.size()));
    h.hf.push_back(h.hf1.back() - h.hf1[h.hf1.size() - 2]);
    const auto n = h.hf.size();
    if (n >= 2 && h.hf[n - 1] == e0 && h.hf[n - 2] == e0) {
      h.e1 = e0 * static_cast<int>(n) - h.hf1.back();
      return h;
    }
  }
  throw InternalError("Hilbert function did not stabilize");
}

AlgebraInput blowup(const Staircase& s) {
  if (s.delta == 0) throw InvalidArgument("k[[t]] is regular; there is nothing to blow up");
  const int c = s.conductor;
  const int e0 = s.e0;
  const int trunc = 2 * c + 8;
  // f0 of order e0, written as t^e0 * unit.
  Series f0 = Series::monomial(e0, trunc + e0);
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] == e0) f0 = s.element(k, trunc + e0);
  auto shift_down = [&](const Series& f) {
    std::vector<Rational> out(static_cast<std::size_t>(trunc) + 1);
    for (int j = 0; j <= trunc; ++j) out[static_cast<std::size_t>(j)] = f.coeff(j + e0);
    return Series(std::move(out), trunc);
  };
  const Series unit = shift_down(f0);

  AlgebraInput out;
  out.label = "blowup";
  auto add = [&](const Series& f) {
    Series q = divide_by_unit(shift_down(f), unit);
    q.set_coeff(0, 0);
    if (!q.is_zero()) out.gens.push_back(std::move(q));
  };
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] > 0) add(s.element(k, trunc + e0));
  for (int i = 0; i < e0; ++i) add(Series::monomial(c + i, trunc + e0));
  return out;
}

BlowupChain blowup_chain(const AlgebraInput& a, const ClosureOptions& options) {
  BlowupChain chain;
  Staircase s = closure(a, options);
  const int root_delta = s.delta;
  if (root_delta == 0) return chain;
  for (;;) {
    const HilbertData h = hilbert(s);
    chain.steps.push_back({s.e0, h.e1, s.delta, s.conductor});
    chain.delta_check += h.e1;
    if (s.delta == 0) break;
    ClosureOptions next = options;
    next.initial_trunc = 2 * s.conductor;
    s = closure(blowup(s), next);
  }
  if (chain.delta_check != root_delta)
    throw InternalError("sum of e1 along the blow-up chain (" + std::to_string(chain.delta_check) +
                        ") differs from delta (" + std::to_string(root_delta) + ")");
  return chain;
}

namespace {

int binomial2(int n) { return n * (n - 1) / 2; }

}  // namespace

InvariantsReport invariants_report(const AlgebraInput& a, const ClosureOptions& options) {
  InvariantsReport r;
  r.staircase = closure(a, options);
  r.hilbert = hilbert(r.staircase);
  r.delta = r.staircase.delta;
  r.conductor = r.staircase.conductor;
  r.e0 = r.staircase.e0;
  r.e1 = r.hilbert.e1;
  r.mu = 2 * r.delta;
  r.embedding_dimension = r.hilbert.hf.size() > 1 ? r.hilbert.hf[1] : 1;
  r.gorenstein_by_c = r.conductor == 2 * r.delta;

  auto check = [](bool ok, const char* what) {
    if (!ok) throw InternalError(std::string("invariant inequality violated: ") + what);
  };
  check(r.e0 - 1 <= r.e1, "e0 - 1 <= e1");
  check(r.e1 <= r.delta, "e1 <= delta");
  check(r.delta <= r.mu, "delta <= mu");
  check(r.e1 <= binomial2(r.e0) - binomial2(r.embedding_dimension - 1), "e1 <= C(e0,2) - C(n-1,2)");
  if (r.delta > 0) {
    check(r.delta + 1 <= r.conductor, "delta + 1 <= c");
    check(r.conductor <= 2 * r.delta, "c <= 2 delta");
  }
  return r;
}

}  // namespace branchdual
