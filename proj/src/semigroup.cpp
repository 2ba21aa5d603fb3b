// SPDX-License-Identifier: Apache-2.0
#include "branchdual/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace branchdual {

bool NumericalSemigroup::contains(int v) const {
  if (v < 0) return false;
  if (v >= conductor) return true;
  return !std::binary_search(gaps.begin(), gaps.end(), v);
}

std::vector<int> NumericalSemigroup::small_elements() const {
  std::vector<int> out;
  for (int v = 0; v < conductor; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::vector<int> NumericalSemigroup::minimal_generators() const {
  // v is minimal iff v > 0 is in D and not a sum of two positive elements.
  const int bound = conductor + e0;
  std::vector<int> out;
  for (int v = 1; v <= bound; ++v) {
    if (!contains(v)) continue;
    bool decomposable = false;
    for (int a = 1; a <= v / 2 && !decomposable; ++a) decomposable = contains(a) && contains(v - a);
    if (!decomposable) out.push_back(v);
  }
  return out;
}

NumericalSemigroup from_generators(std::vector<int> gens) {
  if (gens.empty()) throw InvalidArgument("a numerical semigroup needs at least one generator");
  for (int g : gens)
    if (g <= 0) throw InvalidArgument("semigroup generators must be positive, got " + std::to_string(g));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  int g = 0;
  for (int a : gens) g = std::gcd(g, a);
  if (g != 1) throw NonCoprime("generators have common divisor " + std::to_string(g), g);

  NumericalSemigroup d;
  d.generators = gens;
  d.e0 = gens.front();
  // Sieve until e0 consecutive members appear; everything after is then in D.
  std::vector<char> member{1};
  int run = 0;
  int v = 0;
  while (run < d.e0) {
    ++v;
    char in = 0;
    for (int a : gens)
      if (a <= v && member[static_cast<std::size_t>(v - a)]) {
        in = 1;
        break;
      }
    member.push_back(in);
    run = in ? run + 1 : 0;
  }
  d.conductor = v - run + 1;
  if (d.conductor == 1) d.conductor = 0;
  for (int x = 1; x < d.conductor; ++x)
    if (!member[static_cast<std::size_t>(x)]) d.gaps.push_back(x);
  return d;
}

NumericalSemigroup from_gaps(const std::vector<int>& gaps) {
  if (gaps.empty()) return from_generators({1});
  std::vector<int> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  NumericalSemigroup d;
  d.conductor = sorted.back() + 1;
  d.gaps = sorted;
  for (int a = 1; a < d.conductor; ++a)
    for (int b = a; a + b < d.conductor; ++b)
      if (d.contains(a) && d.contains(b) && !d.contains(a + b))
        throw InvalidArgument("gap set is not the complement of a semigroup");
  if (sorted.front() <= 0) throw InvalidArgument("gaps must be positive");
  d.e0 = 1;
  while (!d.contains(d.e0)) ++d.e0;
  d.generators = d.minimal_generators();
  return d;
}

bool is_symmetric(const NumericalSemigroup& d) {
  for (int t = 0; t < d.conductor; ++t)
    if (d.contains(t) == d.contains(d.conductor - 1 - t)) return false;
  return true;
}

InverseSystem monomial_inverse_system(const NumericalSemigroup& d) {
  InverseSystem v;
  v.conductor_bound = d.conductor;
  for (int i : d.gaps) v.basis.push_back(DiffOp::monomial(i));
  return v;
}

GorensteinCheck gorenstein_check(const NumericalSemigroup& d) {
  GorensteinCheck g;
  g.symmetric = is_symmetric(d);
  g.c_equals_2delta = d.conductor == 2 * d.genus();
  // t^(c-1) u^i(1/t) = t^(c-1-i) must lie in k[[D]] for every gap i.
  g.palindromic_inverse = std::all_of(d.gaps.begin(), d.gaps.end(),
                                      [&](int i) { return d.contains(d.conductor - 1 - i); });
  if (g.symmetric != g.c_equals_2delta || g.symmetric != g.palindromic_inverse)
    throw InternalError("Gorenstein predicates disagree");
  return g;
}

CharacteristicPairs characteristic_pairs(const Characteristic& ch) {
  if (ch.e0 < 1) throw InvalidArgument("multiplicity must be positive");
  CharacteristicPairs p;
  int e = ch.e0;  // gcd(e0, beta_1, ..., beta_v)
  int previous = ch.e0;
  for (int beta : ch.betas) {
    if (beta <= previous)
      throw InvalidArgument("characteristic exponents must increase strictly and exceed e0");
    previous = beta;
    const int next = std::gcd(e, beta);
    if (next == e) throw InvalidArgument("beta " + std::to_string(beta) + " does not lower the gcd with e0");
    p.n.push_back(e / next);
    p.m.push_back(beta / next);
    e = next;
  }
  if (e != 1) throw InvalidArgument("characteristic does not reach gcd 1 with multiplicity " + std::to_string(ch.e0));
  return p;
}

Saturation saturation_from_characteristic(const Characteristic& ch) {
  Saturation s;
  s.pairs = characteristic_pairs(ch);
  const auto& m = s.pairs.m;
  const auto& n = s.pairs.n;
  const std::size_t g = m.size();
  s.exponents.push_back(ch.e0);
  for (std::size_t v = 0; v + 1 < g; ++v) {
    int tail = 1;  // n_(v+1) ... n_g
    for (std::size_t w = v + 1; w < g; ++w) tail *= n[w];
    for (int k = m[v]; k <= m[v + 1] / n[v + 1]; ++k) s.exponents.push_back(k * tail);
  }
  if (g > 0)
    for (int i = 0; i < ch.e0; ++i) s.exponents.push_back(m[g - 1] + i);
  std::sort(s.exponents.begin(), s.exponents.end());
  s.exponents.erase(std::unique(s.exponents.begin(), s.exponents.end()), s.exponents.end());
  s.semigroup = from_generators(s.exponents);
  s.semigroup.generators = s.semigroup.minimal_generators();
  return s;
}

}  // namespace branchdual
