// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "branchdual/error.hpp"
#include "branchdual/inverse_system.hpp"

namespace branchdual {

class NonCoprime : public InvalidArgument {
 public:
  NonCoprime(const std::string& what, int gcd) : InvalidArgument(what), gcd_(gcd) {}
  int gcd() const noexcept { return gcd_; }

 private:
  int gcd_;
};

// Additive submonoid of N with finite complement.
struct NumericalSemigroup {
  std::vector<int> generators;  // as given, sorted and deduplicated
  int conductor = 0;
  std::vector<int> gaps;
  int e0 = 1;

  int genus() const { return static_cast<int>(gaps.size()); }
  bool contains(int v) const;
  // Generators not expressible as sums of smaller ones.
  std::vector<int> minimal_generators() const;
  // Elements below the conductor.
  std::vector<int> small_elements() const;
};

// Throws NonCoprime when gcd > 1, InvalidArgument for an empty or non-positive list.
NumericalSemigroup from_generators(std::vector<int> gens);
NumericalSemigroup from_gaps(const std::vector<int>& gaps);

bool is_symmetric(const NumericalSemigroup& d);

// {u^i : i a gap}.
InverseSystem monomial_inverse_system(const NumericalSemigroup& d);

struct GorensteinCheck {
  bool symmetric = false;
  bool c_equals_2delta = false;
  bool palindromic_inverse = false;
};

// The three predicates are computed independently; InternalError if they disagree.
GorensteinCheck gorenstein_check(const NumericalSemigroup& d);

// Characteristic exponents {e0; beta_1 < ... < beta_g} of a plane branch.
struct Characteristic {
  int e0 = 1;
  std::vector<int> betas;
};

// beta_v / e0 = m_v / (n_1 ... n_v) with gcd(m_v, n_v) = 1, where
// n_v = e_(v-1) / e_v and e_v = gcd(e0, beta_1, ..., beta_v).
struct CharacteristicPairs {
  std::vector<int> m;
  std::vector<int> n;
};

// Throws InvalidArgument unless e0 >= 1, the betas increase strictly from above
// e0, every n_v > 1 and n_1 ... n_g = e0.
CharacteristicPairs characteristic_pairs(const Characteristic& ch);

struct Saturation {
  CharacteristicPairs pairs;
  std::vector<int> exponents;  // before minimalization
  NumericalSemigroup semigroup;  // generators are the minimal ones
};

Saturation saturation_from_characteristic(const Characteristic& ch);

}  // namespace branchdual
