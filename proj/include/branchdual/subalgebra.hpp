// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "branchdual/series.hpp"

namespace branchdual {

inline constexpr int kDefaultTruncCeiling = 512;

// Generators of a subalgebra B of k[[t]]; each has zero constant term.
struct AlgebraInput {
  std::vector<Series> gens;
  std::string label;
};

// Canonical presentation of a finite-codimension B: B = span(basis) + t^c k[[t]].
//
// basis[k] is the unique element of B of the form t^values[k] + (terms at gap
// exponents above values[k]); it is an exact polynomial of degree < conductor,
// stored with trunc = max(conductor - 1, 0).
struct Staircase {
  std::vector<Series> basis;
  std::vector<int> values;  // D_B intersected with [0, conductor)
  int conductor = 0;
  std::vector<int> gaps;
  int delta = 0;
  int e0 = 1;
  int work_trunc = 0;  // precision at which the closure was certified

  // basis[k] re-declared at the given truncation (sound: it is a polynomial).
  Series element(std::size_t k, int trunc) const;
  bool is_value(int v) const;

  // Same algebra; work_trunc is diagnostic only.
  bool operator==(const Staircase& other) const {
    return conductor == other.conductor && values == other.values && basis == other.basis;
  }
};

struct ClosureOptions {
  int trunc_ceiling = kDefaultTruncCeiling;
  // 0 selects 4 * (sum of generator orders).
  int initial_trunc = 0;
};

// Reduced staircase of the k-algebra generated by a.gens.
// Throws InfiniteCodimension, PrecisionExhausted, InvalidArgument.
Staircase closure(const AlgebraInput& a, const ClosureOptions& options = {});

// f in B? Requires trunc(f) >= conductor - 1.
bool membership(const Series& f, const Staircase& s);

// Generating set recovered from a staircase: the positive-order basis elements
// and t^c, ..., t^(c+e0-1) (just t when B is all of k[[t]]).
AlgebraInput generators_of(const Staircase& s, int trunc = kDefaultTruncCeiling);

struct HilbertData {
  std::vector<int> hf;   // HF_B(0), HF_B(1), ... up to stabilization
  std::vector<int> hf1;  // partial sums: hf1[i] = dim B / m^(i+1)
  int e1 = 0;
};

HilbertData hilbert(const Staircase& s);

// Local ring of the (single) point of the first neighbourhood. Requires delta > 0.
AlgebraInput blowup(const Staircase& s);

struct BlowupStep {
  int multiplicity = 0;
  int e1 = 0;
  int delta = 0;
  int conductor = 0;
};

struct BlowupChain {
  std::vector<BlowupStep> steps;  // ends with multiplicity 1, e1 0; empty for k[[t]]
  int delta_check = 0;            // sum of e1 over the steps
};

// Throws InternalError if the e1 sum differs from delta of the root.
BlowupChain blowup_chain(const AlgebraInput& a, const ClosureOptions& options = {});

struct InvariantsReport {
  Staircase staircase;
  HilbertData hilbert;
  int delta = 0;
  int conductor = 0;
  int e0 = 1;
  int e1 = 0;
  int mu = 0;
  int embedding_dimension = 1;
  bool gorenstein_by_c = true;
};

// Throws InternalError if any of the classical inequalities between
// e0, e1, delta, mu and c fails (signals a bug, never bad input).
InvariantsReport invariants_report(const AlgebraInput& a, const ClosureOptions& options = {});

}  // namespace branchdual
