// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "branchdual/error.hpp"
#include "branchdual/linalg.hpp"
#include "branchdual/series.hpp"
#include "branchdual/subalgebra.hpp"

namespace branchdual {

// Finite-dimensional subspace of k[u] in canonical form: each basis element is
// monic at its lowest-degree term (its pivot), every other element vanishes at
// that degree, and the basis is sorted by pivot.
struct InverseSystem {
  std::vector<DiffOp> basis;
  int conductor_bound = 0;

  std::size_t dim() const { return basis.size(); }
  int max_degree() const;
  bool operator==(const InverseSystem& other) const { return basis == other.basis; }
};

// Canonical basis of span(ops).
InverseSystem make_inverse_system(const std::vector<DiffOp>& ops, int conductor_bound);

bool in_span(const DiffOp& g, const InverseSystem& v);
// span(inner) is a subspace of span(outer)?
bool contains(const InverseSystem& outer, const InverseSystem& inner);

// Truncated monomials [f1^l1 ... fr^lr]_{<=d} of positive total degree, dropping
// those of order > d and exact duplicates; sorted by order.
std::vector<Series> natural_set(const AlgebraInput& a, int d);

// B-perp, solved from the pairing conditions against natural_set(a, c - 1).
// Throws InternalError if the dimension differs from delta.
InverseSystem inverse_system(const AlgebraInput& a, const Staircase& s);

struct AFCertificate {
  bool verdict = true;
  // On failure: f in B with g.f = 0 for all g in V but g.f^2 != 0 for some g.
  std::optional<Series> witness;
  int degree_bound = 0;           // the d used for the natural set
  std::size_t generators = 0;     // size of the natural set
  std::size_t linear_solutions = 0;  // dimension of the linear solution space L
};

class NotAlgebraForming : public Error {
 public:
  explicit NotAlgebraForming(AFCertificate certificate)
      : Error(ErrorCode::NotAlgebraForming, "the operator space is not algebra-forming"),
        certificate_(std::move(certificate)) {}
  const AFCertificate& certificate() const { return certificate_; }

 private:
  AFCertificate certificate_;
};

// Decides whether Ann(V) intersected with B is an algebra, by checking that the
// linear solution space of the pairing conditions lies in every quadric
// g_i.(f^2) = 0. degree_bound 0 selects max(c - 1, 1 + max deg V).
// Throws InvalidArgument if some g in V has a nonzero constant term.
AFCertificate is_algebra_forming(const std::vector<DiffOp>& v, const Staircase& s, const AlgebraInput& a,
                                 int degree_bound = 0);

// Ann(V) intersected with B. Throws NotAlgebraForming when V is not algebra-forming.
Staircase annihilator(const std::vector<DiffOp>& v, const Staircase& s);

// Derivation of B whose kernel is the codimension-one subalgebra C.
struct CuttingDerivation {
  Series element;                    // l in m_B with functional(l) != 0
  DiffOp functional;                 // alpha = functional-perp restricted to B
  std::vector<Series> cotangent_basis;  // lifts of a basis of m_B / m_B^2
  std::vector<Rational> cotangent_values;  // alpha on cotangent_basis
};

// Throws InvalidArgument when C is not contained in B or dim B/C != 1.
CuttingDerivation cutting_derivation(const Staircase& c, const Staircase& b);

// g(0) = 0 and g-perp vanishes on m_B^2.
bool is_derivation(const DiffOp& g, const Staircase& s);

// Point derivations B -> k: functionals[j] is 1 on cotangent_basis[j], 0 on the
// other lifts, and vanishes on k + m_B^2.
struct DerivationSpace {
  std::vector<Series> cotangent_basis;
  std::vector<DiffOp> functionals;
};

DerivationSpace derivation_space(const Staircase& s);

struct FiltrationStep {
  int gap_exponent = 0;
  Staircase algebra;      // B_i, generated by B_(i-1) and t^gap_exponent
  CuttingDerivation cut;  // derivation of B_i with kernel B_(i-1)
};

struct Filtration {
  Staircase base;
  std::vector<FiltrationStep> steps;
};

// B = B_0 in B_1 in ... in B_delta = k[[t]], adjoining t^(c-1), ..., t in turn.
Filtration standard_filtration(const AlgebraInput& a, const ClosureOptions& options = {});

// c x c matrix whose column i holds the coefficients of h^i.
QMatrix transport_matrix(const Series& h, int c);

struct Transport {
  QMatrix matrix;
  InverseSystem image;
};

// phi(f) = f(h). Maps V2 = B2-perp to V1 = B1-perp where B1 = phi^-1(B2), acting by
// the transpose of transport_matrix in the dual bases u^i/i!.
Transport transport_dual(const Series& h, int c, const InverseSystem& v2);
// The inverse map: from B1-perp to B2-perp, B2 = phi(B1).
Transport transport_dual_inverse(const Series& h, int c, const InverseSystem& v1);

struct DualityCheck {
  bool dimension_matches = false;  // dim B-perp == delta
  bool top_degree_matches = false;  // max degree == c - 1 (vacuous when delta = 0)
  bool round_trip = false;          // Ann(B-perp) == B modulo t^c
  bool ok() const { return dimension_matches && top_degree_matches && round_trip; }
};

DualityCheck verify_duality(const AlgebraInput& a, const ClosureOptions& options = {});

// Laurent tail sum_(i < c) coeffs[i] t^(-i-1).
struct LaurentTail {
  int conductor = 0;
  std::vector<Rational> coeffs;
  bool operator==(const LaurentTail& other) const = default;
};

LaurentTail rosenlicht(const DiffOp& g, int c);

// Coefficient of t^-1 in f * alpha. Requires trunc(f) >= c - 1.
Rational residue(const Series& f, const LaurentTail& alpha);

}  // namespace branchdual
