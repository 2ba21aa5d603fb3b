// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "branchdual/expression.hpp"
#include "branchdual/inverse_system.hpp"
#include "oracle.hpp"

using namespace branchdual;

namespace {

AlgebraInput gens(const char* text) { return {parse_series_list(text), text}; }
DiffOp op(const char* text) { return parse_diffop(text); }
InverseSystem span_of(const char* text, int c = 0) { return make_inverse_system(parse_diffop_list(text), c); }

bool same_span(const InverseSystem& a, const InverseSystem& b) { return contains(a, b) && contains(b, a); }

std::vector<oracle::Poly> as_polys(const AlgebraInput& a, int n) {
  std::vector<oracle::Poly> out;
  for (const auto& f : a.gens) {
    oracle::Poly p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = f.coeff(i);
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("inverse_system") {
  TEST_CASE("canonical form") {
    const auto v = span_of("u^3 + u^4; 2u^3");
    REQUIRE(v.dim() == 2);
    CHECK(v.basis[0] == op("u^3"));
    CHECK(v.basis[1] == op("u^4"));
    CHECK(span_of("u; u^2 - 1/3 u^3") == span_of("u; u^3 - 3u^2"));
    CHECK(in_span(op("u^3 - 3u^2 + 5u"), span_of("u; u^2 - 1/3 u^3")));
    CHECK_FALSE(in_span(op("u^3"), span_of("u; u^2 - 1/3 u^3")));
    CHECK(span_of("0; 0").dim() == 0);
    CHECK(span_of("u; u^5").max_degree() == 5);
  }

  TEST_CASE("natural sets") {
    const auto toy = natural_set(gens("t^3+t^4, t^5"), 7);
    REQUIRE(toy.size() == 3);
    CHECK(toy[0] == parse_series("t^3+t^4", 7));
    CHECK(toy[1] == parse_series("t^5", 7));
    CHECK(toy[2] == parse_series("t^6+2t^7", 7));
    CHECK(natural_set(gens("t"), 1) == std::vector<Series>{parse_series("t", 1)});
    std::vector<int> orders;
    for (const auto& f : natural_set(gens("t^4, t^7, t^9"), 10)) orders.push_back(*f.order());
    CHECK(orders == std::vector<int>{4, 7, 8, 9});
    CHECK_THROWS_AS(natural_set(gens("t^3 + O(t^5)"), 7), PrecisionExhausted);
  }

  TEST_CASE("inverse system of k[[t^3+t^4, t^5]]") {
    const auto a = gens("t^3+t^4, t^5");
    const auto v = inverse_system(a, closure(a));
    REQUIRE(v.dim() == 4);
    CHECK(v.basis[0] == op("u"));
    CHECK(v.basis[1] == op("u^2"));
    CHECK(v.basis[2] == op("u^3 - 1/4 u^4"));
    CHECK(v.basis[3] == op("u^6 - 1/14 u^7"));
  }

  TEST_CASE("inverse system of a monomial algebra") {
    const auto a = gens("t^4, t^7, t^9");
    CHECK(inverse_system(a, closure(a)) == span_of("u; u^2; u^3; u^5; u^6; u^10"));
    const auto g = gens("t");
    CHECK(inverse_system(g, closure(g)).dim() == 0);
  }

  TEST_CASE("delta2: forced solution a = -3 b3 gives span{u, u^3 - 3u^2}") {
    const auto a = gens("t^2+t^3, t^5");
    const auto s = closure(a);
    CHECK(s.delta == 2);
    CHECK(same_span(inverse_system(a, s), span_of("u; u^3 - 3u^2")));
    const auto b = gens("t^3, t^4, t^5");
    CHECK(inverse_system(b, closure(b)) == span_of("u; u^2"));
  }

  TEST_CASE("inverse system relations for k[[t^6, t^8+t^11, t^10+t^13]]: 8! a8 + 11! a11 = 0") {
    const auto a = gens("t^6, t^8+t^11, t^10+t^13");
    const auto v = inverse_system(a, closure(a));
    CHECK(in_span(op("u^8 - 1/990 u^11"), v));
    CHECK_FALSE(in_span(op("u^8 + 1/990 u^11"), v));
    CHECK(in_span(op("u^10 - 1/1716 u^13"), v));
    CHECK(in_span(op("u^14 - 1/4080 u^17"), v));
    for (const char* gone : {"u^6", "u^12", "u^16", "u^18", "u^19", "u^20", "u^21"}) CHECK_FALSE(in_span(op(gone), v));
  }

  TEST_CASE("inverse systems agree with a brute-force kernel") {
    for (const char* text : {"t^3+t^4, t^5", "t^4+t^5, t^6, t^7", "t^5 + t^7, t^7 + 1/3 t^8", "t^3 + 2t^5, t^7 - t^8"}) {
      CAPTURE(std::string(text));
      const auto a = gens(text);
      const auto s = closure(a);
      std::vector<DiffOp> ref;
      for (const auto& k : oracle::inverse_system(as_polys(a, s.conductor), s.conductor))
        ref.emplace_back(std::vector<Rational>(k.begin(), k.end()));
      CHECK(inverse_system(a, s) == make_inverse_system(ref, s.conductor));
    }
  }

  TEST_CASE("algebra-forming examples") {
    const auto gamma = gens("t");
    const auto sg = closure(gamma);
    const auto bad = is_algebra_forming({op("u^2")}, sg, gamma);
    CHECK_FALSE(bad.verdict);
    REQUIRE(bad.witness.has_value());
    CHECK(perp(op("u^2"), *bad.witness) == 0);
    CHECK(perp(op("u^2"), mul(*bad.witness, *bad.witness)) != 0);
    CHECK(is_algebra_forming({op("u")}, sg, gamma).verdict);
    const auto b2 = gens("t^3, t^4, t^5");
    CHECK(is_algebra_forming({op("u^3 - 1/20 u^5")}, closure(b2), b2).verdict);
    CHECK_THROWS_AS(is_algebra_forming({op("1 + u")}, sg, gamma), InvalidArgument);
  }

  TEST_CASE("annihilators") {
    const auto b3 = gens("t^2, t^3");
    CHECK(annihilator({op("u^2")}, closure(b3)) == closure(gens("t^3, t^4, t^5")));
    const auto b2 = gens("t^3, t^4, t^5");
    CHECK(annihilator({op("u^3 - 1/20 u^5")}, closure(b2)) == closure(gens("t^3+t^5, t^4")));
    const auto s = closure(b2);
    CHECK(annihilator({}, s) == s);
    try {
      annihilator({op("u^2")}, closure(gens("t")));
      FAIL("expected NotAlgebraForming");
    } catch (const NotAlgebraForming& e) {
      CHECK(e.code() == ErrorCode::NotAlgebraForming);
      CHECK(e.certificate().witness.has_value());
    }
  }

  TEST_CASE("standard filtration of k[[t^3+t^4, t^5]]") {
    const auto f = standard_filtration(gens("t^3+t^4, t^5"));
    REQUIRE(f.steps.size() == 4);
    std::vector<int> adjoined;
    for (const auto& st : f.steps) adjoined.push_back(st.gap_exponent);
    CHECK(adjoined == std::vector<int>{7, 4, 2, 1});
    CHECK(f.steps[0].algebra == closure(gens("t^3+t^4, t^5, t^7")));
    CHECK(f.steps[1].algebra == closure(gens("t^3, t^4, t^5")));
    CHECK(f.steps[2].algebra == closure(gens("t^2, t^3")));
    CHECK(f.steps[3].algebra == closure(gens("t")));
    CHECK(f.steps[1].cut.element == parse_series("t^3 - 1/4 t^4", f.steps[1].cut.element.trunc()));
    CHECK(f.steps[2].cut.element == parse_series("t^2", f.steps[2].cut.element.trunc()));
    CHECK(f.steps[3].cut.element == parse_series("t", f.steps[3].cut.element.trunc()));
    // Inverse systems shrink along the filtration.
    InverseSystem prev = inverse_system(generators_of(f.base), f.base);
    for (const auto& st : f.steps) {
      const auto cur = inverse_system(generators_of(st.algebra), st.algebra);
      CHECK(contains(prev, cur));
      CHECK(cur.dim() + 1 == prev.dim());
      prev = cur;
    }
    CHECK(standard_filtration(gens("t")).steps.empty());
  }

  TEST_CASE("standard filtration of a monomial algebra adjoins gaps top down") {
    const auto f = standard_filtration(gens("t^4, t^6, t^9"));
    std::vector<int> adjoined;
    for (const auto& st : f.steps) adjoined.push_back(st.gap_exponent);
    CHECK(adjoined == std::vector<int>{11, 7, 5, 3, 2, 1});
  }

  TEST_CASE("cutting derivations") {
    const auto b = closure(gens("t^2, t^3"));
    const auto c = closure(gens("t^3, t^4, t^5"));
    const auto cut = cutting_derivation(c, b);
    CHECK(cut.element == parse_series("t^2", cut.element.trunc()));
    CHECK(is_derivation(cut.functional, b));
    CHECK_THROWS_AS(cutting_derivation(b, c), InvalidArgument);
    CHECK_THROWS_AS(cutting_derivation(closure(gens("t^4, t^5, t^6, t^7")), b), InvalidArgument);
  }

  TEST_CASE("derivation tests") {
    CHECK_FALSE(is_derivation(op("u^11"), closure(gens("t^4, t^7, t^17"))));
    CHECK(is_derivation(op("u"), closure(gens("t"))));
    CHECK(is_derivation(op("u^3 - 1/4 u^4"), closure(gens("t^3, t^4, t^5"))));
    CHECK_FALSE(is_derivation(op("1 + u"), closure(gens("t"))));
    const auto d = derivation_space(closure(gens("t^3, t^4, t^5")));
    CHECK(d.cotangent_basis.size() == 3);
    for (const auto& g : d.functionals) CHECK(is_derivation(g, closure(gens("t^3, t^4, t^5"))));
    CHECK(derivation_space(closure(gens("t"))).functionals.size() == 1);
  }

  TEST_CASE("transport matrices") {
    CHECK(transport_matrix(parse_series("t"), 6) == QMatrix::identity(6));
    const auto m = transport_matrix(parse_series("t + t^2"), 6);
    // column 2 holds (t + t^2)^2 = t^2 + 2t^3 + t^4
    CHECK(m(2, 2) == 1);
    CHECK(m(3, 2) == 2);
    CHECK(m(4, 2) == 1);
    CHECK(m(5, 2) == 0);
    CHECK_THROWS_AS(transport_matrix(parse_series("t^2"), 6), InvalidArgument);
    CHECK_THROWS_AS(transport_matrix(parse_series("t + O(t^3)"), 6), PrecisionExhausted);
  }

  TEST_CASE("transport along h = t + t^2") {
    const auto v1 = span_of("u; u^3; u^5", 6);
    const Series h = parse_series("t + t^2");
    const auto t = transport_dual_inverse(h, 6, v1);
    for (int e : {2, 7}) {
      const auto image = compose(Series::monomial(e, 20), h);
      for (const auto& g : t.image.basis) CHECK(perp(g, image) == 0);
    }
    // Forward transport returns to the start.
    CHECK(transport_dual(h, 6, t.image).image == v1);
    CHECK(transport_dual(parse_series("t"), 6, v1).image == v1);
  }

  TEST_CASE("duality round trip") {
    for (const char* text : {"t^3+t^4, t^5", "t", "t^4, t^7, t^9", "t^6, t^8+t^11, t^10+t^13"}) {
      CAPTURE(std::string(text));
      CHECK(verify_duality(gens(text)).ok());
    }
  }

  TEST_CASE("Rosenlicht representatives and residues") {
    const auto a = rosenlicht(op("u^3 - 1/4 u^4"), 8);
    CHECK(a.coeffs[3] == 6);
    CHECK(a.coeffs[4] == -6);
    CHECK(to_expression(a) == "6 t^-4 - 6 t^-5");
    CHECK(to_expression(rosenlicht(DiffOp(), 4)) == "0");
    CHECK(residue(parse_series("t^3+t^4"), a) == 0);
    CHECK(residue(parse_series("t^5"), rosenlicht(op("u^5"), 8)) == 120);
    CHECK(residue(parse_series("t^4"), rosenlicht(op("u^5"), 8)) == 0);
    CHECK_THROWS_AS(rosenlicht(op("u^9"), 8), InvalidArgument);
    CHECK_THROWS_AS(residue(parse_series("t + O(t^3)"), a), PrecisionExhausted);
  }
}
