// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "branchdual/series.hpp"
#include "oracle.hpp"

using namespace branchdual;

namespace {

Series poly(std::vector<Rational> c, int trunc) { return Series(std::move(c), trunc); }

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("construction, order and degree") {
    const auto f = poly({0, 0, 0, 1, 1}, 10);
    CHECK(f.order() == 3);
    CHECK(f.degree() == 4);
    CHECK(f.coeff(11) == 0);
    CHECK(Series(5).is_zero());
    CHECK_THROWS_AS(Series(3).set_coeff(4, 1), PrecisionExhausted);
  }

  TEST_CASE("multiplication keeps the smaller truncation") {
    const auto f = poly({0, 1, 1}, 3);
    const auto g = poly({0, 0, 1}, 8);
    const auto p = mul(f, g);
    CHECK(p.trunc() == 3);
    CHECK(p.coeff(3) == 1);
    CHECK(p.coeff(4) == 0);
  }

  TEST_CASE("truncate") {
    const auto f = poly({1, 2, 3, 4}, 3);
    CHECK(truncate(f, 1) == poly({1, 2}, 1));
    CHECK_THROWS_AS(truncate(f, 4), PrecisionExhausted);
  }

  TEST_CASE("compose with a uniformizer") {
    // (t + t^2)^2 = t^2 + 2t^3 + t^4
    const auto f = Series::monomial(2, 20);
    const auto h = poly({0, 1, 1}, 20);
    const auto c = compose(f, h);
    CHECK(c.coeff(2) == 1);
    CHECK(c.coeff(3) == 2);
    CHECK(c.coeff(4) == 1);
    CHECK(c.coeff(5) == 0);
    CHECK_THROWS_AS(compose(f, poly({1, 1}, 5)), InvalidArgument);
  }

  TEST_CASE("compose precision bookkeeping") {
    // f known mod t^4, h = t: result known mod t^4.
    const auto f = poly({0, 1, 2, 3}, 3);
    const auto c = compose(f, Series::monomial(1, 10));
    CHECK(c.trunc() == 3);
    CHECK(c == f);
    // f known mod t^3, h = t^2 + O(t^6): result known mod t^6.
    const auto c2 = compose(poly({0, 1, 1}, 2), Series::monomial(2, 5));
    CHECK(c2.trunc() == 5);
    CHECK(c2.coeff(4) == 1);
  }

  TEST_CASE("compose matches an independent expansion") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 8;
      std::vector<Rational> fc(n + 1), hc(n + 1);
      for (int i = 0; i <= n; ++i) fc[static_cast<std::size_t>(i)] = oracle::random_rational(rng);
      hc[1] = 1 + rng() % 3;
      for (int i = 2; i <= n; ++i) hc[static_cast<std::size_t>(i)] = oracle::random_rational(rng);
      const auto c = compose(poly(fc, n), poly(hc, n));
      // sum f_i h^i, with exact products modulo t^(n+1)
      oracle::Poly acc(n + 1), power(n + 1);
      power[0] = 1;
      const oracle::Poly hp(hc.begin(), hc.end());
      for (int i = 0; i <= n; ++i) {
        for (int k = 0; k <= n; ++k) acc[static_cast<std::size_t>(k)] += fc[static_cast<std::size_t>(i)] * power[static_cast<std::size_t>(k)];
        power = oracle::poly_mul(power, hp, n + 1);
      }
      CHECK(c.trunc() >= n);
      for (int k = 0; k <= n; ++k) CHECK(c.coeff(k) == acc[static_cast<std::size_t>(k)]);
    }
  }

  TEST_CASE("division by a unit") {
    const auto v = poly({1, 1}, 10);
    const auto f = poly({2, 3, 1}, 10);  // (1 + t)(2 + t)
    const auto q = divide_by_unit(f, v);
    CHECK(q.coeff(0) == 2);
    CHECK(q.coeff(1) == 1);
    CHECK(q.coeff(2) == 0);
    CHECK_THROWS_AS(divide_by_unit(f, poly({0, 1}, 10)), InvalidArgument);
  }

  TEST_CASE("unit roots") {
    const auto u = poly({1, 2, 1}, 12);  // (1 + t)^2
    const auto w = unit_root(u, 2);
    CHECK(w.coeff(0) == 1);
    CHECK(w.coeff(1) == 1);
    for (int i = 2; i <= 12; ++i) CHECK(w.coeff(i) == 0);
    const auto cube = unit_root(poly({1, 1}, 10), 3);
    CHECK(mul(mul(cube, cube), cube) == poly({1, 1}, 10));
  }

  TEST_CASE("operators act by differentiation") {
    const DiffOp g({0, 0, 0, 1, Rational(-1, 4)});
    CHECK(g.degree() == 4);
    CHECK(g.low_degree() == 3);
    // (u^3 - 1/4 u^4) . (t^3 + t^4) = 3! - 1/4 * 4! = 0
    CHECK(perp(g, poly({0, 0, 0, 1, 1}, 10)) == 0);
    const auto d = apply(DiffOp::monomial(1), poly({0, 0, 1}, 5));  // d/dt t^2 = 2t
    CHECK(d.coeff(1) == 2);
    CHECK(d.trunc() == 4);
    CHECK_THROWS_AS(perp(DiffOp::monomial(6), poly({0, 1}, 3)), PrecisionExhausted);
  }

  TEST_CASE("pairing matches the definition on random inputs") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Rational> gc(7), fc(9);
      for (auto& x : gc) x = oracle::random_rational(rng);
      for (auto& x : fc) x = oracle::random_rational(rng);
      const DiffOp g(gc);
      const Series f(fc, 8);
      CHECK(perp(g, f) == oracle::pairing(oracle::Poly(gc.begin(), gc.end()), oracle::Poly(fc.begin(), fc.end())));
      CHECK(perp(g, f) == apply(g, f).coeff(0));
    }
  }

  TEST_CASE("operator arithmetic trims") {
    DiffOp a({0, 1, 1});
    DiffOp b({0, 0, 1});
    CHECK((a - b).degree() == 1);
    CHECK((a - a).is_zero());
    CHECK((Rational(2) * a).coeff(2) == 2);
  }
}
