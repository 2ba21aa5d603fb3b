// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace branchdual {

// Exact rationals in lowest terms with positive denominator; GMP canonicalizes
// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// n! from a process-wide memo. Safe to call concurrently.
const Integer& factorial(int n);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q" in decimal. Throws InvalidArgument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace branchdual
