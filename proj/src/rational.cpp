// SPDX-License-Identifier: Apache-2.0
#include "branchdual/rational.hpp"

#include <cctype>
#include <deque>
#include <mutex>

#include "branchdual/error.hpp"

namespace branchdual {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "ok";
    case ErrorCode::Failure: return "failure";
    case ErrorCode::InfiniteCodimension: return "infinite_codimension";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::NotAlgebraForming: return "not_algebra_forming";
    case ErrorCode::PrecisionExhausted: return "precision_exhausted";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Internal: return "internal_error";
  }
  return "unknown";
}

namespace {

// std::deque keeps references stable while the memo grows.
struct FactorialMemo {
  std::mutex mutex;
  std::deque<Integer> values{Integer(1)};
};

FactorialMemo& memo() {
  static FactorialMemo instance;
  return instance;
}

}  // namespace

const Integer& factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  auto& m = memo();
  std::lock_guard<std::mutex> lock(m.mutex);
  while (static_cast<int>(m.values.size()) <= n) {
    const auto k = static_cast<unsigned long>(m.values.size());
    m.values.push_back(m.values.back() * k);
  }
  return m.values[static_cast<std::size_t>(n)];
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  if (sgn(d) == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace branchdual
