// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace branchdual {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorCode : int {
  Ok = 0,
  Failure = 1,
  InfiniteCodimension = 2,
  Parse = 3,
  NotAlgebraForming = 4,
  PrecisionExhausted = 5,
  InvalidArgument = 6,
  Internal = 7,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

// Raised when an exact consistency check inside the library fails; always a bug.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

class InfiniteCodimension : public Error {
 public:
  InfiniteCodimension(const std::string& what, int value_gcd)
      : Error(ErrorCode::InfiniteCodimension, what), value_gcd_(value_gcd) {}
  int value_gcd() const noexcept { return value_gcd_; }

 private:
  int value_gcd_;
};

// Some input is not known to enough t-adic precision. required_trunc() is the
// smallest truncation order that would have let the computation proceed.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, int required_trunc)
      : Error(ErrorCode::PrecisionExhausted, what), required_trunc_(required_trunc) {}
  int required_trunc() const noexcept { return required_trunc_; }

 private:
  int required_trunc_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace branchdual
