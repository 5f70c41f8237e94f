/*
 * Copyright 2026 The tiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tiso {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  DivideByZero,
  FieldMismatch,
  ZeroPolynomial,
  RetryExhausted,
  ShapeMismatch,
  Singular,
  NotSimpleEigenvalue,
  BadParams,
  TooLarge,
  NonIntegralCount,
  Format,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivideByZero: return "DivideByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::RetryExhausted: return "RetryExhausted";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::Singular: return "Singular";
    case Errc::NotSimpleEigenvalue: return "NotSimpleEigenvalue";
    case Errc::BadParams: return "BadParams";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NonIntegralCount: return "NonIntegralCount";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace tiso
