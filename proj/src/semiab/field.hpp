// Copyright 2026 The semiab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The two coefficient fields supported by the library: Q and F_p(t).

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "semiab/fp_poly.hpp"
#include "semiab/integer.hpp"

namespace semiab {

enum class FieldKind { Rationals, FunctionField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t p = 0;  // characteristic, FunctionField only

  static FieldSpec rationals() { return {}; }
  /// Throws InputError unless p is a prime below 2^31.
  static FieldSpec function_field(std::uint64_t p);

  bool is_function_field() const noexcept { return kind == FieldKind::FunctionField; }
  std::string to_string() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Reduced quotient num/den of polynomials over F_p with den monic.
class RatFunc {
 public:
  explicit RatFunc(std::uint32_t p) : num_(p), den_(FpPoly::constant(p, 1)) {}
  RatFunc(FpPoly num, FpPoly den);

  const FpPoly& num() const noexcept { return num_; }
  const FpPoly& den() const noexcept { return den_; }
  std::uint32_t modulus() const noexcept { return den_.modulus(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  RatFunc(FpPoly num, FpPoly den, bool reduced) : num_(std::move(num)), den_(std::move(den)) { (void)reduced; }
  FpPoly num_;
  FpPoly den_;
};

/// An element of Q or of F_p(t).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Rational q) : v_(std::move(q)) {}
  explicit Scalar(RatFunc f) : v_(std::move(f)) {}

  static Scalar from_integer(const FieldSpec& field, const Integer& z);
  static Scalar zero(const FieldSpec& field) { return from_integer(field, 0); }
  static Scalar one(const FieldSpec& field) { return from_integer(field, 1); }
  /// The transcendental t of F_p(t).
  static Scalar t(const FieldSpec& field);

  bool is_rational() const noexcept { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const RatFunc& ratfunc() const { return std::get<RatFunc>(v_); }
  FieldSpec field() const;

  bool is_zero() const;
  bool is_one() const;
  /// Bits needed to write the element down: numerator plus denominator
  /// size for Q, (deg num + deg den + 1) * log2(p) for F_p(t).
  std::size_t height_bits() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws InputError on division by zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar pow(long e) const;
  friend bool operator==(const Scalar&, const Scalar&) = default;

  std::string to_string() const;

 private:
  std::variant<Rational, RatFunc> v_;
};

}  // namespace semiab
