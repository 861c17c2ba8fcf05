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

// Sparse multivariate polynomials and rational functions with coefficients
// in Q or F_p(t). The variables are x1..xN.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiab/field.hpp"

namespace semiab {

using Monomial = std::vector<unsigned>;

class MPoly {
 public:
  MPoly() = default;
  MPoly(FieldSpec field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static MPoly constant(const FieldSpec& field, std::size_t nvars, const Scalar& c);
  static MPoly variable(const FieldSpec& field, std::size_t nvars, std::size_t index);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Scalar constant_term() const;

  MPoly& operator+=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;
  MPoly pow(unsigned e) const;
  friend bool operator==(const MPoly&, const MPoly&) = default;

  Scalar evaluate(std::span<const Scalar> point) const;
  std::string to_string() const;

 private:
  void require_compatible(const MPoly& o) const;
  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::map<Monomial, Scalar> terms_;
};

/// num/den with den not the zero polynomial. No cancellation is attempted.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(MPoly num);
  /// Throws InputError when den is the zero polynomial.
  RationalFunction(MPoly num, MPoly den);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  const FieldSpec& field() const noexcept { return num_.field(); }
  std::size_t nvars() const noexcept { return num_.nvars(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws InputError when b is identically zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  RationalFunction pow(long e) const;

  /// nullopt when the denominator vanishes at the point.
  std::optional<Scalar> evaluate(std::span<const Scalar> point) const;
  /// "(num)/(den)", or the numerator alone when den = 1.
  std::string to_string() const;

 private:
  MPoly num_;
  MPoly den_;
};

}  // namespace semiab
