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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semiab/integer.hpp"

namespace semiab {

/// Dense univariate polynomial over F_p (p prime, p < 2^31), coefficients
/// stored lowest degree first with no trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::uint32_t p) : p_(p) {}
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly constant(std::uint32_t p, std::uint64_t c);
  static FpPoly monomial(std::uint32_t p, std::uint64_t c, std::size_t degree);
  /// The variable t.
  static FpPoly variable(std::uint32_t p) { return monomial(p, 1, 1); }

  std::uint32_t modulus() const noexcept { return p_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  std::uint32_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::uint32_t coefficient(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coefficients() const noexcept { return c_; }

  FpPoly monic() const;
  FpPoly scaled(std::uint64_t k) const;
  FpPoly derivative() const;
  std::uint32_t evaluate(std::uint32_t x) const;

  FpPoly& operator+=(const FpPoly& o);
  FpPoly& operator-=(const FpPoly& o);
  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  FpPoly operator-() const;

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  /// Degree first, then coefficients from the top; a total order for map keys.
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  /// Human-readable form in the variable `var`, highest degree first.
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;
};

std::uint32_t fp_inverse(std::uint64_t a, std::uint32_t p);
std::uint32_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p);

/// (quotient, remainder) of a / b, b nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
/// Exact division; throws InvariantViolation on a nonzero remainder.
FpPoly exact_div(const FpPoly& a, const FpPoly& b);
/// Monic gcd (zero if both are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly pow(const FpPoly& base, unsigned long e);
FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod);

struct FpFactorization {
  std::uint32_t unit = 1;  // leading coefficient
  std::vector<std::pair<FpPoly, unsigned long>> factors;  // monic irreducibles, sorted
};

/// Complete factorization into monic irreducibles: square-free, then
/// distinct-degree, then equal-degree splitting. `seed` drives the random
/// splitting polynomials; the result itself does not depend on it.
FpFactorization factor(const FpPoly& f, std::uint64_t seed = 0x5eed);

bool is_irreducible(const FpPoly& f);

}  // namespace semiab
