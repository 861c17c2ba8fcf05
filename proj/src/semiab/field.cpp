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

#include "semiab/field.hpp"

#include <cmath>

#include "semiab/error.hpp"
#include "semiab/int_factor.hpp"

namespace semiab {

FieldSpec FieldSpec::function_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(Integer(static_cast<unsigned long>(p))))
    throw InputError("characteristic must be a prime below 2^31, got " + std::to_string(p));
  return FieldSpec{FieldKind::FunctionField, static_cast<std::uint32_t>(p)};
}

std::string FieldSpec::to_string() const {
  return is_function_field() ? "F_" + std::to_string(p) + "(t)" : "Q";
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(FpPoly num, FpPoly den) {
  if (den.is_zero()) throw InputError("rational function with zero denominator");
  const std::uint32_t p = den.modulus();
  if (num.is_zero()) {
    num_ = FpPoly(p);
    den_ = FpPoly::constant(p, 1);
    return;
  }
  if (!den.is_constant()) {
    FpPoly g = gcd(num, den);
    if (!g.is_one()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  const std::uint32_t lc = den.leading();
  if (lc != 1) {
    const std::uint32_t inv = fp_inverse(lc, p);
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_, a.den_, true);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw InputError("division by zero in F_p(t)");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::from_integer(const FieldSpec& field, const Integer& z) {
  if (!field.is_function_field()) return Scalar(Rational(z));
  const unsigned long c = mod_floor(z, Integer(static_cast<unsigned long>(field.p))).get_ui();
  return Scalar(RatFunc(FpPoly::constant(field.p, c), FpPoly::constant(field.p, 1)));
}

Scalar Scalar::t(const FieldSpec& field) {
  if (!field.is_function_field()) throw InputError("the variable t only exists in function fields");
  return Scalar(RatFunc(FpPoly::variable(field.p), FpPoly::constant(field.p, 1)));
}

FieldSpec Scalar::field() const {
  if (is_rational()) return FieldSpec::rationals();
  return FieldSpec{FieldKind::FunctionField, ratfunc().modulus()};
}

bool Scalar::is_zero() const {
  return is_rational() ? rational() == 0 : ratfunc().is_zero();
}

bool Scalar::is_one() const {
  return is_rational() ? rational() == 1 : (ratfunc().num().is_one() && ratfunc().den().is_one());
}

std::size_t Scalar::height_bits() const {
  if (is_rational()) return bit_length(rational().get_num()) + bit_length(rational().get_den());
  const auto& f = ratfunc();
  const double lg = std::log2(static_cast<double>(f.modulus()));
  const double terms = static_cast<double>(f.num().degree() + f.den().degree() + 2);
  return static_cast<std::size_t>(std::ceil(terms * std::max(1.0, lg)));
}

namespace {

void require_same(const Scalar& a, const Scalar& b) {
  if (a.is_rational() != b.is_rational() ||
      (!a.is_rational() && a.ratfunc().modulus() != b.ratfunc().modulus()))
    throw InputError("arithmetic on elements of different fields");
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (a.is_rational()) return Scalar(Rational(a.rational() + b.rational()));
  return Scalar(a.ratfunc() + b.ratfunc());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (a.is_rational()) return Scalar(Rational(a.rational() - b.rational()));
  return Scalar(a.ratfunc() - b.ratfunc());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (a.is_rational()) return Scalar(Rational(a.rational() * b.rational()));
  return Scalar(a.ratfunc() * b.ratfunc());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (b.is_zero()) throw InputError("division by zero");
  if (a.is_rational()) return Scalar(Rational(a.rational() / b.rational()));
  return Scalar(a.ratfunc() / b.ratfunc());
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-rational()));
  return Scalar(-ratfunc());
}

Scalar Scalar::pow(long e) const {
  Scalar base = *this;
  if (e < 0) {
    base = one(field()) / base;
    e = -e;
  }
  Scalar r = one(field());
  while (e) {
    if (e & 1L) r = r * base;
    e >>= 1L;
    if (e) base = base * base;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (is_rational()) return rational().get_str();
  const auto& f = ratfunc();
  if (f.den().is_one()) return f.num().to_string();
  return "(" + f.num().to_string() + ")/(" + f.den().to_string() + ")";
}

}  // namespace semiab
