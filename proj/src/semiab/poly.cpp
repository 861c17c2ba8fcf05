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

#include "semiab/poly.hpp"

#include "semiab/error.hpp"

namespace semiab {

MPoly MPoly::constant(const FieldSpec& field, std::size_t nvars, const Scalar& c) {
  MPoly p(field, nvars);
  if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(const FieldSpec& field, std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  MPoly p(field, nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Scalar::one(field));
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial(nvars_, 0));
}

Scalar MPoly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void MPoly::require_compatible(const MPoly& o) const {
  if (!(field_ == o.field_) || nvars_ != o.nvars_) throw InputError("polynomials over different rings");
}

MPoly& MPoly::operator+=(const MPoly& o) {
  require_compatible(o);
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.require_compatible(b);
  MPoly r(a.field_, a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(a.nvars_);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      const Scalar c = ca * cb;
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        if (!c.is_zero()) r.terms_.emplace(std::move(m), c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(field_, nvars_, Scalar::one(field_)), base = *this;
  while (e) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return r;
}

Scalar MPoly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != nvars_) throw InputError("point has the wrong number of coordinates");
  Scalar total = Scalar::zero(field_);
  for (const auto& [m, c] : terms_) {
    Scalar term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i]) term = term * point[i].pow(static_cast<long>(m[i]));
    total = total + term;
  }
  return total;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string term;
    if (mono.empty())
      term = "(" + c.to_string() + ")";
    else if (c.is_one())
      term = mono;
    else
      term = "(" + c.to_string() + ")*" + mono;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

RationalFunction::RationalFunction(MPoly num)
    : num_(std::move(num)), den_(MPoly::constant(num_.field(), num_.nvars(), Scalar::one(num_.field()))) {}

RationalFunction::RationalFunction(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InputError("denominator is the zero polynomial");
  if (!(num_.field() == den_.field()) || num_.nvars() != den_.nvars())
    throw InputError("numerator and denominator over different rings");
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw InputError("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(long e) const {
  if (e >= 0) return RationalFunction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  if (num_.is_zero()) throw InputError("negative power of the zero rational function");
  return RationalFunction(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
}

std::optional<Scalar> RationalFunction::evaluate(std::span<const Scalar> point) const {
  const Scalar d = den_.evaluate(point);
  if (d.is_zero()) return std::nullopt;
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant() && den_.constant_term().is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace semiab
