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

#include "semiab/mulgroup.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "semiab/error.hpp"

namespace semiab::mulgroup {

std::string to_string(const Irreducible& q) {
  if (const auto* z = std::get_if<Integer>(&q)) return z->get_str();
  return "(" + std::get<FpPoly>(q).to_string() + ")";
}

// ---------------------------------------------------------------------------
// FactoredElement arithmetic

namespace {

void require_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) throw InputError("field mismatch: " + a.to_string() + " vs " + b.to_string());
}

Integer unit_product(const FieldSpec& f, const Integer& a, const Integer& b) {
  if (!f.is_function_field()) return a * b;
  return mod_floor(a * b, Integer(static_cast<unsigned long>(f.p)));
}

Integer unit_power(const FieldSpec& f, const Integer& u, const Integer& k) {
  if (!f.is_function_field()) return (u == -1 && mpz_odd_p(k.get_mpz_t())) ? Integer(-1) : Integer(1);
  const Integer p(static_cast<unsigned long>(f.p));
  Integer r;
  Integer e = mod_floor(k, p - 1);
  mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

FactoredElement multiply(const FactoredElement& a, const FactoredElement& b) {
  require_field(a.field, b.field);
  FactoredElement r = a;
  r.unit = unit_product(a.field, a.unit, b.unit);
  for (const auto& [q, e] : b.exponents) {
    auto it = r.exponents.find(q);
    if (it == r.exponents.end()) {
      r.exponents.emplace(q, e);
    } else {
      it->second += e;
      if (it->second == 0) r.exponents.erase(it);
    }
  }
  return r;
}

FactoredElement power(const FactoredElement& a, const Integer& k) {
  FactoredElement r{a.field, unit_power(a.field, a.unit, k), {}};
  if (k == 0) return r;
  for (const auto& [q, e] : a.exponents) r.exponents.emplace(q, e * k);
  return r;
}

FactoredElement inverse(const FactoredElement& a) { return power(a, -1); }

FactoredElement divide(const FactoredElement& a, const FactoredElement& b) { return multiply(a, inverse(b)); }

Scalar FactoredElement::value() const {
  Scalar num = Scalar::from_integer(field, unit);
  Scalar den = Scalar::one(field);
  for (const auto& [q, e] : exponents) {
    if (!fits_i64(e)) throw ResourceExceeded("exponent too large to multiply out: " + e.get_str());
    const long k = to_i64(e);
    Scalar base = std::holds_alternative<Integer>(q)
                      ? Scalar(Rational(std::get<Integer>(q)))
                      : Scalar(RatFunc(std::get<FpPoly>(q), FpPoly::constant(field.p, 1)));
    if (k > 0)
      num = num * base.pow(k);
    else
      den = den * base.pow(-k);
  }
  return num / den;
}

std::string FactoredElement::to_string() const {
  std::ostringstream os;
  os << unit.get_str();
  for (const auto& [q, e] : exponents) {
    os << " * " << mulgroup::to_string(q);
    if (e != 1) os << '^' << e.get_str();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// factor

FactoredElement factor(const Scalar& x, const FieldSpec& field, const FactorOptions& options) {
  if (x.is_zero()) throw InputError("cannot factor zero");
  if (!(x.field() == field)) throw InputError("element does not belong to " + field.to_string());
  FactoredElement r = FactoredElement::one(field);
  if (!field.is_function_field()) {
    const Rational& q = x.rational();
    r.unit = sgn(q) < 0 ? -1 : 1;
    for (const auto& [p, e] : factor_integer(q.get_num(), options.integer))
      r.exponents[p] += static_cast<unsigned long>(e);
    for (const auto& [p, e] : factor_integer(q.get_den(), options.integer))
      r.exponents[p] -= static_cast<unsigned long>(e);
    return r;
  }
  const RatFunc& f = x.ratfunc();
  FpFactorization num = semiab::factor(f.num(), options.seed);
  FpFactorization den = semiab::factor(f.den(), options.seed);
  r.unit = Integer(static_cast<unsigned long>(
      static_cast<std::uint64_t>(num.unit) * fp_inverse(den.unit, field.p) % field.p));
  for (const auto& [g, e] : num.factors) r.exponents[g] += e;
  for (const auto& [g, e] : den.factors) {
    auto it = r.exponents.find(g);
    if (it == r.exponents.end())
      r.exponents.emplace(g, -Integer(e));
    else
      it->second -= e;
  }
  std::erase_if(r.exponents, [](const auto& kv) { return kv.second == 0; });
  return r;
}

FactoredElement factor(const Integer& x, const FieldSpec& field, const FactorOptions& options) {
  return factor(Scalar::from_integer(field, x), field, options);
}

// ---------------------------------------------------------------------------
// UnitGroup

UnitGroup::UnitGroup(const FieldSpec& field) : field_(field) {
  if (!field.is_function_field()) {
    order_ = 2;
    return;
  }
  const std::uint64_t p = field.p;
  order_ = Integer(static_cast<unsigned long>(p - 1));
  if (p == 2) {
    generator_ = 1;
    return;
  }
  std::vector<std::uint64_t> prime_divisors;
  for (const auto& [q, e] : factor_integer(order_)) prime_divisors.push_back(q.get_ui());
  for (std::uint64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (std::uint64_t q : prime_divisors)
      if (fp_pow(g, (p - 1) / q, field.p) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      generator_ = g;
      break;
    }
  }
  giant_step_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
  std::uint64_t cur = 1;
  baby_.reserve(giant_step_);
  for (std::uint64_t j = 0; j < giant_step_; ++j) {
    baby_.emplace(cur, j);
    cur = cur * generator_ % p;
  }
  giant_factor_ = fp_inverse(fp_pow(generator_, giant_step_, field.p), field.p);
}

Integer UnitGroup::log(const Integer& unit) const {
  if (!field_.is_function_field()) {
    if (unit == 1) return 0;
    if (unit == -1) return 1;
    throw InputError("unit of Q must be +1 or -1");
  }
  const std::uint64_t p = field_.p;
  const std::uint64_t a = mod_floor(unit, Integer(static_cast<unsigned long>(p))).get_ui();
  if (a == 0) throw InputError("zero is not a unit");
  if (p == 2) return 0;
  std::uint64_t gamma = a;
  for (std::uint64_t i = 0; i <= giant_step_; ++i) {
    auto it = baby_.find(gamma);
    if (it != baby_.end()) return Integer(static_cast<unsigned long>((i * giant_step_ + it->second) % (p - 1)));
    gamma = gamma * giant_factor_ % p;
  }
  throw InvariantViolation("discrete logarithm not found");
}

Integer UnitGroup::exp(const Integer& k) const {
  if (!field_.is_function_field()) return mpz_odd_p(k.get_mpz_t()) ? Integer(-1) : Integer(1);
  if (field_.p == 2) return 1;
  const std::uint64_t e = mod_floor(k, order_).get_ui();
  return Integer(static_cast<unsigned long>(fp_pow(generator_, e, field_.p)));
}

fgab::FgAmbient UnitGroup::ambient() const {
  if (is_trivial()) return fgab::FgAmbient(0, {});
  return fgab::FgAmbient(0, {order_});
}

// ---------------------------------------------------------------------------
// Embeddings

SupportEmbedding::SupportEmbedding(FieldSpec field, std::vector<Irreducible> support)
    : field_(field), support_(std::move(support)), units_(std::make_shared<UnitGroup>(field)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  for (std::size_t i = 0; i < support_.size(); ++i) index_.emplace(support_[i], i);
  IntVector torsion;
  if (!units_->is_trivial()) torsion.push_back(units_->order());
  ambient_ = fgab::FgAmbient(support_.size(), std::move(torsion));
}

std::optional<fgab::GroupVector> SupportEmbedding::coordinates(const FactoredElement& x) const {
  require_field(x.field, field_);
  IntVector free(support_.size());
  for (const auto& [q, e] : x.exponents) {
    auto it = index_.find(q);
    if (it == index_.end()) return std::nullopt;
    free[it->second] = e;
  }
  IntVector torsion;
  if (!units_->is_trivial()) torsion.push_back(units_->log(x.unit));
  return ambient_.make(std::move(free), std::move(torsion));
}

FactoredElement SupportEmbedding::element(const fgab::GroupVector& v) const {
  ambient_.check(v);
  FactoredElement r = FactoredElement::one(field_);
  r.unit = units_->is_trivial() ? Integer(1) : units_->exp(v.torsion_part[0]);
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (v.free_part[i] != 0) r.exponents.emplace(support_[i], v.free_part[i]);
  return r;
}

std::vector<Irreducible> support_of(std::span<const FactoredElement> elements) {
  std::set<Irreducible> s;
  for (const auto& x : elements)
    for (const auto& [q, e] : x.exponents) s.insert(q);
  return {s.begin(), s.end()};
}

Embedding embed(std::span<const FactoredElement> elements) {
  FieldSpec field;
  if (!elements.empty()) field = elements.front().field;
  for (const auto& x : elements) require_field(x.field, field);
  SupportEmbedding se(field, support_of(elements));
  Embedding out{se.ambient(), {}};
  for (const auto& x : elements) out.coordinates.push_back(*se.coordinates(x));
  return out;
}

// ---------------------------------------------------------------------------
// MulSubgroup

namespace {

fgab::SubgroupBasis lattice_of(const SupportEmbedding& se, const std::vector<FactoredElement>& gens) {
  std::vector<fgab::GroupVector> coords;
  for (const auto& g : gens) coords.push_back(*se.coordinates(g));
  return fgab::SubgroupBasis(se.ambient(), std::move(coords));
}

}  // namespace

MulSubgroup::MulSubgroup(FieldSpec field, std::vector<FactoredElement> generators)
    : field_(field),
      generators_((
          [&] {
            for (const auto& g : generators) require_field(g.field, field);
          }(),
          std::move(generators))),
      embedding_(field_, support_of(generators_)),
      oracle_(lattice_of(embedding_, generators_)) {}

std::optional<IntVector> MulSubgroup::member(const FactoredElement& x) const {
  auto coords = embedding_.coordinates(x);
  if (!coords) return std::nullopt;
  return oracle_.witness(*coords);
}

std::optional<IntVector> member(const FactoredElement& x, const MulSubgroup& gamma) { return gamma.member(x); }

FactoredElement power_product(const MulSubgroup& gamma, std::span<const Integer> k) {
  if (k.size() != gamma.generators().size())
    throw InputError("exponent vector has length " + std::to_string(k.size()) + ", expected " +
                     std::to_string(gamma.generators().size()));
  FactoredElement r = FactoredElement::one(gamma.field());
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) r = multiply(r, power(gamma.generators()[i], k[i]));
  return r;
}

// ---------------------------------------------------------------------------
// Torus points

namespace {

void require_rank(const TorusPoint& a, const TorusPoint& b) {
  if (a.size() != b.size()) throw InputError("torus points of different dimensions");
}

std::vector<Irreducible> merge_support(std::vector<Irreducible> a, const std::vector<Irreducible>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

TorusPoint torus_multiply(const TorusPoint& a, const TorusPoint& b) {
  require_rank(a, b);
  TorusPoint r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(multiply(a[i], b[i]));
  return r;
}

TorusPoint torus_divide(const TorusPoint& a, const TorusPoint& b) {
  require_rank(a, b);
  TorusPoint r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(divide(a[i], b[i]));
  return r;
}

TorusPoint torus_power(const TorusPoint& a, const Integer& k) {
  TorusPoint r;
  for (const auto& x : a) r.push_back(power(x, k));
  return r;
}

TorusPoint torus_one(const FieldSpec& field, std::size_t n) { return TorusPoint(n, FactoredElement::one(field)); }

std::vector<Irreducible> support_of(std::span<const TorusPoint> points) {
  std::set<Irreducible> s;
  for (const auto& p : points)
    for (const auto& x : p)
      for (const auto& [q, e] : x.exponents) s.insert(q);
  return {s.begin(), s.end()};
}

TorusEmbedding::TorusEmbedding(FieldSpec field, std::size_t n, std::vector<Irreducible> support)
    : n_(n),
      factor_(field, std::move(support)),
      layout_(std::vector<fgab::FgAmbient>(n, factor_.ambient())) {}

std::optional<fgab::GroupVector> TorusEmbedding::coordinates(const TorusPoint& x) const {
  if (x.size() != n_) throw InputError("torus point has " + std::to_string(x.size()) + " coordinates, expected " +
                                       std::to_string(n_));
  std::vector<fgab::GroupVector> parts;
  for (const auto& c : x) {
    auto v = factor_.coordinates(c);
    if (!v) return std::nullopt;
    parts.push_back(std::move(*v));
  }
  return layout_.join(parts);
}

TorusPoint TorusEmbedding::element(const fgab::GroupVector& v) const {
  TorusPoint r;
  for (std::size_t j = 0; j < n_; ++j) r.push_back(factor_.element(layout_.component(v, j)));
  return r;
}

namespace {

fgab::SubgroupBasis torus_lattice(const TorusEmbedding& e, const std::vector<TorusPoint>& gens) {
  std::vector<fgab::GroupVector> coords;
  for (const auto& g : gens) coords.push_back(*e.coordinates(g));
  return fgab::SubgroupBasis(e.ambient(), std::move(coords));
}

}  // namespace

TorusSubgroup::TorusSubgroup(FieldSpec field, std::size_t n, std::vector<TorusPoint> generators,
                             std::vector<Irreducible> extra_support)
    : generators_(std::move(generators)),
      embedding_(field, n, merge_support(support_of(std::span<const TorusPoint>(generators_)), extra_support)),
      oracle_(torus_lattice(embedding_, generators_)) {
  for (const auto& g : generators_)
    for (const auto& x : g) require_field(x.field, field);
}

std::optional<IntVector> TorusSubgroup::member(const TorusPoint& x) const {
  auto coords = embedding_.coordinates(x);
  if (!coords) return std::nullopt;
  return oracle_.witness(*coords);
}

}  // namespace semiab::mulgroup
