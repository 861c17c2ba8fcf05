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

#include "semiab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "semiab/error.hpp"

namespace semiab::dynamics {

using fgab::FgAmbient;
using fgab::GroupHom;
using fgab::GroupVector;
using fgab::SubgroupBasis;
using mulgroup::FactoredElement;
using mulgroup::TorusPoint;

AffineSelfMap::AffineSelfMap(GroupHom endo, GroupVector translation)
    : endo_(std::move(endo)), translation_(std::move(translation)) {
  if (!endo_.is_endomorphism()) throw InputError("affine self-map needs an endomorphism");
  if (!endo_.domain().contains(translation_)) throw InputError("translation is not an element of the ambient");
  translation_ = endo_.domain().from_coordinates(translation_.coordinates());
}

GroupVector AffineSelfMap::apply(const GroupVector& x) const {
  return ambient().add(endo_.apply(x), translation_);
}

IntegralRelation integral_relation(const GroupHom& psi) {
  if (!psi.is_endomorphism()) throw InputError("integral relation needs an endomorphism");
  const FgAmbient& a = psi.domain();
  if (a.dimension() == 0) return IntegralRelation{IntVector{1}};
  IntVector mp = minimal_polynomial(psi.matrix());
  IntegralRelation rel;
  for (const auto& c : mp) rel.e.push_back(-c);
  const std::size_t g = rel.order();
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    std::vector<GroupVector> powers{a.basis_vector(i)};
    for (std::size_t k = 0; k < g; ++k) powers.push_back(psi.apply(powers.back()));
    GroupVector rhs = a.zero();
    for (std::size_t k = 1; k <= g; ++k) rhs = a.add(rhs, a.scale(rel.e[k - 1], powers[g - k]));
    check_invariant(rhs == powers[g], "integral relation fails on generator " + std::to_string(i));
  }
  return rel;
}

IntVector orbit_recurrence(const AffineSelfMap& phi) {
  return lrs::times_x_minus_one(integral_relation(phi.endo()).e);
}

GroupVector iterate_sequential(const AffineSelfMap& phi, const GroupVector& alpha, std::uint64_t n) {
  GroupVector x = phi.ambient().from_coordinates(alpha.coordinates());
  for (std::uint64_t i = 0; i < n; ++i) x = phi.apply(x);
  return x;
}

GroupVector iterate_closed_form(const AffineSelfMap& phi, const GroupVector& alpha, std::uint64_t n) {
  const FgAmbient& a = phi.ambient();
  a.check(alpha);
  const IntMatrix pn = matrix_power(phi.endo().matrix(), n);
  GroupVector sum = a.zero();
  GroupVector term = phi.translation();
  for (std::uint64_t j = 0; j < n; ++j) {
    sum = a.add(sum, term);
    term = phi.endo().apply(term);
  }
  return a.add(a.from_coordinates(pn.apply(alpha.coordinates())), sum);
}

GroupVector iterate_regular(const AffineSelfMap& phi, const GroupVector& alpha, std::uint64_t n) {
  GroupVector seq = iterate_sequential(phi, alpha, n);
  check_invariant(seq == iterate_closed_form(phi, alpha, n),
                  "closed-form iterate disagrees with sequential iteration at n = " + std::to_string(n));
  return seq;
}

std::vector<GroupVector> orbit(const AffineSelfMap& phi, const GroupVector& alpha, std::size_t count) {
  std::vector<GroupVector> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(phi.ambient().from_coordinates(alpha.coordinates()));
  while (out.size() < count) out.push_back(phi.apply(out.back()));
  return out;
}

lrs::GroupLRS orbit_lrs(const AffineSelfMap& phi, const GroupVector& alpha) {
  lrs::GroupLRS out;
  out.coefficients = orbit_recurrence(phi);
  out.ambient = phi.ambient();
  out.initial = orbit(phi, alpha, out.coefficients.size());
  return out;
}

SubgroupBasis orbit_fg_closure(const AffineSelfMap& phi, const GroupVector& alpha, const SubgroupBasis& gamma) {
  if (!(gamma.ambient == phi.ambient())) throw InputError("subgroup and map live in different ambients");
  const std::size_t g = integral_relation(phi.endo()).order();
  const auto pts = orbit(phi, alpha, g + 1);
  return fgab::extend(gamma, pts);
}

std::string to_string(ResultKind k) { return k == ResultKind::Exact ? "exact" : "empirical"; }

std::vector<std::uint64_t> ReturnSetResult::members() const {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n < bitmap.size(); ++n)
    if (bitmap[n]) out.push_back(n);
  return out;
}

ReturnSetResult return_set_regular(const AffineSelfMap& phi, const GroupVector& alpha, const SubgroupBasis& gamma,
                                   const lrs::ZeroSetOptions& options) {
  if (!(gamma.ambient == phi.ambient())) throw InputError("subgroup and map live in different ambients");
  ReturnSetResult r;
  r.kind = ResultKind::Exact;
  r.n_max = options.n_max;
  r.decomposition = lrs::group_zero_set(orbit_lrs(phi, alpha), gamma, options);
  r.bitmap = r.decomposition->bitmap(options.n_max);

  const fgab::MembershipOracle oracle(gamma);
  GroupVector x = phi.ambient().from_coordinates(alpha.coordinates());
  for (std::uint64_t n = 0; n <= options.n_max; ++n) {
    check_invariant(oracle.contains(x) == r.bitmap[n],
                    "return-set decomposition disagrees with direct membership at n = " + std::to_string(n));
    x = phi.apply(x);
  }
  if (r.decomposition->status == lrs::Status::Bounded)
    r.notes.push_back("finiteness of the sporadic part is only established up to n = " +
                      std::to_string(r.decomposition->search_bound));
  return r;
}

// ---------------------------------------------------------------------------
// Rational torus maps

RationalTorusMap::RationalTorusMap(FieldSpec field, std::vector<RationalFunction> coordinates)
    : field_(field), coordinates_(std::move(coordinates)) {
  const std::size_t n = coordinates_.size();
  if (n == 0) throw InputError("a torus map needs at least one coordinate");
  for (const auto& f : coordinates_) {
    if (!(f.field() == field_)) throw InputError("map coordinate over " + f.field().to_string() +
                                                 ", expected " + field_.to_string());
    if (f.nvars() != n) throw InputError("map coordinate in " + std::to_string(f.nvars()) +
                                         " variables, expected " + std::to_string(n));
  }
  Monomial mono;
  for (const auto& f : coordinates_) {
    if (f.num().terms().size() != 1 || f.den().terms().size() != 1) return;
    const auto& [mn, cn] = *f.num().terms().begin();
    const auto& [md, cd] = *f.den().terms().begin();
    mono.scale.push_back(cn / cd);
    std::vector<long> ex(n);
    for (std::size_t k = 0; k < n; ++k) ex[k] = static_cast<long>(mn[k]) - static_cast<long>(md[k]);
    mono.exponents.push_back(std::move(ex));
  }
  monomial_ = std::move(mono);
}

std::string RationalTorusMap::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < coordinates_.size(); ++j) {
    if (j) s += ", ";
    s += coordinates_[j].to_string();
  }
  return s + ")";
}

namespace {

std::size_t irreducible_bits(const mulgroup::Irreducible& q, const FieldSpec& field) {
  if (const auto* z = std::get_if<Integer>(&q)) return bit_length(*z);
  const auto& f = std::get<FpPoly>(q);
  const double lg = std::max(1.0, std::ceil(std::log2(static_cast<double>(field.p))));
  return static_cast<std::size_t>(static_cast<double>(f.degree() + 1) * lg);
}

std::size_t point_height(const TorusPoint& x) {
  std::size_t h = 0;
  for (const auto& c : x) h = std::max(h, factored_bits(c));
  return h;
}

}  // namespace

std::size_t factored_bits(const FactoredElement& x) {
  std::size_t bits = bit_length(x.unit);
  for (const auto& [q, e] : x.exponents) bits += irreducible_bits(q, x.field) + bit_length(e);
  return bits;
}

TorusIterator::TorusIterator(const RationalTorusMap& map, TorusPoint x, IterationOptions options)
    : map_(&map), options_(std::move(options)), point_(std::move(x)) {
  if (point_.size() != map.rank())
    throw InputError("point has " + std::to_string(point_.size()) + " coordinates, map has " +
                     std::to_string(map.rank()));
  for (const auto& c : point_)
    if (!(c.field == map.field())) throw InputError("point coordinate over the wrong field");
  if (map.monomial()) {
    for (const auto& s : map.monomial()->scale) scale_.push_back(mulgroup::factor(s, map.field(), options_.factor));
    height_ = point_height(point_);
  } else {
    for (const auto& c : point_) {
      values_.push_back(c.value());
      height_ = std::max(height_, values_.back().height_bits());
    }
  }
}

void TorusIterator::advance() {
  const std::uint64_t step = steps_ + 1;
  const std::size_t n = point_.size();
  TorusPoint next;
  next.reserve(n);
  if (const auto& mono = map_->monomial()) {
    std::size_t h = 0;
    for (std::size_t j = 0; j < n; ++j) {
      FactoredElement y = scale_[j];
      for (std::size_t k = 0; k < n; ++k)
        if (mono->exponents[j][k] != 0) y = mulgroup::multiply(y, mulgroup::power(point_[k], mono->exponents[j][k]));
      h = std::max(h, factored_bits(y));
      next.push_back(std::move(y));
    }
    height_ = h;
  } else {
    std::vector<Scalar> vals;
    vals.reserve(n);
    std::size_t h = 0;
    for (std::size_t j = 0; j < n; ++j) {
      auto v = map_->coordinates()[j].evaluate(values_);
      if (!v) throw UndefinedOrbit("denominator of coordinate " + std::to_string(j + 1) + " vanishes", step);
      if (v->is_zero()) throw UndefinedOrbit("coordinate " + std::to_string(j + 1) + " leaves the torus", step);
      h = std::max(h, v->height_bits());
      vals.push_back(std::move(*v));
    }
    for (const auto& v : vals) next.push_back(mulgroup::factor(v, map_->field(), options_.factor));
    values_ = std::move(vals);
    height_ = h;
  }
  point_ = std::move(next);
  steps_ = step;
}

TorusPoint iterate_rational(const RationalTorusMap& map, const TorusPoint& x, std::uint64_t n,
                            const IterationOptions& options) {
  TorusIterator it(map, x, options);
  while (it.steps() < n) {
    it.advance();
    if (it.over_cap())
      throw ResourceExceeded("iterate " + std::to_string(it.steps()) + " has a coordinate of " +
                             std::to_string(it.height_bits()) + " bits, above the cap of " +
                             std::to_string(options.height_cap_bits));
  }
  return it.point();
}

ReturnSetResult return_set_empirical(const RationalTorusMap& map, const TorusPoint& alpha,
                                     const mulgroup::TorusSubgroup& gamma, std::uint64_t n_max,
                                     const IterationOptions& options) {
  if (gamma.embedding().rank() != map.rank()) throw InputError("subgroup and map have different torus ranks");
  ReturnSetResult r;
  r.kind = ResultKind::Empirical;
  r.n_max = n_max;
  TorusIterator it(map, alpha, options);
  for (std::uint64_t n = 0;; ++n) {
    r.bitmap.push_back(gamma.member(it.point()).has_value());
    if (n == n_max) break;
    it.advance();
    if (it.over_cap()) {
      r.truncated = true;
      r.notes.push_back("scan stopped after n = " + std::to_string(n) + ": iterate " +
                        std::to_string(it.steps()) + " exceeds the height cap of " +
                        std::to_string(options.height_cap_bits) + " bits");
      break;
    }
  }
  return r;
}

ReturnSetResult return_set_empirical(const RationalTorusMap& map, const FactoredElement& alpha,
                                     const mulgroup::MulSubgroup& gamma, std::uint64_t n_max,
                                     const IterationOptions& options) {
  if (map.rank() != 1) throw InputError("a subgroup of K* needs a map of the one-dimensional torus");
  std::vector<TorusPoint> gens;
  for (const auto& g : gamma.generators()) gens.push_back(TorusPoint{g});
  const mulgroup::TorusSubgroup torus(gamma.field(), 1, std::move(gens), gamma.support());
  return return_set_empirical(map, TorusPoint{alpha}, torus, n_max, options);
}

AffineSelfMap monomial_lattice_map(const RationalTorusMap& map, const mulgroup::TorusEmbedding& embedding,
                                   const mulgroup::FactorOptions& options) {
  const auto& mono = map.monomial();
  if (!mono) throw InputError("the torus map is not monomial");
  const std::size_t n = map.rank();
  if (embedding.rank() != n) throw InputError("embedding rank differs from the map rank");
  const FgAmbient& a = embedding.ambient();
  const FgAmbient& part = embedding.factor().ambient();

  std::vector<GroupVector> shift;
  for (std::size_t j = 0; j < n; ++j) {
    auto c = embedding.factor().coordinates(mulgroup::factor(mono->scale[j], map.field(), options));
    if (!c) throw InputError("scale factor of coordinate " + std::to_string(j + 1) + " is outside the support");
    shift.push_back(std::move(*c));
  }

  IntMatrix m(a.dimension(), a.dimension());
  for (std::size_t col = 0; col < a.dimension(); ++col) {
    const GroupVector e = a.basis_vector(col);
    std::vector<GroupVector> blocks;
    for (std::size_t j = 0; j < n; ++j) {
      GroupVector b = part.zero();
      for (std::size_t k = 0; k < n; ++k)
        b = part.add(b, part.scale(mono->exponents[j][k], embedding.layout().component(e, k)));
      blocks.push_back(std::move(b));
    }
    const IntVector image = embedding.layout().join(blocks).coordinates();
    for (std::size_t row = 0; row < a.dimension(); ++row) m(row, col) = image[row];
  }
  return AffineSelfMap(GroupHom(a, a, std::move(m)), embedding.layout().join(shift));
}

}  // namespace semiab::dynamics
