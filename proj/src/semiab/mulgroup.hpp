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

// Multiplicative groups Q* and F_p(t)* through unique factorization.
//
// A nonzero element is a unit (sign, or a constant of F_p*) times a finite
// product of primes / monic irreducibles. Finitely generated subgroups embed
// into (unit group) + Z^|support| where they become lattice problems for fgab.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "semiab/fgab.hpp"
#include "semiab/field.hpp"
#include "semiab/int_factor.hpp"

namespace semiab::mulgroup {

/// A rational prime (Q) or a monic irreducible polynomial (F_p(t)).
using Irreducible = std::variant<Integer, FpPoly>;

std::string to_string(const Irreducible& q);

struct FactoredElement {
  FieldSpec field;
  /// +1 or -1 over Q; a nonzero residue mod p over F_p(t).
  Integer unit = 1;
  /// Nonzero exponents only.
  std::map<Irreducible, Integer> exponents;

  static FactoredElement one(const FieldSpec& f) { return FactoredElement{f, 1, {}}; }
  bool is_one() const { return unit == 1 && exponents.empty(); }

  /// Multiplies the factorization back out. Exponents must fit in a long.
  Scalar value() const;
  std::string to_string() const;
  friend bool operator==(const FactoredElement&, const FactoredElement&) = default;
};

FactoredElement multiply(const FactoredElement& a, const FactoredElement& b);
FactoredElement inverse(const FactoredElement& a);
FactoredElement divide(const FactoredElement& a, const FactoredElement& b);
FactoredElement power(const FactoredElement& a, const Integer& k);

struct FactorOptions {
  IntFactorConfig integer;
  std::uint64_t seed = 0x5eed;
};

/// Complete factorization of a nonzero element.
FactoredElement factor(const Scalar& x, const FieldSpec& field, const FactorOptions& options = {});
FactoredElement factor(const Integer& x, const FieldSpec& field, const FactorOptions& options = {});

/// The unit group of the field: Z/2 for Q, F_p* = Z/(p-1) for F_p(t)
/// (trivial when p = 2). Discrete logarithms use a fixed primitive root.
class UnitGroup {
 public:
  explicit UnitGroup(const FieldSpec& field);
  const FieldSpec& field() const noexcept { return field_; }
  /// 1 for the trivial group.
  const Integer& order() const noexcept { return order_; }
  bool is_trivial() const { return order_ == 1; }
  Integer log(const Integer& unit) const;
  Integer exp(const Integer& k) const;
  /// Z/order as an ambient (no coordinates when trivial).
  fgab::FgAmbient ambient() const;

 private:
  FieldSpec field_;
  Integer order_ = 2;
  std::uint64_t generator_ = 0;
  std::uint64_t giant_step_ = 0;      // baby-step giant-step table size
  std::uint64_t giant_factor_ = 0;    // generator^{-m}
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
};

/// Coordinates of elements inside unit + Z^|support| for a frozen, sorted
/// support. Shared by MulSubgroup and the product embeddings of semiabelian.
class SupportEmbedding {
 public:
  SupportEmbedding(FieldSpec field, std::vector<Irreducible> support);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<Irreducible>& support() const noexcept { return support_; }
  const fgab::FgAmbient& ambient() const noexcept { return ambient_; }
  const UnitGroup& units() const noexcept { return *units_; }

  /// nullopt when x involves an irreducible outside the support.
  std::optional<fgab::GroupVector> coordinates(const FactoredElement& x) const;
  /// The element with the given coordinates (unit from the discrete log).
  FactoredElement element(const fgab::GroupVector& v) const;

 private:
  FieldSpec field_;
  std::vector<Irreducible> support_;
  std::map<Irreducible, std::size_t> index_;
  std::shared_ptr<const UnitGroup> units_;
  fgab::FgAmbient ambient_;
};

/// Union of supports, sorted.
std::vector<Irreducible> support_of(std::span<const FactoredElement> elements);

struct Embedding {
  fgab::FgAmbient ambient;
  std::vector<fgab::GroupVector> coordinates;
};

/// Embeds a list of elements of one field into unit + Z^|union of supports|.
Embedding embed(std::span<const FactoredElement> elements);

/// A finitely generated subgroup of K*, with its support frozen at construction.
class MulSubgroup {
 public:
  MulSubgroup(FieldSpec field, std::vector<FactoredElement> generators);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<FactoredElement>& generators() const noexcept { return generators_; }
  const std::vector<Irreducible>& support() const { return embedding_.support(); }
  const SupportEmbedding& embedding() const noexcept { return embedding_; }
  const fgab::SubgroupBasis& lattice() const noexcept { return oracle_.subgroup(); }

  /// Exponents k with prod gen_i^k_i = x, or nullopt.
  std::optional<IntVector> member(const FactoredElement& x) const;

 private:
  FieldSpec field_;
  std::vector<FactoredElement> generators_;
  SupportEmbedding embedding_;
  fgab::MembershipOracle oracle_;
};

std::optional<IntVector> member(const FactoredElement& x, const MulSubgroup& gamma);

/// prod gen_i^k_i.
FactoredElement power_product(const MulSubgroup& gamma, std::span<const Integer> k);

/// A point of the torus (K*)^N.
using TorusPoint = std::vector<FactoredElement>;

TorusPoint torus_multiply(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_divide(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_power(const TorusPoint& a, const Integer& k);
TorusPoint torus_one(const FieldSpec& field, std::size_t n);
/// Union of the supports of all coordinates, sorted.
std::vector<Irreducible> support_of(std::span<const TorusPoint> points);

/// Coordinates of N-tuples inside (unit + Z^|support|)^N, block j for coordinate j.
class TorusEmbedding {
 public:
  TorusEmbedding(FieldSpec field, std::size_t n, std::vector<Irreducible> support);

  std::size_t rank() const noexcept { return n_; }
  const SupportEmbedding& factor() const noexcept { return factor_; }
  const fgab::DirectSum& layout() const noexcept { return layout_; }
  const fgab::FgAmbient& ambient() const noexcept { return layout_.ambient(); }

  std::optional<fgab::GroupVector> coordinates(const TorusPoint& x) const;
  TorusPoint element(const fgab::GroupVector& v) const;

 private:
  std::size_t n_;
  SupportEmbedding factor_;
  fgab::DirectSum layout_;
};

/// A finitely generated subgroup of (K*)^N.
class TorusSubgroup {
 public:
  /// extra_support enlarges the frozen support beyond the generators' own.
  TorusSubgroup(FieldSpec field, std::size_t n, std::vector<TorusPoint> generators,
                std::vector<Irreducible> extra_support = {});

  const std::vector<TorusPoint>& generators() const noexcept { return generators_; }
  const TorusEmbedding& embedding() const noexcept { return embedding_; }
  const fgab::SubgroupBasis& lattice() const noexcept { return oracle_.subgroup(); }
  std::optional<IntVector> member(const TorusPoint& x) const;

 private:
  std::vector<TorusPoint> generators_;
  TorusEmbedding embedding_;
  fgab::MembershipOracle oracle_;
};

}  // namespace semiab::mulgroup
