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

// Finitely generated abelian groups Z^r + Z/d_1 + ... + Z/d_s and their
// subgroups. Torsion is handled by adjoining the relation vectors d_i e_i to
// generator matrices, so every question reduces to integer lattice algebra.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiab/int_matrix.hpp"
#include "semiab/integer.hpp"

namespace semiab::fgab {

/// An element of an ambient group. Torsion entries are kept reduced into
/// [0, d_i) by the ambient that produced the vector.
struct GroupVector {
  IntVector free_part;
  IntVector torsion_part;

  IntVector coordinates() const;
  bool is_zero() const;
  friend bool operator==(const GroupVector&, const GroupVector&) = default;
};

class FgAmbient {
 public:
  FgAmbient() = default;
  /// Torsion orders must all be >= 2. They are kept in the given order; use
  /// normalize() for the divisibility-sorted presentation.
  FgAmbient(std::size_t free_rank, IntVector torsion_orders);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntVector& torsion_orders() const noexcept { return torsion_; }
  std::size_t torsion_count() const noexcept { return torsion_.size(); }
  /// Number of coordinates, r + s.
  std::size_t dimension() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return dimension() == 0; }
  bool is_divisibility_sorted() const;

  GroupVector zero() const;
  GroupVector basis_vector(std::size_t i) const;
  GroupVector make(IntVector free_part, IntVector torsion_part) const;
  GroupVector from_coordinates(const IntVector& coords) const;
  /// Throws InputError unless v has the right shape and reduced torsion.
  void check(const GroupVector& v) const;
  bool contains(const GroupVector& v) const;

  GroupVector add(const GroupVector& a, const GroupVector& b) const;
  GroupVector sub(const GroupVector& a, const GroupVector& b) const;
  GroupVector neg(const GroupVector& a) const;
  GroupVector scale(const Integer& k, const GroupVector& a) const;
  GroupVector combine(std::span<const Integer> coeffs, std::span<const GroupVector> vs) const;

  /// dimension x s matrix whose j-th column is d_j e_{r+j}.
  IntMatrix relation_columns() const;

  std::string to_string() const;
  friend bool operator==(const FgAmbient&, const FgAmbient&) = default;

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

struct SubgroupBasis {
  FgAmbient ambient;
  std::vector<GroupVector> generators;

  SubgroupBasis() = default;
  SubgroupBasis(FgAmbient a, std::vector<GroupVector> gens);

  /// dimension x (#generators) matrix of generator coordinates.
  IntMatrix generator_matrix() const;
  static SubgroupBasis trivial(const FgAmbient& a) { return SubgroupBasis(a, {}); }
  static SubgroupBasis whole(const FgAmbient& a);
};

/// A homomorphism given by an integer matrix acting on coordinates.
/// Well-definedness on torsion generators is checked at construction.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAmbient domain, FgAmbient codomain, IntMatrix matrix);

  const FgAmbient& domain() const noexcept { return domain_; }
  const FgAmbient& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }
  bool is_endomorphism() const { return domain_ == codomain_; }

  GroupVector apply(const GroupVector& v) const;
  static GroupHom identity(const FgAmbient& a);
  /// this after other.
  GroupHom compose(const GroupHom& other) const;

 private:
  FgAmbient domain_;
  FgAmbient codomain_;
  IntMatrix matrix_;
};

using semiab::smith_normal_form;

/// Precomputed Smith form of [generators | relations] for repeated
/// membership queries against one subgroup.
class MembershipOracle {
 public:
  explicit MembershipOracle(SubgroupBasis s);
  const SubgroupBasis& subgroup() const noexcept { return subgroup_; }
  /// Coefficients on the generators reproducing v, or nullopt.
  std::optional<IntVector> witness(const GroupVector& v) const;
  bool contains(const GroupVector& v) const { return witness(v).has_value(); }

 private:
  SubgroupBasis subgroup_;
  SmithForm snf_;
};

std::optional<IntVector> membership(const GroupVector& v, const SubgroupBasis& s);
bool coset_membership(const GroupVector& v, const GroupVector& offset, const SubgroupBasis& s);

/// Generators of s1 ∩ s2, returned in Hermite-reduced form.
SubgroupBasis intersect(const SubgroupBasis& s1, const SubgroupBasis& s2);

struct Quotient {
  FgAmbient ambient;   // Z^f + Z/d_1 + ... with d_1 | d_2 | ...
  GroupHom projection;
};

Quotient quotient(const SubgroupBasis& s);

/// The divisibility-sorted presentation of a, with the isomorphism onto it.
Quotient normalize(const FgAmbient& a);

/// True iff no nonzero integer combination of zs lies in s.
bool independent_wrt(std::span<const GroupVector> zs, const SubgroupBasis& s);

/// Same subgroup, decided by mutual generator membership.
bool same_subgroup(const SubgroupBasis& a, const SubgroupBasis& b);
/// Every generator of inner lies in outer.
bool contains_subgroup(const SubgroupBasis& outer, const SubgroupBasis& inner);

/// Subgroup generated by s and the extra vectors.
SubgroupBasis extend(const SubgroupBasis& s, std::span<const GroupVector> extra);

/// Equivalent generating set with at most dimension() elements.
SubgroupBasis simplify(const SubgroupBasis& s);

/// Builds Gamma_1 = <gamma, ys>, Gamma_1' = <gamma, ys + zs> and reports
/// whether Gamma_1 ∩ Gamma_1' = gamma. Throws InputError if zs are not
/// independent with respect to Gamma_1.
bool verify_prop_fg(const SubgroupBasis& gamma, std::span<const GroupVector> ys,
                    std::span<const GroupVector> zs);

/// Direct sum A_1 + ... + A_k with free coordinates listed before torsion.
class DirectSum {
 public:
  explicit DirectSum(std::vector<FgAmbient> parts);
  const FgAmbient& ambient() const noexcept { return ambient_; }
  std::size_t part_count() const noexcept { return parts_.size(); }
  const FgAmbient& part(std::size_t i) const { return parts_.at(i); }
  GroupVector inject(std::size_t i, const GroupVector& v) const;
  GroupVector join(std::span<const GroupVector> vs) const;
  GroupVector component(const GroupVector& v, std::size_t i) const;

 private:
  std::vector<FgAmbient> parts_;
  FgAmbient ambient_;
  std::vector<std::size_t> free_offset_;
  std::vector<std::size_t> torsion_offset_;
};

std::string to_string(const GroupVector& v);

}  // namespace semiab::fgab
