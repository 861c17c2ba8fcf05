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

// Self-maps and orbits: affine maps of finitely generated groups with exact
// return sets, and rational maps of the torus iterated on factored points.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semiab/fgab.hpp"
#include "semiab/lrs.hpp"
#include "semiab/mulgroup.hpp"
#include "semiab/poly.hpp"

namespace semiab::dynamics {

/// x -> endo(x) + translation.
class AffineSelfMap {
 public:
  AffineSelfMap() = default;
  /// Throws InputError unless endo is an endomorphism and translation lies in its ambient.
  AffineSelfMap(fgab::GroupHom endo, fgab::GroupVector translation);

  const fgab::GroupHom& endo() const noexcept { return endo_; }
  const fgab::GroupVector& translation() const noexcept { return translation_; }
  const fgab::FgAmbient& ambient() const noexcept { return endo_.domain(); }

  fgab::GroupVector apply(const fgab::GroupVector& x) const;

 private:
  fgab::GroupHom endo_;
  fgab::GroupVector translation_;
};

/// Psi^g = e_1 Psi^{g-1} + ... + e_g.
struct IntegralRelation {
  IntVector e;
  std::size_t order() const noexcept { return e.size(); }
};

/// Monic relation from the minimal polynomial of the matrix, checked on
/// every ambient generator.
IntegralRelation integral_relation(const fgab::GroupHom& psi);

/// Coefficients of order g+1 satisfied by every orbit of phi.
IntVector orbit_recurrence(const AffineSelfMap& phi);

fgab::GroupVector iterate_sequential(const AffineSelfMap& phi, const fgab::GroupVector& alpha, std::uint64_t n);
/// Psi^n(alpha) + sum_{j<n} Psi^j(beta).
fgab::GroupVector iterate_closed_form(const AffineSelfMap& phi, const fgab::GroupVector& alpha, std::uint64_t n);
/// Both of the above; throws InvariantViolation if they differ.
fgab::GroupVector iterate_regular(const AffineSelfMap& phi, const fgab::GroupVector& alpha, std::uint64_t n);

/// alpha, phi(alpha), ..., phi^{count-1}(alpha).
std::vector<fgab::GroupVector> orbit(const AffineSelfMap& phi, const fgab::GroupVector& alpha, std::size_t count);
/// The orbit as a group LRS with orbit_recurrence coefficients.
lrs::GroupLRS orbit_lrs(const AffineSelfMap& phi, const fgab::GroupVector& alpha);

/// Gamma extended by phi^0(alpha), ..., phi^g(alpha); holds the whole orbit.
fgab::SubgroupBasis orbit_fg_closure(const AffineSelfMap& phi, const fgab::GroupVector& alpha,
                                     const fgab::SubgroupBasis& gamma);

enum class ResultKind { Exact, Empirical };
std::string to_string(ResultKind k);

struct ReturnSetResult {
  ResultKind kind = ResultKind::Exact;
  std::uint64_t n_max = 0;
  /// Membership of n in the return set, n = 0..bitmap.size()-1. Shorter than
  /// n_max + 1 only when truncated.
  std::vector<bool> bitmap;
  /// Present for exact results.
  std::optional<lrs::ZeroSetReport> decomposition;
  bool truncated = false;
  std::vector<std::string> notes;

  std::vector<std::uint64_t> members() const;
};

/// Exact decomposition through group_zero_set, cross-checked against a
/// membership scan of [0, n_max].
ReturnSetResult return_set_regular(const AffineSelfMap& phi, const fgab::GroupVector& alpha,
                                   const fgab::SubgroupBasis& gamma, const lrs::ZeroSetOptions& options);

/// A self-map of the torus (K*)^N given by N rational functions in x1..xN.
class RationalTorusMap {
 public:
  /// coordinate_j(x) = scale_j * prod_k x_k^exponents[j][k].
  struct Monomial {
    std::vector<Scalar> scale;
    std::vector<std::vector<long>> exponents;
  };

  RationalTorusMap(FieldSpec field, std::vector<RationalFunction> coordinates);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rank() const noexcept { return coordinates_.size(); }
  const std::vector<RationalFunction>& coordinates() const noexcept { return coordinates_; }
  /// Set when every coordinate is a single term over a single term.
  const std::optional<Monomial>& monomial() const noexcept { return monomial_; }

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<RationalFunction> coordinates_;
  std::optional<Monomial> monomial_;
};

struct IterationOptions {
  /// Largest coordinate size, in bits, before the scan stops.
  std::size_t height_cap_bits = std::size_t{1} << 20;
  mulgroup::FactorOptions factor;
};

/// Storage size of a factored element: bits of every irreducible and exponent.
std::size_t factored_bits(const mulgroup::FactoredElement& x);

/// Iterates step by step. Monomial maps act on factorizations directly;
/// other maps are evaluated and the results refactored.
class TorusIterator {
 public:
  /// Throws InputError when a coordinate of x is zero or the ranks disagree.
  TorusIterator(const RationalTorusMap& map, mulgroup::TorusPoint x, IterationOptions options = {});

  const mulgroup::TorusPoint& point() const noexcept { return point_; }
  std::uint64_t steps() const noexcept { return steps_; }
  /// Size of the largest coordinate of the current point, in bits.
  std::size_t height_bits() const noexcept { return height_; }
  bool over_cap() const noexcept { return height_ > options_.height_cap_bits; }

  /// Throws UndefinedOrbit (with the 1-based step) when a denominator
  /// vanishes or a coordinate becomes zero.
  void advance();

 private:
  const RationalTorusMap* map_;
  IterationOptions options_;
  mulgroup::TorusPoint point_;
  std::vector<Scalar> values_;  // multiplied out, kept only for non-monomial maps
  std::vector<mulgroup::FactoredElement> scale_;
  std::uint64_t steps_ = 0;
  std::size_t height_ = 0;
};

/// F^n(x). Throws UndefinedOrbit, or ResourceExceeded past the height cap.
mulgroup::TorusPoint iterate_rational(const RationalTorusMap& map, const mulgroup::TorusPoint& x, std::uint64_t n,
                                      const IterationOptions& options = {});

/// Membership bitmap of {n <= n_max : F^n(alpha) in gamma}. Stops early and
/// sets truncated once the height cap is exceeded.
ReturnSetResult return_set_empirical(const RationalTorusMap& map, const mulgroup::TorusPoint& alpha,
                                     const mulgroup::TorusSubgroup& gamma, std::uint64_t n_max,
                                     const IterationOptions& options = {});
/// The one-dimensional case.
ReturnSetResult return_set_empirical(const RationalTorusMap& map, const mulgroup::FactoredElement& alpha,
                                     const mulgroup::MulSubgroup& gamma, std::uint64_t n_max,
                                     const IterationOptions& options = {});

/// The affine map induced by a monomial map on torus coordinates relative to
/// an embedding whose support holds every scale factor. Throws InputError
/// when the map is not monomial or a scale factor is outside the support.
AffineSelfMap monomial_lattice_map(const RationalTorusMap& map, const mulgroup::TorusEmbedding& embedding,
                                   const mulgroup::FactorOptions& options = {});

}  // namespace semiab::dynamics
