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

// Split models G = (K*)^N x A of a semiabelian variety and the orbit
// pipeline that reduces membership in a subgroup of G to membership of a
// torus sequence in a subgroup of the torus.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semiab/dynamics.hpp"
#include "semiab/fgab.hpp"
#include "semiab/lrs.hpp"
#include "semiab/mulgroup.hpp"

namespace semiab::semiabelian {

struct SplitModel {
  FieldSpec field;
  std::size_t torus_rank = 1;
  fgab::FgAmbient abelian;

  /// Throws InputError unless torus_rank >= 1.
  void check() const;
};

struct ModelPoint {
  mulgroup::TorusPoint torus;
  fgab::GroupVector base;

  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

ModelPoint identity(const SplitModel& model);
ModelPoint multiply(const SplitModel& model, const ModelPoint& a, const ModelPoint& b);
ModelPoint divide(const SplitModel& model, const ModelPoint& a, const ModelPoint& b);
ModelPoint power(const SplitModel& model, const ModelPoint& a, const Integer& k);
/// Checks field, dimensions and that every torus coordinate is nonzero.
void check_point(const SplitModel& model, const ModelPoint& p);

/// The base coordinate.
fgab::GroupVector project(const ModelPoint& p);

/// Phi(x, a) = (F(x), phi(a)).
struct ModelMap {
  dynamics::RationalTorusMap torus_map;
  dynamics::AffineSelfMap base_map;
};

/// Phi^m = c_1 Phi^{m-1} + ... + c_m as affine maps of the base.
struct BaseRecurrence {
  IntVector c;
  std::size_t m() const noexcept { return c.size(); }
};

/// From integral_relation of the linear part, extended by (X - 1) when the
/// translation is nonzero. Checked on every generator and 20 pseudo-random points.
BaseRecurrence base_recurrence(const dynamics::AffineSelfMap& phi);

/// (y_1, ..., y_m) -> (y_2, ..., y_m, c_1 y_m + ... + c_m y_1) on A^m.
fgab::GroupHom build_psi(const IntVector& c, const fgab::FgAmbient& abelian);
/// The same rule on G^m.
std::vector<ModelPoint> apply_psi(const SplitModel& model, const IntVector& c, const std::vector<ModelPoint>& ys);

/// beta_i = (eps_i, phi^i(alpha base)) with eps_i = 1 when epsilons is empty.
std::vector<ModelPoint> lift_betas(const SplitModel& model, const ModelPoint& alpha, const dynamics::AffineSelfMap& phi,
                                   std::size_t m, const std::vector<mulgroup::TorusPoint>& epsilons = {});

/// beta_0..beta_{count-1}, continuing the first m by the base recurrence in G.
std::vector<ModelPoint> extend_betas(const SplitModel& model, const std::vector<ModelPoint>& betas, const IntVector& c,
                                     std::size_t count);

/// (x, y_1, ..., y_m) -> (x - y_1, y_1, ..., y_m).
std::vector<ModelPoint> theta(const SplitModel& model, const std::vector<ModelPoint>& tuple);

/// A finitely generated subgroup of G, embedded in (unit + Z^S)^N + A for
/// the support S of its generators (plus any extra irreducibles).
class ProductSubgroup {
 public:
  ProductSubgroup(SplitModel model, std::vector<ModelPoint> generators,
                  std::vector<mulgroup::Irreducible> extra_support = {});

  const SplitModel& model() const noexcept { return model_; }
  const std::vector<ModelPoint>& generators() const noexcept { return generators_; }
  const mulgroup::TorusEmbedding& torus_embedding() const noexcept { return torus_; }
  const std::vector<mulgroup::Irreducible>& support() const { return torus_.factor().support(); }
  /// Torus block first, then the abelian model.
  const fgab::DirectSum& layout() const noexcept { return layout_; }
  const fgab::SubgroupBasis& lattice() const noexcept { return oracle_.subgroup(); }

  std::optional<fgab::GroupVector> coordinates(const ModelPoint& p) const;
  ModelPoint element(const fgab::GroupVector& v) const;
  std::optional<IntVector> member(const ModelPoint& p) const;

 private:
  SplitModel model_;
  std::vector<ModelPoint> generators_;
  mulgroup::TorusEmbedding torus_;
  fgab::DirectSum layout_;
  fgab::MembershipOracle oracle_;
};

/// <Gamma, beta_0, ..., beta_{m-1}>.
ProductSubgroup gamma1(const ProductSubgroup& gamma, const std::vector<ModelPoint>& betas,
                       const std::vector<mulgroup::Irreducible>& extra_support = {});

/// Gamma_1 ∩ (K*)^N, as a subgroup of the torus block of gamma1's embedding.
fgab::SubgroupBasis torus_coset_H(const ProductSubgroup& gamma1);

/// {n : x_{kn+l} in H} for a group LRS x of exponent vectors.
lrs::ZeroSetReport exponent_membership_on_ap(const lrs::GroupLRS& exponents, std::uint64_t k, std::uint64_t l,
                                             const fgab::SubgroupBasis& h, const lrs::ZeroSetOptions& options);

/// n distinct primes (Q) or monic irreducibles (F_p(t)) outside excluded, smallest first.
std::vector<mulgroup::Irreducible> fresh_irreducibles(const FieldSpec& field, std::size_t n,
                                                      const std::vector<mulgroup::Irreducible>& excluded);

/// {n <= n_max : Phi^n(alpha) in <gamma>}. Exact through the lattice form of
/// the product map when the torus map is monomial; otherwise an orbit scan.
dynamics::ReturnSetResult return_set(const SplitModel& model, const ModelMap& phi, const ModelPoint& alpha,
                                     const std::vector<ModelPoint>& gamma, const lrs::ZeroSetOptions& zero_set,
                                     const dynamics::IterationOptions& iteration = {});

struct PipelineOptions {
  std::uint64_t n_max = 300;
  bool perturbed = true;
  std::uint64_t psi_check_bound = 100;
  dynamics::IterationOptions iteration;
  lrs::ZeroSetOptions zero_set;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PerturbedRun {
  std::vector<mulgroup::TorusPoint> epsilons;
  std::vector<ModelPoint> betas;
  std::vector<ModelPoint> gamma1_generators;
  std::vector<bool> r1_prime;
};

struct PipelineArtifacts {
  IntVector c;
  std::vector<ModelPoint> betas;
  std::vector<ModelPoint> gamma1_generators;
  std::vector<mulgroup::Irreducible> gamma1_support;
  /// Generators of H as torus points.
  std::vector<mulgroup::TorusPoint> h_generators;
  /// Entries of the generators of H.
  std::vector<mulgroup::FactoredElement> e_generators;
  /// Torus parts of x_n - beta_n.
  std::vector<mulgroup::TorusPoint> thetas;
  std::vector<bool> r;         // x_n in Gamma
  std::vector<bool> r1;        // x_n in Gamma_1
  std::vector<bool> r1_tilde;  // theta_n in H
  std::optional<lrs::ZeroSetReport> exponent_report;
  std::string exponent_status;
  std::optional<PerturbedRun> perturbed;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;

  std::size_t m() const noexcept { return c.size(); }
  bool all_passed() const;
};

/// Runs every stage on the orbit of alpha up to options.n_max and records
/// each checked identity. Throws UndefinedOrbit when the orbit leaves the torus.
PipelineArtifacts run_pipeline(const SplitModel& model, const ModelMap& phi, const ModelPoint& alpha,
                               const std::vector<ModelPoint>& gamma, const PipelineOptions& options);

}  // namespace semiab::semiabelian
