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

#include "semiab/semiabelian.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "semiab/error.hpp"

namespace semiab::semiabelian {

using fgab::FgAmbient;
using fgab::GroupHom;
using fgab::GroupVector;
using fgab::SubgroupBasis;
using mulgroup::FactoredElement;
using mulgroup::Irreducible;
using mulgroup::TorusPoint;

namespace {

std::vector<Irreducible> merge(std::vector<Irreducible> a, const std::vector<Irreducible>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Irreducible> torus_support(const std::vector<ModelPoint>& points) {
  std::vector<TorusPoint> t;
  for (const auto& p : points) t.push_back(p.torus);
  return mulgroup::support_of(std::span<const TorusPoint>(t));
}

// The endomorphism of a direct sum given by a rule on its components.
template <class Rule>
GroupHom block_hom(const fgab::DirectSum& ds, Rule rule) {
  const FgAmbient& a = ds.ambient();
  IntMatrix mat(a.dimension(), a.dimension());
  for (std::size_t col = 0; col < a.dimension(); ++col) {
    const GroupVector e = a.basis_vector(col);
    std::vector<GroupVector> in;
    for (std::size_t i = 0; i < ds.part_count(); ++i) in.push_back(ds.component(e, i));
    const IntVector image = ds.join(rule(in)).coordinates();
    for (std::size_t row = 0; row < a.dimension(); ++row) mat(row, col) = image[row];
  }
  return GroupHom(a, a, std::move(mat));
}

std::string first_failure(const char* what, std::uint64_t n) {
  return std::string(what) + " fails at n = " + std::to_string(n);
}

}  // namespace

void SplitModel::check() const {
  if (torus_rank == 0) throw InputError("the split model needs torus rank at least 1");
}

ModelPoint identity(const SplitModel& model) {
  return ModelPoint{mulgroup::torus_one(model.field, model.torus_rank), model.abelian.zero()};
}

ModelPoint multiply(const SplitModel& model, const ModelPoint& a, const ModelPoint& b) {
  return ModelPoint{mulgroup::torus_multiply(a.torus, b.torus), model.abelian.add(a.base, b.base)};
}

ModelPoint divide(const SplitModel& model, const ModelPoint& a, const ModelPoint& b) {
  return ModelPoint{mulgroup::torus_divide(a.torus, b.torus), model.abelian.sub(a.base, b.base)};
}

ModelPoint power(const SplitModel& model, const ModelPoint& a, const Integer& k) {
  return ModelPoint{mulgroup::torus_power(a.torus, k), model.abelian.scale(k, a.base)};
}

void check_point(const SplitModel& model, const ModelPoint& p) {
  if (p.torus.size() != model.torus_rank)
    throw InputError("point has " + std::to_string(p.torus.size()) + " torus coordinates, expected " +
                     std::to_string(model.torus_rank));
  for (const auto& x : p.torus)
    if (!(x.field == model.field)) throw InputError("torus coordinate over the wrong field");
  if (!model.abelian.contains(p.base)) throw InputError("base coordinate is not in the abelian model");
}

GroupVector project(const ModelPoint& p) { return p.base; }

BaseRecurrence base_recurrence(const dynamics::AffineSelfMap& phi) {
  const auto rel = dynamics::integral_relation(phi.endo());
  BaseRecurrence out;
  out.c = phi.translation().is_zero() ? rel.e : lrs::times_x_minus_one(rel.e);
  const FgAmbient& a = phi.ambient();
  const std::size_t m = out.m();

  std::vector<GroupVector> points;
  for (std::size_t i = 0; i < a.dimension(); ++i) points.push_back(a.basis_vector(i));
  std::mt19937_64 rng(0xba5e);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (int i = 0; i < 20; ++i) {
    IntVector v(a.dimension());
    for (auto& x : v) x = dist(rng);
    points.push_back(a.from_coordinates(v));
  }
  for (const auto& p : points) {
    const auto orb = dynamics::orbit(phi, p, m + 1);
    GroupVector rhs = a.zero();
    for (std::size_t j = 1; j <= m; ++j) rhs = a.add(rhs, a.scale(out.c[j - 1], orb[m - j]));
    check_invariant(rhs == orb[m], "base recurrence fails at " + fgab::to_string(p));
  }
  return out;
}

GroupHom build_psi(const IntVector& c, const FgAmbient& abelian) {
  const std::size_t m = c.size();
  if (m == 0) throw InputError("the base recurrence must have order at least 1");
  const fgab::DirectSum ds(std::vector<FgAmbient>(m, abelian));
  return block_hom(ds, [&](const std::vector<GroupVector>& y) {
    std::vector<GroupVector> out(y.begin() + 1, y.end());
    GroupVector last = abelian.zero();
    for (std::size_t j = 1; j <= m; ++j) last = abelian.add(last, abelian.scale(c[j - 1], y[m - j]));
    out.push_back(std::move(last));
    return out;
  });
}

std::vector<ModelPoint> apply_psi(const SplitModel& model, const IntVector& c, const std::vector<ModelPoint>& ys) {
  const std::size_t m = c.size();
  if (ys.size() != m) throw InputError("tuple length differs from the recurrence order");
  std::vector<ModelPoint> out(ys.begin() + 1, ys.end());
  ModelPoint last = identity(model);
  for (std::size_t j = 1; j <= m; ++j) last = multiply(model, last, power(model, ys[m - j], c[j - 1]));
  out.push_back(std::move(last));
  return out;
}

std::vector<ModelPoint> lift_betas(const SplitModel& model, const ModelPoint& alpha, const dynamics::AffineSelfMap& phi,
                                   std::size_t m, const std::vector<TorusPoint>& epsilons) {
  if (!epsilons.empty() && epsilons.size() != m)
    throw InputError("expected " + std::to_string(m) + " perturbations, got " + std::to_string(epsilons.size()));
  const auto base = dynamics::orbit(phi, alpha.base, m);
  std::vector<ModelPoint> out;
  for (std::size_t i = 0; i < m; ++i) {
    TorusPoint t = epsilons.empty() ? mulgroup::torus_one(model.field, model.torus_rank) : epsilons[i];
    out.push_back(ModelPoint{std::move(t), base[i]});
    check_invariant(project(out.back()) == base[i], "lifted point does not project to the base orbit");
  }
  return out;
}

std::vector<ModelPoint> extend_betas(const SplitModel& model, const std::vector<ModelPoint>& betas, const IntVector& c,
                                     std::size_t count) {
  const std::size_t m = c.size();
  if (betas.size() != m) throw InputError("expected " + std::to_string(m) + " initial lifts");
  std::vector<ModelPoint> out(betas.begin(), betas.begin() + static_cast<long>(std::min(count, m)));
  while (out.size() < count) {
    const std::size_t n = out.size();
    ModelPoint next = identity(model);
    for (std::size_t j = 1; j <= m; ++j) next = multiply(model, next, power(model, out[n - j], c[j - 1]));
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<ModelPoint> theta(const SplitModel& model, const std::vector<ModelPoint>& tuple) {
  if (tuple.size() < 2) return tuple;
  std::vector<ModelPoint> out = tuple;
  out[0] = divide(model, tuple[0], tuple[1]);
  return out;
}

// ---------------------------------------------------------------------------
// ProductSubgroup

namespace {

fgab::SubgroupBasis product_lattice(const ProductSubgroup& s, const std::vector<ModelPoint>& gens) {
  std::vector<GroupVector> coords;
  for (const auto& g : gens) {
    auto v = s.coordinates(g);
    check_invariant(v.has_value(), "generator outside its own support");
    coords.push_back(std::move(*v));
  }
  return SubgroupBasis(s.layout().ambient(), std::move(coords));
}

}  // namespace

ProductSubgroup::ProductSubgroup(SplitModel model, std::vector<ModelPoint> generators,
                                 std::vector<Irreducible> extra_support)
    : model_(std::move(model)),
      generators_(std::move(generators)),
      torus_(model_.field, model_.torus_rank, merge(torus_support(generators_), extra_support)),
      layout_(std::vector<FgAmbient>{torus_.ambient(), model_.abelian}),
      oracle_(SubgroupBasis::trivial(layout_.ambient())) {
  model_.check();
  for (const auto& g : generators_) check_point(model_, g);
  oracle_ = fgab::MembershipOracle(product_lattice(*this, generators_));
}

std::optional<GroupVector> ProductSubgroup::coordinates(const ModelPoint& p) const {
  check_point(model_, p);
  auto t = torus_.coordinates(p.torus);
  if (!t) return std::nullopt;
  const std::vector<GroupVector> parts{std::move(*t), p.base};
  return layout_.join(parts);
}

ModelPoint ProductSubgroup::element(const GroupVector& v) const {
  return ModelPoint{torus_.element(layout_.component(v, 0)), layout_.component(v, 1)};
}

std::optional<IntVector> ProductSubgroup::member(const ModelPoint& p) const {
  auto v = coordinates(p);
  if (!v) return std::nullopt;
  return oracle_.witness(*v);
}

ProductSubgroup gamma1(const ProductSubgroup& gamma, const std::vector<ModelPoint>& betas,
                       const std::vector<Irreducible>& extra_support) {
  std::vector<ModelPoint> gens = gamma.generators();
  gens.insert(gens.end(), betas.begin(), betas.end());
  return ProductSubgroup(gamma.model(), std::move(gens), merge(gamma.support(), extra_support));
}

SubgroupBasis torus_coset_H(const ProductSubgroup& g1) {
  const auto& ds = g1.layout();
  const FgAmbient& t = ds.part(0);
  std::vector<GroupVector> torus_basis;
  for (std::size_t i = 0; i < t.dimension(); ++i) torus_basis.push_back(ds.inject(0, t.basis_vector(i)));
  const SubgroupBasis both = fgab::intersect(g1.lattice(), SubgroupBasis(ds.ambient(), torus_basis));
  std::vector<GroupVector> gens;
  for (const auto& g : both.generators) {
    check_invariant(ds.component(g, 1).is_zero(), "torus intersection has a base component");
    GroupVector h = ds.component(g, 0);
    if (!h.is_zero()) gens.push_back(std::move(h));
  }
  return fgab::simplify(SubgroupBasis(t, std::move(gens)));
}

lrs::ZeroSetReport exponent_membership_on_ap(const lrs::GroupLRS& exponents, std::uint64_t k, std::uint64_t l,
                                             const SubgroupBasis& h, const lrs::ZeroSetOptions& options) {
  exponents.check();
  if (!(h.ambient == exponents.ambient)) throw InputError("subgroup and sequence live in different ambients");
  if (k == 0) throw InputError("progression step must be positive");
  const std::size_t d = exponents.order();
  lrs::GroupLRS sub;
  sub.ambient = exponents.ambient;
  sub.coefficients = lrs::subsequence(lrs::IntegerLRS{exponents.coefficients, IntVector(d)}, k, 0).coefficients;
  const auto all = lrs::group_terms(exponents, static_cast<std::size_t>(l + k * (d - 1) + 1));
  for (std::size_t i = 0; i < d; ++i) sub.initial.push_back(all[l + k * i]);
  return lrs::group_zero_set(sub, h, options);
}

std::vector<Irreducible> fresh_irreducibles(const FieldSpec& field, std::size_t n,
                                            const std::vector<Irreducible>& excluded) {
  const std::set<Irreducible> skip(excluded.begin(), excluded.end());
  std::vector<Irreducible> out;
  if (!field.is_function_field()) {
    Integer p = 2;
    while (out.size() < n) {
      if (!skip.count(Irreducible(p))) out.emplace_back(p);
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return out;
  }
  const std::uint32_t p = field.p;
  for (std::size_t deg = 1; out.size() < n; ++deg) {
    // Monic polynomials of this degree, lower coefficients counted in base p.
    std::vector<std::uint64_t> digits(deg, 0);
    while (out.size() < n) {
      FpPoly f = FpPoly::monomial(p, 1, deg);
      for (std::size_t i = 0; i < deg; ++i)
        if (digits[i]) f = f + FpPoly::monomial(p, digits[i], i);
      if (is_irreducible(f) && !skip.count(Irreducible(f))) out.emplace_back(f);
      std::size_t i = 0;
      while (i < deg && ++digits[i] == p) digits[i++] = 0;
      if (i == deg) break;
    }
  }
  return out;
}

dynamics::ReturnSetResult return_set(const SplitModel& model, const ModelMap& phi, const ModelPoint& alpha,
                                     const std::vector<ModelPoint>& gamma, const lrs::ZeroSetOptions& zero_set,
                                     const dynamics::IterationOptions& iteration) {
  model.check();
  check_point(model, alpha);
  if (phi.torus_map.rank() != model.torus_rank || !(phi.torus_map.field() == model.field))
    throw InputError("torus map does not match the model");
  if (!(phi.base_map.ambient() == model.abelian)) throw InputError("base map does not act on the abelian model");
  for (const auto& g : gamma) check_point(model, g);

  if (const auto& mono = phi.torus_map.monomial()) {
    std::vector<ModelPoint> pts = gamma;
    pts.push_back(alpha);
    std::vector<Irreducible> support = torus_support(pts);
    for (const auto& s : mono->scale)
      for (const auto& [q, e] : mulgroup::factor(s, model.field, iteration.factor).exponents) support.push_back(q);
    const ProductSubgroup lattice(model, gamma, merge(std::move(support), {}));
    const auto lin = dynamics::monomial_lattice_map(phi.torus_map, lattice.torus_embedding(), iteration.factor);
    const fgab::DirectSum& ds = lattice.layout();
    const GroupHom endo = block_hom(ds, [&](const std::vector<GroupVector>& v) {
      return std::vector<GroupVector>{lin.endo().apply(v[0]), phi.base_map.endo().apply(v[1])};
    });
    const std::vector<GroupVector> shift{lin.translation(), phi.base_map.translation()};
    const dynamics::AffineSelfMap product(endo, ds.join(shift));
    auto r = dynamics::return_set_regular(product, *lattice.coordinates(alpha), lattice.lattice(), zero_set);
    r.notes.push_back("monomial torus map: decided exactly on the exponent lattice");
    return r;
  }

  if (model.abelian.is_trivial()) {
    std::vector<TorusPoint> gens;
    for (const auto& g : gamma) gens.push_back(g.torus);
    const mulgroup::TorusSubgroup torus(model.field, model.torus_rank, std::move(gens));
    return dynamics::return_set_empirical(phi.torus_map, alpha.torus, torus, zero_set.n_max, iteration);
  }

  const ProductSubgroup sub(model, gamma);
  dynamics::ReturnSetResult r;
  r.kind = dynamics::ResultKind::Empirical;
  r.n_max = zero_set.n_max;
  dynamics::TorusIterator it(phi.torus_map, alpha.torus, iteration);
  GroupVector base = alpha.base;
  for (std::uint64_t n = 0;; ++n) {
    r.bitmap.push_back(sub.member(ModelPoint{it.point(), base}).has_value());
    if (n == zero_set.n_max) break;
    it.advance();
    base = phi.base_map.apply(base);
    if (it.over_cap()) {
      r.truncated = true;
      r.notes.push_back("scan stopped after n = " + std::to_string(n) + ": iterate " + std::to_string(it.steps()) +
                        " exceeds the height cap of " + std::to_string(iteration.height_cap_bits) + " bits");
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pipeline

bool PipelineArtifacts::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::vector<Assertion>& out) : out_(out) {}
  void add(std::string name, bool ok, std::string detail = {}) {
    out_.push_back(Assertion{std::move(name), ok, ok ? std::string() : std::move(detail)});
  }

 private:
  std::vector<Assertion>& out_;
};

template <class Pred>
std::optional<std::uint64_t> first_bad(std::uint64_t count, Pred ok) {
  for (std::uint64_t n = 0; n < count; ++n)
    if (!ok(n)) return n;
  return std::nullopt;
}

TorusPoint epsilon_point(const SplitModel& model, const Irreducible& q) {
  TorusPoint t = mulgroup::torus_one(model.field, model.torus_rank);
  t[0].exponents.emplace(q, 1);
  return t;
}

}  // namespace

PipelineArtifacts run_pipeline(const SplitModel& model, const ModelMap& phi, const ModelPoint& alpha,
                               const std::vector<ModelPoint>& gamma, const PipelineOptions& options) {
  model.check();
  check_point(model, alpha);
  if (phi.torus_map.rank() != model.torus_rank || !(phi.torus_map.field() == model.field))
    throw InputError("torus map does not match the model");
  if (!(phi.base_map.ambient() == model.abelian)) throw InputError("base map does not act on the abelian model");

  PipelineArtifacts art;
  Recorder rec(art.assertions);
  const std::uint64_t n_max = options.n_max;
  const std::uint64_t count = n_max + 1;

  art.c = base_recurrence(phi.base_map).c;
  const std::size_t m = art.m();

  // The orbit x_n, n = 0..n_max.
  std::vector<ModelPoint> xs;
  {
    dynamics::TorusIterator it(phi.torus_map, alpha.torus, options.iteration);
    GroupVector base = alpha.base;
    for (std::uint64_t n = 0; n < count; ++n) {
      xs.push_back(ModelPoint{it.point(), base});
      if (n + 1 == count) break;
      it.advance();
      if (it.over_cap())
        throw ResourceExceeded("orbit point " + std::to_string(it.steps()) + " exceeds the height cap of " +
                               std::to_string(options.iteration.height_cap_bits) + " bits");
      base = phi.base_map.apply(base);
    }
  }
  const auto base_orbit = dynamics::orbit(phi.base_map, alpha.base, options.psi_check_bound + m + 1);

  art.betas = lift_betas(model, alpha, phi.base_map, m);
  const auto betas = extend_betas(model, art.betas, art.c, count + m);

  {
    auto bad = first_bad(count, [&](std::uint64_t n) { return project(xs[n]) == project(betas[n]); });
    rec.add("prop_beta_n", !bad, bad ? first_failure("pi(x_n) = pi(beta_n)", *bad) : "");
  }
  {
    const GroupHom psi = build_psi(art.c, model.abelian);
    const fgab::DirectSum ds(std::vector<FgAmbient>(m, model.abelian));
    std::vector<ModelPoint> ys(xs.begin(), xs.begin() + static_cast<long>(std::min<std::size_t>(m, xs.size())));
    while (ys.size() < m) ys.push_back(ModelPoint{mulgroup::torus_one(model.field, model.torus_rank),
                                                  base_orbit[ys.size()]});
    std::vector<GroupVector> proj;
    for (const auto& y : ys) proj.push_back(project(y));
    GroupVector lin = ds.join(proj);
    std::optional<std::uint64_t> bad;
    for (std::uint64_t n = 0; n <= options.psi_check_bound && !bad; ++n) {
      for (std::size_t i = 0; i < m; ++i)
        if (!(project(ys[i]) == base_orbit[n + i]) || !(ds.component(lin, i) == base_orbit[n + i])) bad = n;
      ys = apply_psi(model, art.c, ys);
      lin = psi.apply(lin);
    }
    rec.add("prop_psi", !bad, bad ? first_failure("coordinates of Psi^n", *bad) : "");
  }

  const ProductSubgroup gamma_sub(model, gamma);
  const ProductSubgroup g1 = gamma1(gamma_sub, art.betas);
  art.gamma1_generators = g1.generators();
  art.gamma1_support = g1.support();
  {
    const std::uint64_t bound = std::min<std::uint64_t>(count, 101);
    auto bad = first_bad(bound, [&](std::uint64_t n) { return g1.member(betas[n]).has_value(); });
    rec.add("beta_span", !bad, bad ? first_failure("beta_n in Gamma_1", *bad) : "");
  }

  const SubgroupBasis h = torus_coset_H(g1);
  const fgab::MembershipOracle h_oracle(h);
  for (const auto& v : h.generators) art.h_generators.push_back(g1.torus_embedding().element(v));

  {
    std::optional<std::uint64_t> bad;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::vector<ModelPoint> tuple{xs[n]};
      tuple.insert(tuple.end(), betas.begin() + static_cast<long>(n), betas.begin() + static_cast<long>(n + m));
      const auto th = theta(model, tuple);
      if (!th[0].base.is_zero() && !bad) bad = n;
      art.thetas.push_back(th[0].torus);
    }
    rec.add("prop_theta", !bad, bad ? first_failure("base part of theta_n vanishes", *bad) : "");
  }

  for (std::uint64_t n = 0; n < count; ++n) {
    art.r.push_back(gamma_sub.member(xs[n]).has_value());
    art.r1.push_back(g1.member(xs[n]).has_value());
    const auto tc = g1.torus_embedding().coordinates(art.thetas[n]);
    art.r1_tilde.push_back(tc && h_oracle.contains(*tc));
  }
  {
    auto bad = first_bad(count, [&](std::uint64_t n) { return art.r1[n] == art.r1_tilde[n]; });
    rec.add("the_same", !bad, bad ? first_failure("R_1 = R~_1", *bad) : "");
  }

  for (const auto& g : art.h_generators)
    for (const auto& x : g)
      if (!x.is_one()) art.e_generators.push_back(x);
  {
    const mulgroup::MulSubgroup e(model.field, art.e_generators);
    auto bad = first_bad(count, [&](std::uint64_t n) {
      if (!art.r1[n]) return true;
      return std::all_of(art.thetas[n].begin(), art.thetas[n].end(),
                         [&](const FactoredElement& x) { return e.member(x).has_value(); });
    });
    rec.add("coordinates_in_E", !bad, bad ? first_failure("theta_n coordinates in E on R_1", *bad) : "");
  }

  if (const auto& mono = phi.torus_map.monomial()) {
    std::vector<Irreducible> support = merge(g1.support(), mulgroup::support_of(std::span<const FactoredElement>(alpha.torus)));
    for (const auto& s : mono->scale) {
      const auto f = mulgroup::factor(s, model.field, options.iteration.factor);
      for (const auto& [q, e] : f.exponents) support.push_back(q);
    }
    support = merge(std::move(support), {});
    const mulgroup::TorusEmbedding emb(model.field, model.torus_rank, support);
    const auto lin = dynamics::monomial_lattice_map(phi.torus_map, emb, options.iteration.factor);
    lrs::GroupLRS seq;
    seq.coefficients = lrs::product_recurrence(dynamics::orbit_recurrence(lin), art.c);
    seq.ambient = emb.ambient();
    if (seq.order() > count) {
      art.exponent_status = "skipped: recurrence order exceeds the orbit length";
    } else {
      for (std::size_t i = 0; i < seq.order(); ++i) {
        auto v = emb.coordinates(art.thetas[i]);
        check_invariant(v.has_value(), "theta outside the exponent support");
        seq.initial.push_back(std::move(*v));
      }
      std::vector<GroupVector> hgens;
      for (const auto& g : art.h_generators) hgens.push_back(*emb.coordinates(g));
      lrs::ZeroSetOptions zo = options.zero_set;
      zo.n_max = n_max;
      art.exponent_report = exponent_membership_on_ap(seq, 1, 0, SubgroupBasis(emb.ambient(), hgens), zo);
      art.exponent_status = lrs::to_string(art.exponent_report->status);
      const auto bits = art.exponent_report->bitmap(n_max);
      auto bad = first_bad(count, [&](std::uint64_t n) { return bits[n] == art.r1_tilde[n]; });
      rec.add("exponent_membership", !bad, bad ? first_failure("exponent zero set matches R~_1", *bad) : "");
    }
  } else {
    art.exponent_status = "inapplicable: the torus map is not monomial";
  }

  if (options.perturbed) {
    PerturbedRun pr;
    const auto fresh = fresh_irreducibles(model.field, m, g1.support());
    for (const auto& q : fresh) pr.epsilons.push_back(epsilon_point(model, q));
    {
      const ProductSubgroup wide(model, g1.generators(), fresh);
      std::vector<GroupVector> zs;
      for (const auto& e : pr.epsilons) zs.push_back(*wide.coordinates(ModelPoint{e, model.abelian.zero()}));
      if (!fgab::independent_wrt(zs, wide.lattice()))
        throw InvariantViolation("fresh perturbations are not independent of Gamma_1");
      rec.add("epsilon_independent", true);
    }
    pr.betas = lift_betas(model, alpha, phi.base_map, m, pr.epsilons);
    const ProductSubgroup g1p = gamma1(gamma_sub, pr.betas);
    pr.gamma1_generators = g1p.generators();
    {
      const std::vector<Irreducible> all = merge(g1.support(), g1p.support());
      const ProductSubgroup a(model, gamma, all), b(model, g1.generators(), all), c(model, g1p.generators(), all);
      const bool ok = fgab::same_subgroup(fgab::intersect(b.lattice(), c.lattice()), a.lattice());
      rec.add("in_gamma", ok, ok ? "" : "Gamma_1 ∩ Gamma_1' differs from Gamma");
    }
    for (std::uint64_t n = 0; n < count; ++n) pr.r1_prime.push_back(g1p.member(xs[n]).has_value());
    auto bad = first_bad(count, [&](std::uint64_t n) { return art.r[n] == (art.r1[n] && pr.r1_prime[n]); });
    rec.add("r_equals_r1_and_r1_prime", !bad, bad ? first_failure("R = R_1 ∩ R_1'", *bad) : "");
    art.perturbed = std::move(pr);
  }
  return art;
}

}  // namespace semiab::semiabelian
