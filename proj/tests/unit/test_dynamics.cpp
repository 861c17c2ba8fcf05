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

#include <set>

#include "doctest.h"
#include "random_models.hpp"
#include "semiab/dynamics.hpp"
#include "semiab/error.hpp"

using namespace semiab;
using namespace semiab::dynamics;
using fgab::FgAmbient;
using fgab::GroupHom;
using fgab::GroupVector;
using fgab::SubgroupBasis;
using mulgroup::FactoredElement;
using mulgroup::TorusPoint;

namespace {

const FgAmbient kZ(1, {});

GroupVector z(long v) { return kZ.make({v}, {}); }

AffineSelfMap affine_z(long a, long b) { return AffineSelfMap(GroupHom(kZ, kZ, IntMatrix{{a}}), z(b)); }

SubgroupBasis multiples(long k) { return SubgroupBasis(kZ, {z(k)}); }

RationalFunction var(const FieldSpec& f, std::size_t n, std::size_t i) {
  return RationalFunction(MPoly::variable(f, n, i));
}

RationalFunction cst(const FieldSpec& f, std::size_t n, const Scalar& c) {
  return RationalFunction(MPoly::constant(f, n, c));
}

Scalar integer(const FieldSpec& f, long v) { return Scalar::from_integer(f, v); }

FactoredElement fac(const Scalar& s) { return mulgroup::factor(s, s.field()); }

std::vector<std::uint64_t> mersenne_like(std::uint64_t base, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 1; q - 1 <= bound; q *= base) out.push_back(q - 1);
  return out;
}

}  // namespace

TEST_CASE("integral_relation examples") {
  const FgAmbient z2(2, {});
  CHECK(integral_relation(GroupHom::identity(z2)).e == IntVector{1});
  CHECK(integral_relation(GroupHom(z2, z2, IntMatrix{{0, 1}, {1, 1}})).e == IntVector{1, 1});
  CHECK(integral_relation(GroupHom(kZ, kZ, IntMatrix{{2}})).e == IntVector{2});
  CHECK(integral_relation(GroupHom::identity(FgAmbient(0, {}))).e == IntVector{1});
}

TEST_CASE("orbit_recurrence examples") {
  CHECK(orbit_recurrence(affine_z(2, 1)) == IntVector{3, -2});
  const auto orb = orbit(affine_z(2, 1), z(0), 5);
  CHECK(orb[3] == z(7));
  CHECK(orbit_recurrence(affine_z(1, 1)) == IntVector{2, -1});
  const FgAmbient z2(2, {});
  const AffineSelfMap fib(GroupHom(z2, z2, IntMatrix{{0, 1}, {1, 1}}), z2.zero());
  CHECK(orbit_recurrence(fib) == IntVector{2, 0, -1});
}

TEST_CASE("iterate_regular examples") {
  CHECK(iterate_regular(affine_z(2, 1), z(9), 0) == z(9));
  CHECK(iterate_regular(affine_z(2, 1), z(0), 5) == z(31));
  const FgAmbient a(1, {2});
  const AffineSelfMap shift(GroupHom::identity(a), a.make({1}, {1}));
  CHECK(iterate_regular(shift, a.zero(), 3) == a.make({3}, {1}));
}

TEST_CASE("orbit_fg_closure examples") {
  const AffineSelfMap id(GroupHom::identity(kZ), z(0));
  CHECK(fgab::same_subgroup(orbit_fg_closure(id, z(5), multiples(3)), SubgroupBasis(kZ, {z(3), z(5)})));
  CHECK(fgab::same_subgroup(orbit_fg_closure(affine_z(2, 0), z(1), SubgroupBasis::trivial(kZ)),
                            SubgroupBasis::whole(kZ)));
  CHECK(fgab::same_subgroup(orbit_fg_closure(affine_z(1, 1), z(0), multiples(2)), SubgroupBasis::whole(kZ)));
}

TEST_CASE("return_set_regular examples") {
  lrs::ZeroSetOptions opt;
  opt.n_max = 500;
  auto r = return_set_regular(affine_z(1, 2), z(0), multiples(3), opt);
  CHECK(r.kind == ResultKind::Exact);
  REQUIRE(r.decomposition);
  CHECK(r.decomposition->status == lrs::Status::Exact);
  CHECK(r.decomposition->progressions == std::vector<lrs::Progression>{{3, 0, 0}});
  CHECK(r.decomposition->sporadic.empty());

  r = return_set_regular(affine_z(-1, 0), z(1), multiples(2), opt);
  CHECK(r.decomposition->status == lrs::Status::Exact);
  CHECK(r.decomposition->progressions.empty());
  CHECK(r.decomposition->sporadic.empty());
  CHECK(r.members().empty());

  const FgAmbient a(2, {4});
  const AffineSelfMap id(GroupHom::identity(a), a.zero());
  const SubgroupBasis g(a, {a.make({1, 2}, {3})});
  r = return_set_regular(id, a.make({2, 4}, {2}), g, opt);
  CHECK(r.decomposition->progressions == std::vector<lrs::Progression>{{1, 0, 0}});
  CHECK(r.decomposition->status == lrs::Status::Exact);
}

TEST_CASE("affine maps reject bad data") {
  const FgAmbient a(1, {});
  const FgAmbient b(2, {});
  CHECK_THROWS_AS(AffineSelfMap(GroupHom(a, b, IntMatrix{{1}, {1}}), a.zero()), InputError);
  CHECK_THROWS_AS(AffineSelfMap(GroupHom::identity(a), b.zero()), InputError);
  CHECK_THROWS_AS(return_set_regular(affine_z(1, 1), z(0), SubgroupBasis::trivial(b), {}), InputError);
}

TEST_CASE("orbit recurrence holds on random affine maps") {
  testing::Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    FgAmbient a = testing::random_ambient(rng, 3, 6);
    while (a.torsion_count() > 2) a = testing::random_ambient(rng, 3, 6);
    const AffineSelfMap phi = testing::random_affine(rng, a, -3, 3);
    const IntVector c = orbit_recurrence(phi);
    const std::size_t k = c.size();
    const auto orb = orbit(phi, testing::random_vector(rng, a, -5, 5), 50 + k + 1);
    for (std::size_t n = 0; n + k < orb.size(); ++n) {
      GroupVector rhs = a.zero();
      for (std::size_t i = 1; i <= k; ++i) rhs = a.add(rhs, a.scale(c[i - 1], orb[n + k - i]));
      REQUIRE(rhs == orb[n + k]);
    }
  }
}

TEST_CASE("closed form agrees with sequential iteration") {
  testing::Rng rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const FgAmbient a = testing::random_ambient(rng, 3, 6);
    const AffineSelfMap phi = testing::random_affine(rng, a, -2, 2);
    const GroupVector alpha = testing::random_vector(rng, a, -5, 5);
    const auto orb = orbit(phi, alpha, 201);
    for (std::uint64_t n : {0, 1, 2, 7, 50, 131, 200}) CHECK(iterate_closed_form(phi, alpha, n) == orb[n]);
    CHECK_NOTHROW(iterate_regular(phi, alpha, 200));
  }
}

TEST_CASE("orbit closure holds the orbit") {
  testing::Rng rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    const FgAmbient a = testing::random_ambient(rng, 3, 6);
    const AffineSelfMap phi = testing::random_affine(rng, a, -3, 3);
    const GroupVector alpha = testing::random_vector(rng, a, -5, 5);
    const SubgroupBasis g1 = orbit_fg_closure(phi, alpha, testing::random_subgroup(rng, a, 2, -4, 4));
    const fgab::MembershipOracle oracle(g1);
    for (const auto& x : orbit(phi, alpha, 201)) REQUIRE(oracle.contains(x));
  }
}

TEST_CASE("return_set_regular matches a membership scan") {
  testing::Rng rng(404);
  lrs::ZeroSetOptions opt;
  opt.n_max = 2000;
  for (int trial = 0; trial < 40; ++trial) {
    const FgAmbient a = testing::random_ambient(rng, 3, 6);
    const AffineSelfMap phi = testing::random_affine(rng, a, -3, 3);
    const GroupVector alpha = testing::random_vector(rng, a, -3, 3);
    const SubgroupBasis gamma = testing::random_subgroup(rng, a, 3, -3, 3);
    const auto r = return_set_regular(phi, alpha, gamma, opt);
    const fgab::MembershipOracle oracle(gamma);
    const auto orb = orbit(phi, alpha, opt.n_max + 1);
    for (std::size_t n = 0; n < orb.size(); ++n) REQUIRE(r.bitmap[n] == oracle.contains(orb[n]));
  }
}

TEST_CASE("iterate_rational examples") {
  const FieldSpec q = FieldSpec::rationals();
  const RationalTorusMap plus_one(q, {var(q, 1, 0) + cst(q, 1, integer(q, 1))});
  CHECK(iterate_rational(plus_one, {fac(integer(q, 1))}, 4)[0].value() == integer(q, 5));

  const FieldSpec f2 = FieldSpec::function_field(2);
  const RationalFunction t = cst(f2, 1, Scalar::t(f2));
  const RationalTorusMap ex2(f2, {t * var(f2, 1, 0) - t + cst(f2, 1, integer(f2, 1))});
  CHECK_FALSE(ex2.monomial());
  const Scalar t1 = Scalar::t(f2) + integer(f2, 1);
  CHECK(iterate_rational(ex2, {fac(t1)}, 3)[0].value() == Scalar::t(f2).pow(4) + integer(f2, 1));

  const RationalTorusMap inv(q, {cst(q, 1, integer(q, 1)) / (var(q, 1, 0) - cst(q, 1, integer(q, 1)))});
  CHECK(iterate_rational(inv, {fac(integer(q, 2))}, 1)[0].value() == integer(q, 1));
  try {
    iterate_rational(inv, {fac(integer(q, 2))}, 2);
    FAIL("expected an undefined orbit");
  } catch (const UndefinedOrbit& e) {
    CHECK(e.step() == 2);
  }

  const RationalTorusMap leave(q, {var(q, 1, 0) - cst(q, 1, integer(q, 1))});
  try {
    iterate_rational(leave, {fac(integer(q, 3))}, 5);
    FAIL("expected an undefined orbit");
  } catch (const UndefinedOrbit& e) {
    CHECK(e.step() == 3);
  }
}

TEST_CASE("height cap") {
  const FieldSpec q = FieldSpec::rationals();
  const RationalFunction x = var(q, 1, 0);
  const RationalTorusMap sq(q, {x * x + cst(q, 1, integer(q, 1))});
  IterationOptions opt;
  opt.height_cap_bits = 64;
  CHECK_THROWS_AS(iterate_rational(sq, {fac(integer(q, 2))}, 20, opt), ResourceExceeded);
  const mulgroup::MulSubgroup g(q, {fac(integer(q, 2))});
  const auto r = return_set_empirical(sq, fac(integer(q, 2)), g, 20, opt);
  CHECK(r.truncated);
  CHECK(r.bitmap.size() < 21);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("return_set_empirical examples") {
  const FieldSpec q = FieldSpec::rationals();
  const RationalTorusMap plus_one(q, {var(q, 1, 0) + cst(q, 1, integer(q, 1))});
  const mulgroup::MulSubgroup two(q, {fac(integer(q, 2))});
  auto r = return_set_empirical(plus_one, fac(integer(q, 1)), two, 1023);
  CHECK(r.kind == ResultKind::Empirical);
  CHECK(r.members() == mersenne_like(2, 1023));

  const FieldSpec f2 = FieldSpec::function_field(2);
  const RationalFunction t = cst(f2, 1, Scalar::t(f2));
  const RationalTorusMap ex2(f2, {t * var(f2, 1, 0) - t + cst(f2, 1, integer(f2, 1))});
  const FactoredElement t1 = fac(Scalar::t(f2) + integer(f2, 1));
  r = return_set_empirical(ex2, t1, mulgroup::MulSubgroup(f2, {t1}), 256);
  CHECK(r.members() == std::vector<std::uint64_t>{0, 1, 3, 7, 15, 31, 63, 127, 255});

  const RationalTorusMap square(q, {var(q, 1, 0) * var(q, 1, 0)});
  REQUIRE(square.monomial());
  r = return_set_empirical(square, fac(integer(q, 2)), two, 100);
  CHECK_FALSE(r.truncated);
  CHECK(r.members().size() == 101);
}

TEST_CASE("factored iteration agrees with evaluation from scratch") {
  testing::Rng rng(505);
  const FieldSpec q = FieldSpec::rationals();
  const RationalFunction x1 = var(q, 2, 0);
  const RationalFunction x2 = var(q, 2, 1);
  const RationalTorusMap f(q, {x2, (x1 + x2) / cst(q, 2, integer(q, 3))});
  const RationalTorusMap m(q, {x1.pow(2) * x2.pow(-1) * cst(q, 2, integer(q, -6)), x1 * cst(q, 2, integer(q, 5))});
  REQUIRE(m.monomial());
  for (const auto* map : {&f, &m}) {
    const TorusPoint start{fac(integer(q, 2)), fac(integer(q, 7))};
    TorusIterator it(*map, start);
    std::vector<TorusPoint> pts{start};
    for (int i = 0; i < 40; ++i) {
      it.advance();
      pts.push_back(it.point());
    }
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = rng.index(pts.size());
      std::vector<Scalar> v{integer(q, 2), integer(q, 7)};
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<Scalar> w;
        for (const auto& c : map->coordinates()) w.push_back(*c.evaluate(v));
        v = w;
      }
      CHECK(pts[n][0].value() == v[0]);
      CHECK(pts[n][1].value() == v[1]);
    }
  }
}

TEST_CASE("monomial lattice form matches factored iteration") {
  const FieldSpec q = FieldSpec::rationals();
  const RationalFunction x1 = var(q, 2, 0);
  const RationalFunction x2 = var(q, 2, 1);
  const RationalTorusMap m(q, {x1.pow(2) * x2.pow(-1) * cst(q, 2, integer(q, -6)), x1 * cst(q, 2, integer(q, 5))});
  const TorusPoint start{fac(integer(q, 2)), fac(integer(q, 7))};
  const mulgroup::TorusEmbedding emb(q, 2, {Integer(2), Integer(3), Integer(5), Integer(7)});
  const AffineSelfMap lin = monomial_lattice_map(m, emb);
  GroupVector v = *emb.coordinates(start);
  TorusIterator it(m, start);
  for (int i = 0; i < 25; ++i) {
    it.advance();
    v = lin.apply(v);
    REQUIRE(emb.element(v) == it.point());
  }
  const mulgroup::TorusEmbedding small(q, 2, {Integer(2), Integer(7)});
  CHECK_THROWS_AS(monomial_lattice_map(m, small), InputError);
}
