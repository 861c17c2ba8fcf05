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

#include "doctest.h"
#include "semiab/error.hpp"
#include "semiab/mulgroup.hpp"
#include "test_support.hpp"

using namespace semiab;
using namespace semiab::mulgroup;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Scalar q(long num, long den = 1) { return Scalar(Rational(num, den)); }

Scalar poly(std::uint32_t p, std::vector<std::uint32_t> c) {
  return Scalar(RatFunc(FpPoly(p, std::move(c)), FpPoly::constant(p, 1)));
}

FactoredElement random_element(testing::Rng& rng, const FieldSpec& f) {
  if (!f.is_function_field()) {
    static const long primes[] = {2, 3, 5, 7, 11, 13, 101};
    Scalar x = q(rng.coin() ? 1 : -1);
    for (std::size_t k = rng.index(6); k > 0; --k) x = x * q(primes[rng.index(7)]).pow(rng.uniform(-6, 6));
    return factor(x, f);
  }
  Scalar x = Scalar::from_integer(f, rng.uniform(1, f.p - 1));
  for (std::size_t k = rng.index(6); k > 0; --k) {
    std::vector<std::uint32_t> c(2 + rng.index(3));
    for (auto& v : c) v = static_cast<std::uint32_t>(rng.uniform(0, f.p - 1));
    c.back() = 1;
    if (c[0] == 0) c[0] = 1;
    x = x * poly(f.p, c).pow(rng.uniform(-4, 4));
  }
  return factor(x, f);
}

}  // namespace

TEST_CASE("factor examples") {
  const auto a = factor(q(12), kQ);
  CHECK(a.unit == 1);
  CHECK(a.exponents == std::map<Irreducible, Integer>{{Integer(2), 2}, {Integer(3), 1}});
  const auto b = factor(q(-8, 9), kQ);
  CHECK(b.unit == -1);
  CHECK(b.exponents == std::map<Irreducible, Integer>{{Integer(2), 3}, {Integer(3), -2}});
  CHECK(b.value() == q(-8, 9));

  const auto f2 = FieldSpec::function_field(2);
  const auto c = factor(poly(2, {1, 0, 1}), f2);
  CHECK(c.unit == 1);
  CHECK(c.exponents == std::map<Irreducible, Integer>{{FpPoly(2, {1, 1}), 2}});
  CHECK_THROWS_AS(factor(q(0), kQ), InputError);
  CHECK_THROWS_AS(FieldSpec::function_field(4), InputError);
}

TEST_CASE("embed examples") {
  const std::vector xs{factor(q(2), kQ), factor(q(3), kQ)};
  const auto e = embed(xs);
  CHECK(e.ambient == fgab::FgAmbient(2, {2}));
  CHECK(e.coordinates[0] == e.ambient.make({1, 0}, {0}));
  CHECK(e.coordinates[1] == e.ambient.make({0, 1}, {0}));

  const auto m = embed(std::vector{factor(q(-1), kQ)});
  CHECK(m.ambient == fgab::FgAmbient(0, {2}));
  CHECK(m.coordinates[0] == m.ambient.make({}, {1}));

  const auto f3 = FieldSpec::function_field(3);
  const auto t = embed(std::vector{factor(poly(3, {1, 1}), f3), factor(poly(3, {0, 1}), f3)});
  CHECK(t.ambient == fgab::FgAmbient(2, {2}));
  CHECK(t.coordinates[0] != t.coordinates[1]);

  CHECK_THROWS_AS(embed(std::vector{factor(q(2), kQ), factor(poly(3, {1, 1}), f3)}), InputError);
}

TEST_CASE("member examples") {
  const MulSubgroup two(kQ, {factor(q(2), kQ)});
  CHECK(two.member(factor(q(8), kQ)) == IntVector{3});
  CHECK(two.member(factor(q(1, 4), kQ)) == IntVector{-2});
  CHECK_FALSE(two.member(factor(q(-8), kQ)).has_value());
  CHECK_FALSE(two.member(factor(q(6), kQ)).has_value());

  const auto f2 = FieldSpec::function_field(2);
  const MulSubgroup g(f2, {factor(poly(2, {1, 1}), f2)});
  CHECK(g.member(factor(poly(2, {1, 0, 1}), f2)) == IntVector{2});
  CHECK_FALSE(g.member(factor(poly(2, {1, 0, 0, 1}), f2)).has_value());
  CHECK_THROWS_AS(g.member(factor(q(2), kQ)), InputError);
}

TEST_CASE("power_product examples") {
  const MulSubgroup g(kQ, {factor(q(2), kQ), factor(q(3), kQ)});
  CHECK(power_product(g, IntVector{0, 0}).is_one());
  CHECK(power_product(g, IntVector{2, -1}).value() == q(4, 3));
  CHECK_THROWS_AS(power_product(g, IntVector{1}), InputError);
  const auto f2 = FieldSpec::function_field(2);
  const MulSubgroup h(f2, {factor(poly(2, {1, 1}), f2)});
  CHECK(power_product(h, IntVector{3}).value() == poly(2, {1, 1, 1, 1}));
}

TEST_CASE("unit group discrete logarithms") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u, 65537u, 1000003u}) {
    const UnitGroup u(FieldSpec::function_field(p));
    CHECK(u.order() == (p == 2 ? 1 : p - 1));
    testing::Rng rng(p);
    for (int i = 0; i < 50; ++i) {
      const Integer a = rng.uniform(1, p - 1);
      const Integer k = u.log(a);
      CHECK(u.exp(k) == a);
    }
  }
  const UnitGroup sign(kQ);
  CHECK(sign.log(-1) == 1);
  CHECK(sign.exp(3) == -1);
}

TEST_CASE("factor and multiply out are inverse") {
  testing::Rng rng(41);
  for (const FieldSpec& f :
       {kQ, FieldSpec::function_field(2), FieldSpec::function_field(3), FieldSpec::function_field(7)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto x = random_element(rng, f);
      CHECK(factor(x.value(), f) == x);
      const auto y = random_element(rng, f);
      CHECK(multiply(x, y).value() == x.value() * y.value());
      CHECK(divide(x, y).value() == x.value() / y.value());
      CHECK(power(x, 3).value() == x.value().pow(3));
    }
  }
}

TEST_CASE("member agrees with lattice membership and recombines") {
  testing::Rng rng(42);
  for (const FieldSpec& f : {kQ, FieldSpec::function_field(2), FieldSpec::function_field(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<FactoredElement> gens;
      for (std::size_t k = rng.index(4); k > 0; --k) gens.push_back(random_element(rng, f));
      const MulSubgroup g(f, gens);
      for (int probe = 0; probe < 20; ++probe) {
        FactoredElement x = random_element(rng, f);
        if (!gens.empty() && rng.coin()) x = power_product(g, rng.vector(gens.size(), -5, 5));
        const auto w = g.member(x);
        const auto coords = g.embedding().coordinates(x);
        const bool lattice = coords && fgab::membership(*coords, g.lattice()).has_value();
        CHECK(w.has_value() == lattice);
        if (w) CHECK(power_product(g, *w) == x);
      }
    }
  }
}
