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

#include <chrono>

#include "doctest.h"
#include "semiab/error.hpp"
#include "semiab/fp_poly.hpp"
#include "semiab/int_factor.hpp"
#include "test_support.hpp"

using namespace semiab;

namespace {

FpPoly random_poly(testing::Rng& rng, std::uint32_t p, std::size_t degree) {
  std::vector<std::uint32_t> c(degree + 1);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng.uniform(0, p - 1));
  c.back() = static_cast<std::uint32_t>(rng.uniform(1, p - 1));
  return FpPoly(p, c);
}

// Irreducibility by exhaustive search for a monic divisor of degree <= deg/2.
bool irreducible_by_search(const FpPoly& f) {
  const std::uint32_t p = f.modulus();
  if (f.degree() <= 0) return false;
  for (long d = 1; 2 * d <= f.degree(); ++d) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d) + 1, 0);
    c.back() = 1;
    while (true) {
      if ((f % FpPoly(p, c)).is_zero()) return false;
      std::size_t i = 0;
      while (i < static_cast<std::size_t>(d) && c[i] == p - 1) c[i++] = 0;
      if (i == static_cast<std::size_t>(d)) break;
      ++c[i];
    }
  }
  return true;
}

FpPoly multiply_out(const FpFactorization& fac, std::uint32_t p) {
  FpPoly r = FpPoly::constant(p, fac.unit);
  for (const auto& [g, e] : fac.factors) r = r * pow(g, e);
  return r;
}

std::map<Integer, unsigned long> trial_factor(Integer n) {
  std::map<Integer, unsigned long> out;
  for (Integer d = 2; d * d <= n; ++d)
    while (divides(d, n)) {
      out[d] += 1;
      n /= d;
    }
  if (n > 1) out[n] += 1;
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic over F_p") {
  const FpPoly t = FpPoly::variable(2), one = FpPoly::constant(2, 1);
  CHECK(pow(t + one, 2) == t * t + one);
  CHECK((t * t + one).to_string() == "t^2 + 1");
  const auto [q, r] = divmod(pow(t, 5) + one, t * t + t + one);
  CHECK(q * (t * t + t + one) + r == pow(t, 5) + one);
  CHECK(r.degree() < 2);
  CHECK(gcd(pow(t + one, 3), (t + one) * t) == t + one);
}

TEST_CASE("factorization examples") {
  const FpPoly t = FpPoly::variable(2), one = FpPoly::constant(2, 1);
  const auto f = factor(t * t + one);
  CHECK(f.unit == 1);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == t + one);
  CHECK(f.factors[0].second == 2);

  const FpPoly t3 = FpPoly::variable(3);
  const auto g = factor(t3.scaled(2) * t3 + FpPoly::constant(3, 2));  // 2t^2 + 2 = 2(t^2 + 1)
  CHECK(g.unit == 2);
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].first == t3 * t3 + FpPoly::constant(3, 1));
}

TEST_CASE("factorization reproduces the input with irreducible factors") {
  testing::Rng rng(31);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 40; ++trial) {
      // Products of small random factors, so that repeated factors occur.
      FpPoly f = FpPoly::constant(p, static_cast<std::uint64_t>(rng.uniform(1, p - 1)));
      for (std::size_t k = 1 + rng.index(4); k > 0; --k) f = f * random_poly(rng, p, 1 + rng.index(4));
      const auto fac = factor(f, static_cast<std::uint64_t>(trial));
      CHECK(multiply_out(fac, p) == f);
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.is_monic());
        CHECK(irreducible_by_search(g));
        CHECK(is_irreducible(g));
        CHECK(e >= 1);
      }
    }
  }
}

TEST_CASE("is_irreducible agrees with exhaustive search") {
  testing::Rng rng(32);
  for (std::uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 150; ++trial) {
      const FpPoly f = random_poly(rng, p, 1 + rng.index(7)).monic();
      CHECK(is_irreducible(f) == irreducible_by_search(f));
    }
  }
}

TEST_CASE("Frobenius identity is respected") {
  testing::Rng rng(33);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const FpPoly f = random_poly(rng, p, 1 + rng.index(4)), g = random_poly(rng, p, 1 + rng.index(4));
      CHECK(pow(f + g, p) == pow(f, p) + pow(g, p));
      const auto lhs = factor(pow(f, p)), base = factor(f);
      CHECK(lhs.factors.size() == base.factors.size());
      for (std::size_t i = 0; i < base.factors.size(); ++i) {
        CHECK(lhs.factors[i].first == base.factors[i].first);
        CHECK(lhs.factors[i].second == p * base.factors[i].second);
      }
    }
  }
  const FpPoly t = FpPoly::variable(3), one = FpPoly::constant(3, 1);
  const auto fac = factor(pow(t + one, 3));
  CHECK(fac.unit == 1);
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].second == 3);
}

TEST_CASE("high-degree factorization over F_2 is practical") {
  const FpPoly t = FpPoly::variable(2), one = FpPoly::constant(2, 1);
  const auto start = std::chrono::steady_clock::now();
  for (unsigned long n : {257ul, 600ul, 1201ul}) {
    const FpPoly f = pow(t, n) + one;
    const auto fac = factor(f);
    CHECK(multiply_out(fac, 2) == f);
  }
  const FpPoly g = pow(t, 1200) + pow(t, 7) + t + one;
  CHECK(multiply_out(factor(g), 2) == g);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 30.0);
}

TEST_CASE("integer factorization") {
  CHECK(factor_integer(12) == std::map<Integer, unsigned long>{{2, 2}, {3, 1}});
  CHECK(factor_integer(-1).empty());
  CHECK_THROWS_AS(factor_integer(0), InputError);
  testing::Rng rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const Integer n = rng.uniform(1, 2'000'000);
    CHECK(factor_integer(n) == trial_factor(n));
  }
  // Cofactors beyond trial division: products of primes above 10^6.
  const Integer p1("1000000007"), p2("998244353"), p3("1000000000039");
  CHECK(factor_integer(p1 * p2) == std::map<Integer, unsigned long>{{p2, 1}, {p1, 1}});
  CHECK(factor_integer(p1 * p1 * p3 * 12) ==
        std::map<Integer, unsigned long>{{2, 2}, {3, 1}, {p1, 2}, {p3, 1}});
  const Integer q1("18446744073709551557"), q2("18446744073709551533");
  CHECK_THROWS_AS(factor_integer(q1 * q2 * q2), ResourceExceeded);
  IntFactorConfig tight;
  tight.rho_iteration_budget = 1000;
  CHECK_THROWS_AS(factor_integer(q1 * q2, tight), ResourceExceeded);
}

TEST_CASE("integer factorization fails loudly beyond the cofactor bound") {
  const Integer p("170141183460469231731687303715884105727");  // 2^127 - 1
  const Integer q("162259276829213363391578010288127");       // 2^107 - 1
  IntFactorConfig config;
  config.max_cofactor_bits = 200;
  CHECK_THROWS_AS(factor_integer(p * q, config), ResourceExceeded);
  CHECK(factor_integer(p * 4) == std::map<Integer, unsigned long>{{2, 2}, {p, 1}});
}

TEST_CASE("primality") {
  std::vector<bool> sieve(5000, true);
  sieve[0] = sieve[1] = false;
  for (std::size_t i = 2; i < sieve.size(); ++i)
    if (sieve[i])
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
  for (std::size_t i = 0; i < sieve.size(); ++i) CHECK(is_prime(Integer(static_cast<unsigned long>(i))) == sieve[i]);
  CHECK_FALSE(is_prime(Integer("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(Integer("2305843009213693951")));
}
