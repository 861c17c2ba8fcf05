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

#include "semiab/int_factor.hpp"

#include <random>
#include <vector>

#include "semiab/error.hpp"

namespace semiab {

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialDivisionLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialDivisionLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x;
  Integer b(base);
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, std::mt19937_64& rng, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (int attempt = 0; attempt < 64 && budget > 0; ++attempt) {
    const Integer c = Integer(static_cast<unsigned long>(rng() % 1000000 + 1));
    Integer y = Integer(static_cast<unsigned long>(rng() % 1000000 + 2)) % n;
    const std::uint64_t batch = 128;
    Integer g = 1, q = 1, x, ys;
    for (std::uint64_t r = 1; g == 1 && budget > 0; r <<= 1U) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0; k += batch) {
        ys = y;
        const std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        budget = budget > lim ? budget - lim : 0;
        g = gcd(q, n);
      }
    }
    if (g == n) {
      // Backtrack one step at a time from the saved point.
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_cofactor(const Integer& n, const IntFactorConfig& config, std::mt19937_64& rng,
                     std::uint64_t& budget, std::map<Integer, unsigned long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  // Perfect powers defeat rho; peel them off first.
  for (unsigned long k = 2; k <= bit_length(n); ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
      std::map<Integer, unsigned long> sub;
      factor_cofactor(root, config, rng, budget, sub);
      for (const auto& [p, e] : sub) out[p] += e * k;
      return;
    }
  }
  if (bit_length(n) > config.max_cofactor_bits)
    throw ResourceExceeded("integer factorization: composite cofactor of " + std::to_string(bit_length(n)) +
                           " bits exceeds the configured bound of " +
                           std::to_string(config.max_cofactor_bits) + " bits");
  Integer d = pollard_brent(n, rng, budget);
  if (d == 0)
    throw ResourceExceeded("integer factorization: Pollard rho budget exhausted on a " +
                           std::to_string(bit_length(n)) + "-bit cofactor");
  factor_cofactor(d, config, rng, budget, out);
  factor_cofactor(n / d, config, rng, budget, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : bases) {
    if (n == b) return true;
    if (divides(Integer(b), n)) return false;
  }
  static const Integer deterministic_limit("3317044064679887385961981", 10);
  if (n < deterministic_limit) {
    for (unsigned long b : bases)
      if (!miller_rabin(n, b)) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::map<Integer, unsigned long> factor_integer(const Integer& value, const IntFactorConfig& config) {
  if (value == 0) throw InputError("cannot factor zero");
  std::map<Integer, unsigned long> out;
  Integer n = abs(value);
  for (std::uint32_t p : small_primes()) {
    const Integer pz(static_cast<unsigned long>(p));
    if (pz * pz > n) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out[pz] = e;
  }
  if (n == 1) return out;
  if (n <= Integer(static_cast<unsigned long>(kTrialDivisionLimit)) * kTrialDivisionLimit) {
    out[n] += 1;  // no factor below its square root
    return out;
  }
  std::mt19937_64 rng(config.seed);
  std::uint64_t budget = config.rho_iteration_budget;
  factor_cofactor(n, config, rng, budget, out);
  return out;
}

}  // namespace semiab
