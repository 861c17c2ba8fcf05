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
#include "semiab/decomp.hpp"
#include "semiab/error.hpp"
#include "test_support.hpp"

using namespace semiab;
using namespace semiab::decomp;
using lrs::Progression;

namespace {

Bitmap evens_plus_101(std::uint64_t n_max) {
  Bitmap b(n_max + 1, false);
  for (std::uint64_t n = 0; n <= n_max; n += 2) b[n] = true;
  b[101] = true;
  return b;
}

Bitmap mersenne(std::uint64_t n_max) {
  Bitmap b(n_max + 1, false);
  for (std::uint64_t q = 1; q - 1 <= n_max; q *= 2) b[q - 1] = true;
  return b;
}

Bitmap random_bitmap(testing::Rng& rng, std::uint64_t n_max, long percent) {
  Bitmap b(n_max + 1);
  for (std::size_t n = 0; n < b.size(); ++n) b[n] = rng.uniform(0, 99) < percent;
  return b;
}

// Maximum over every window, counted from scratch.
Rational naive_density(const Bitmap& b, std::uint64_t len) {
  std::uint64_t best = 0;
  for (std::uint64_t s = 0; s + len <= b.size(); ++s) {
    std::uint64_t c = 0;
    for (std::uint64_t n = s; n < s + len; ++n) c += b[n];
    best = std::max(best, c);
  }
  Rational v(Integer(static_cast<unsigned long>(best)), Integer(static_cast<unsigned long>(len)));
  v.canonicalize();
  return v;
}

}  // namespace

TEST_CASE("detect_aps examples") {
  CHECK(detect_aps(evens_plus_101(1000), 4, 100) == std::vector<Progression>{{2, 0, 100}});
  CHECK(detect_aps(Bitmap(1001, true), 64, 100) == std::vector<Progression>{{1, 0, 100}});
  CHECK(detect_aps(mersenne(1023), 64, 102).empty());
  CHECK_THROWS_AS(detect_aps(Bitmap(11, true), 4, 10), InputError);
  // 31 is alone in every class with modulus above 4; no progression is claimed.
  CHECK(detect_aps(mersenne(40), 64, 4).empty());
  CHECK(detect_aps(Bitmap(13, true), 64, 10) == std::vector<Progression>{{1, 0, 10}});
  CHECK(detect_aps(Bitmap(12, true), 64, 10).empty());
}

TEST_CASE("residual examples") {
  const Bitmap b = evens_plus_101(1000);
  const std::vector<Progression> aps{{2, 0, 0}};
  CHECK(members(residual(b, aps)) == std::vector<std::uint64_t>{101});
  CHECK(residual(b, {}) == b);
  Bitmap only(1001, false);
  for (std::uint64_t n = 3; n <= 1000; n += 7) only[n] = true;
  const std::vector<Progression> cover{{7, 3, 3}};
  CHECK(members(residual(only, cover)).empty());
}

TEST_CASE("banach_profile examples") {
  const std::vector<std::uint64_t> lens{1, 16, 100, 500};
  for (const auto& p : banach_profile(Bitmap(1001, true), lens)) CHECK(p.value == 1);
  for (const auto& p : banach_profile(Bitmap(1001, false), lens)) CHECK(p.value == 0);

  Bitmap powers(1000001, false);
  for (std::uint64_t q = 1; q <= 1000000; q *= 2) powers[q] = true;
  const std::vector<std::uint64_t> l100{100};
  CHECK(banach_profile(powers, l100)[0].value == Rational(7, 100));
  CHECK_THROWS_AS(banach_profile(powers, std::vector<std::uint64_t>{0}), InputError);
  CHECK_THROWS_AS(banach_profile(Bitmap(10, true), std::vector<std::uint64_t>{11}), InputError);
}

TEST_CASE("profile of the Mersenne-like set") {
  const Bitmap b = mersenne(1 << 16);
  const std::vector<std::uint64_t> lens{64, 256, 1024};
  const auto prof = banach_profile(b, lens);
  CHECK(prof[0].value == Rational(7, 64));
  CHECK(prof[1].value == Rational(9, 256));
  CHECK(prof[2].value == Rational(11, 1024));
}

TEST_CASE("verdict examples") {
  DecompOptions opt;
  auto d = decompose(evens_plus_101(2000), opt);
  CHECK(d.aps == std::vector<Progression>{{2, 0, 200}});
  CHECK(d.verdict == Verdict::APPlusFinite);

  opt.lengths = {64, 256, 1024};
  d = decompose(mersenne(1 << 16), opt);
  CHECK(d.aps.empty());
  CHECK(d.verdict == Verdict::APPlusSparse);

  testing::Rng rng(7);
  d = decompose(random_bitmap(rng, 4000, 50), {});
  CHECK(d.verdict == Verdict::DenseResidual);

  d = decompose(mersenne(256), {});
  CHECK(to_string(d.verdict) == "inconclusive");
  CHECK(to_string(Verdict::APPlusFinite) == "AP_plus_finite");
}

TEST_CASE("default_lengths") {
  CHECK(default_lengths(256) == std::vector<std::uint64_t>{16, 32, 64});
  CHECK(default_lengths(60).empty());
  CHECK(default_lengths(4096).back() == 1024);
}

TEST_CASE("decomposition properties on random bitmaps") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t n_max = 200 + rng.uniform(0, 600);
    Bitmap b = random_bitmap(rng, n_max, rng.uniform(0, 30));
    // Plant a few residue classes so detection has something to find.
    for (int planted = rng.uniform(0, 2); planted > 0; --planted) {
      const std::uint64_t k = rng.uniform(1, 12);
      const std::uint64_t l = rng.uniform(0, static_cast<long>(k) - 1);
      for (std::uint64_t n = l; n <= n_max; n += k) b[n] = true;
    }
    const std::uint64_t burn_in = n_max / 10;
    const auto aps = detect_aps(b, 24, burn_in);
    for (const auto& p : aps) {
      CHECK(p.start >= burn_in);
      CHECK(p.start < burn_in + p.modulus);
      for (std::uint64_t n = p.start; n <= n_max; n += p.modulus) REQUIRE(b[n]);
      for (const auto& q : aps)
        if (!(p == q)) CHECK_FALSE(q.covers(p));
    }
    const Bitmap r = residual(b, aps);
    for (std::uint64_t n = burn_in; n <= n_max; ++n) {
      bool in_ap = false;
      for (const auto& p : aps) in_ap = in_ap || p.contains(n);
      REQUIRE(b[n] == (r[n] || in_ap));
      REQUIRE_FALSE((r[n] && in_ap));
    }

    const std::vector<std::uint64_t> lens{1, 7, 16, 64, n_max / 2};
    const auto prof = banach_profile(b, lens);
    Bitmap sub = b;
    for (std::size_t n = 0; n < sub.size(); ++n) sub[n] = sub[n] && rng.coin();
    const auto sub_prof = banach_profile(sub, lens);
    for (std::size_t i = 0; i < lens.size(); ++i) {
      CHECK(prof[i].value == naive_density(b, lens[i]));
      std::uint64_t first = 0;
      for (std::uint64_t n = 0; n < lens[i]; ++n) first += b[n];
      CHECK(prof[i].value >= Rational(Integer(static_cast<unsigned long>(first)),
                                      Integer(static_cast<unsigned long>(lens[i]))));
      CHECK(sub_prof[i].value <= prof[i].value);
      CHECK(prof[i].value >= 0);
      CHECK(prof[i].value <= 1);
    }
  }
}
