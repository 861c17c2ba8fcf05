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

#include "semiab/decomp.hpp"

#include <algorithm>

#include "semiab/error.hpp"

namespace semiab::decomp {

Bitmap from_members(std::span<const std::uint64_t> ms, std::uint64_t n_max) {
  Bitmap b(n_max + 1, false);
  for (auto n : ms)
    if (n <= n_max) b[n] = true;
  return b;
}

std::vector<std::uint64_t> members(const Bitmap& b) {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n < b.size(); ++n)
    if (b[n]) out.push_back(n);
  return out;
}

// A class seen fewer times than this is left in the residual.
constexpr std::uint64_t kMinObservations = 3;

std::vector<lrs::Progression> detect_aps(const Bitmap& b, std::uint64_t k_max, std::uint64_t burn_in) {
  if (b.empty() || burn_in >= b.size() - 1)
    throw InputError("burn-in " + std::to_string(burn_in) + " must be below n_max");
  const std::uint64_t n_max = b.size() - 1;
  std::vector<lrs::Progression> out;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    for (std::uint64_t l = 0; l < k; ++l) {
      const std::uint64_t first = burn_in + (l + k - burn_in % k) % k;
      if (first > n_max || (n_max - first) / k + 1 < kMinObservations) continue;
      bool inside = false;
      for (const auto& p : out)
        if (k % p.modulus == 0 && l % p.modulus == p.residue) inside = true;
      if (inside) continue;
      bool full = true;
      for (std::uint64_t n = first; n <= n_max && full; n += k) full = b[n];
      if (full) out.push_back(lrs::Progression{k, l, first});
    }
  }
  return out;
}

Bitmap residual(const Bitmap& b, std::span<const lrs::Progression> aps) {
  Bitmap r = b;
  for (const auto& p : aps)
    for (std::uint64_t n = p.start; n < r.size(); n += p.modulus) r[n] = false;
  return r;
}

DensityProfile banach_profile(const Bitmap& b, std::span<const std::uint64_t> lengths) {
  DensityProfile out;
  for (auto len : lengths) {
    if (len == 0 || len > b.size())
      throw InputError("window length " + std::to_string(len) + " outside [1, " + std::to_string(b.size()) + "]");
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < len; ++n) count += b[n];
    std::uint64_t best = count;
    for (std::uint64_t s = 1; s + len <= b.size(); ++s) {
      count += b[s + len - 1];
      count -= b[s - 1];
      best = std::max(best, count);
    }
    Rational v(Integer(static_cast<unsigned long>(best)), Integer(static_cast<unsigned long>(len)));
    v.canonicalize();
    out.push_back(DensityPoint{len, v});
  }
  return out;
}

std::vector<std::uint64_t> default_lengths(std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = 16; l <= n_max / 4; l *= 2) out.push_back(l);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::APPlusFinite: return "AP_plus_finite";
    case Verdict::APPlusSparse: return "AP_plus_sparse";
    case Verdict::DenseResidual: return "dense_residual";
    case Verdict::Inconclusive: break;
  }
  return "inconclusive";
}

Verdict verdict(const Bitmap& b, std::span<const lrs::Progression> aps, const DensityProfile& profile,
                const VerdictOptions& options) {
  const Bitmap r = residual(b, aps);
  bool tail_empty = true;
  for (std::uint64_t n = options.burn_in; n < r.size() && tail_empty; ++n) tail_empty = !r[n];
  if (tail_empty) return Verdict::APPlusFinite;
  if (profile.empty()) return Verdict::Inconclusive;
  DensityProfile sorted = profile;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.length < y.length; });
  const Rational& last = sorted.back().value;
  if (last > options.dense_threshold) return Verdict::DenseResidual;
  if (sorted.size() < 3) return Verdict::Inconclusive;
  const std::size_t n = sorted.size();
  const bool decreasing = sorted[n - 3].value > sorted[n - 2].value && sorted[n - 2].value > sorted[n - 1].value;
  if (decreasing && last < options.sparse_threshold) return Verdict::APPlusSparse;
  return Verdict::Inconclusive;
}

Decomposition decompose(const Bitmap& b, const DecompOptions& options) {
  if (b.size() < 2) throw InputError("a bitmap needs n_max >= 1");
  Decomposition d;
  d.n_max = b.size() - 1;
  d.k_max = options.k_max;
  d.burn_in = options.burn_in.value_or(d.n_max / 10);
  d.sparse_threshold = options.sparse_threshold;
  d.dense_threshold = options.dense_threshold;
  d.aps = detect_aps(b, d.k_max, d.burn_in);
  d.residual = residual(b, d.aps);
  std::vector<std::uint64_t> lengths = options.lengths.empty() ? default_lengths(d.n_max) : options.lengths;
  d.profile = banach_profile(d.residual, lengths);
  d.verdict = verdict(b, d.aps, d.profile, VerdictOptions{d.burn_in, d.sparse_threshold, d.dense_threshold});
  return d;
}

}  // namespace semiab::decomp
