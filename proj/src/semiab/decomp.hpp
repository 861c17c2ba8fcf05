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

// Structure of finite membership bitmaps: full residue classes, what is left
// over, and window-density profiles.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiab/integer.hpp"
#include "semiab/lrs.hpp"

namespace semiab::decomp {

/// Bit n is membership of n, for n = 0..size()-1.
using Bitmap = std::vector<bool>;

Bitmap from_members(std::span<const std::uint64_t> members, std::uint64_t n_max);
std::vector<std::uint64_t> members(const Bitmap& b);

/// Every (k, l) with k <= k_max whose class lies in b on [burn_in, n_max]
/// and has at least three members there, dropping classes inside one with a
/// smaller modulus. Start is the first
/// member of the class at or after burn_in. Throws InputError unless burn_in < n_max.
std::vector<lrs::Progression> detect_aps(const Bitmap& b, std::uint64_t k_max, std::uint64_t burn_in);

/// b without the members of any progression.
Bitmap residual(const Bitmap& b, std::span<const lrs::Progression> aps);

struct DensityPoint {
  std::uint64_t length = 0;
  Rational value;
};
using DensityProfile = std::vector<DensityPoint>;

/// For each L, the largest |b ∩ J| / L over windows J = [s, s+L-1] inside
/// [0, n_max]. Throws InputError when L is 0 or longer than the bitmap.
DensityProfile banach_profile(const Bitmap& b, std::span<const std::uint64_t> lengths);

/// Powers of two from 16 to n_max / 4.
std::vector<std::uint64_t> default_lengths(std::uint64_t n_max);

enum class Verdict { APPlusFinite, APPlusSparse, DenseResidual, Inconclusive };
std::string to_string(Verdict v);

struct VerdictOptions {
  std::uint64_t burn_in = 0;
  Rational sparse_threshold{1, 50};
  Rational dense_threshold{1, 4};
};

/// Classifies b given its progressions and the profile of its residual.
/// Finite: nothing left from burn_in on. Sparse: the last three profile
/// values strictly decrease and the last is below sparse_threshold. Dense:
/// the last value exceeds dense_threshold.
Verdict verdict(const Bitmap& b, std::span<const lrs::Progression> aps, const DensityProfile& residual_profile,
                const VerdictOptions& options);

struct DecompOptions {
  std::uint64_t k_max = 64;
  /// n_max / 10 when unset.
  std::optional<std::uint64_t> burn_in;
  /// default_lengths(n_max) when empty.
  std::vector<std::uint64_t> lengths;
  Rational sparse_threshold{1, 50};
  Rational dense_threshold{1, 4};
};

struct Decomposition {
  std::uint64_t n_max = 0;
  std::uint64_t k_max = 0;
  std::uint64_t burn_in = 0;
  std::vector<lrs::Progression> aps;
  Bitmap residual;
  DensityProfile profile;  // of the residual
  Verdict verdict = Verdict::Inconclusive;
  Rational sparse_threshold;
  Rational dense_threshold;
};

/// detect_aps, residual, banach_profile and verdict with the given settings.
Decomposition decompose(const Bitmap& b, const DecompOptions& options = {});

}  // namespace semiab::decomp
