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

#pragma once

#include <cstdint>
#include <map>

#include "semiab/integer.hpp"

namespace semiab {

struct IntFactorConfig {
  /// Composite cofactors left after trial division that are wider than this
  /// are refused with ResourceExceeded.
  std::size_t max_cofactor_bits = 160;
  /// Total Pollard-Brent iterations allowed per factorization.
  std::uint64_t rho_iteration_budget = std::uint64_t{1} << 24;
  std::uint64_t seed = 0x5eed;
};

/// Trial division bound.
inline constexpr std::uint32_t kTrialDivisionLimit = 1'000'000;

/// Deterministic below 3.3e24 (Miller-Rabin with the first 13 prime bases);
/// beyond that GMP's BPSW-based test.
bool is_prime(const Integer& n);

/// Prime factorization of |n| for n != 0, as prime -> multiplicity.
std::map<Integer, unsigned long> factor_integer(const Integer& n, const IntFactorConfig& config = {});

}  // namespace semiab
