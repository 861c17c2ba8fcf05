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

// Linear recurrence sequences over Z and over finitely generated abelian
// groups, with zero sets split into certified progressions and sporadic terms.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semiab/fgab.hpp"
#include "semiab/int_matrix.hpp"

namespace semiab::lrs {

/// u_{n+k} = c_1 u_{n+k-1} + ... + c_k u_n with initial terms u_0..u_{k-1}.
struct IntegerLRS {
  IntVector coefficients;
  IntVector initial;

  std::size_t order() const noexcept { return coefficients.size(); }
  /// Throws InputError unless order >= 1 and the lengths agree.
  void check() const;
};

/// The companion matrix acting on states (u_n, ..., u_{n+k-1}).
IntMatrix companion_matrix(const IntVector& coefficients);

/// Terms u_0..u_{count-1} by direct recurrence. Throws ResourceExceeded when
/// a term grows beyond max_bits.
IntVector terms(const IntegerLRS& lrs, std::size_t count, std::size_t max_bits = std::size_t{1} << 20);
/// u_n by direct recurrence.
Integer term_sequential(const IntegerLRS& lrs, std::uint64_t n);
/// u_n by binary powering of the companion matrix.
Integer term_at(const IntegerLRS& lrs, std::uint64_t n);

/// n -> u_{k n + l}, with recurrence from the characteristic polynomial of C^k.
IntegerLRS subsequence(const IntegerLRS& lrs, std::uint64_t k, std::uint64_t l);

/// True iff u_{k n + l} = 0 for every n >= 0. Any l >= 0 is accepted.
bool certified_ap_zero(const IntegerLRS& lrs, std::uint64_t k, std::uint64_t l);

/// Coefficients for the char. polynomial multiplied by (X - 1): a sequence
/// satisfying c also satisfies the result, and so does any constant.
IntVector times_x_minus_one(const IntVector& coefficients);
/// Coefficients whose characteristic polynomial is the product of both.
IntVector product_recurrence(const IntVector& a, const IntVector& b);
/// The sequence u_n - value, of order one higher.
IntegerLRS shift_by_constant(const IntegerLRS& lrs, const Integer& value);

/// {modulus * n + start : n >= 0}; residue = start mod modulus.
struct Progression {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;
  std::uint64_t start = 0;

  bool contains(std::uint64_t n) const { return n >= start && n % modulus == residue; }
  /// Every member of other is a member of this.
  bool covers(const Progression& other) const;
  friend bool operator==(const Progression&, const Progression&) = default;
};

enum class Status { Exact, Bounded };
std::string to_string(Status s);

struct ZeroSetReport {
  std::vector<Progression> progressions;
  std::vector<std::uint64_t> sporadic;  // sorted, outside every progression
  std::uint64_t search_bound = 0;
  Status status = Status::Bounded;
  /// How exactness was established, or why it was not.
  std::string certificate;

  bool contains(std::uint64_t n) const;
  /// Membership bitmap of [0, bound].
  std::vector<bool> bitmap(std::uint64_t bound) const;
};

struct ZeroSetOptions {
  std::uint64_t k_max = 64;
  std::uint64_t n_max = 1000;
  std::size_t max_term_bits = std::size_t{1} << 20;
};

ZeroSetReport zero_set(const IntegerLRS& lrs, const ZeroSetOptions& options);

/// x_{n+k} = sum c_i x_{n+k-i} in a finitely generated abelian group.
struct GroupLRS {
  IntVector coefficients;
  fgab::FgAmbient ambient;
  std::vector<fgab::GroupVector> initial;

  std::size_t order() const noexcept { return coefficients.size(); }
  void check() const;
};

std::vector<fgab::GroupVector> group_terms(const GroupLRS& lrs, std::size_t count);
fgab::GroupVector group_term_at(const GroupLRS& lrs, std::uint64_t n);
/// The sequence pushed through a homomorphism out of lrs.ambient.
GroupLRS map_lrs(const GroupLRS& lrs, const fgab::GroupHom& hom);

struct EventualPeriod {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
  /// Indices n < preperiod + period with x_n = 0.
  std::vector<std::uint64_t> zeros;
};

/// Cycle detection on the states (x_n, ..., x_{n+k-1}); the ambient must be
/// finite. Throws ResourceExceeded past max_states distinct states.
EventualPeriod eventual_period(const GroupLRS& lrs, std::uint64_t max_states = std::uint64_t{1} << 22);

/// The zero set of an eventually periodic sequence, as progressions + finite set.
ZeroSetReport periodic_zero_set(const EventualPeriod& period, std::uint64_t n_max);

/// Intersection of two zero-set descriptions; the status is the weaker one.
ZeroSetReport intersect(const ZeroSetReport& a, const ZeroSetReport& b);

/// {n : x_n in gamma}: quotient by gamma, then one cyclic factor at a time.
ZeroSetReport group_zero_set(const GroupLRS& lrs, const fgab::SubgroupBasis& gamma,
                             const ZeroSetOptions& options);

}  // namespace semiab::lrs
