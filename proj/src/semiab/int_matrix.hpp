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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semiab/integer.hpp"

namespace semiab {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  IntMatrix transpose() const;
  IntVector apply(const IntVector& v) const;
  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix scalar_multiple(const IntMatrix& m, const Integer& k);
IntMatrix matrix_power(const IntMatrix& m, std::size_t exponent);

/// Exact determinant (Bareiss fraction-free elimination).
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1..d_rank.
  IntVector invariant_factors() const;
};

/// U * M * V = D with U, V unimodular and D in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& m);

/// Integer basis (as columns) of {x in Z^cols : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some integer solution of M x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);
std::optional<IntVector> solve_integer(const SmithForm& snf, const IntVector& b);

/// Row Hermite normal form of the lattice spanned by the rows; zero rows dropped.
IntMatrix hermite_row_basis(const IntMatrix& rows);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Coefficients a_1..a_n of X^n + a_1 X^{n-1} + ... + a_n = det(X - M).
IntVector characteristic_polynomial(const IntMatrix& m);

/// Monic minimal polynomial over Q, returned like characteristic_polynomial.
/// The result is integral for integer matrices.
IntVector minimal_polynomial(const IntMatrix& m);

}  // namespace semiab
