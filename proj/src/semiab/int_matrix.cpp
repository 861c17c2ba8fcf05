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

#include "semiab/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "semiab/error.hpp"

namespace semiab {

Integer parse_integer(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw InputError("expected an integer, got '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9') throw InputError("expected an integer, got '" + text + "'");
  return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& a = (*this)(i, j);
      if (a != 0 && v[j] != 0) acc += a * v[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(src, j) != 0) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, src) != 0) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix scalar_multiple(const IntMatrix& m, const Integer& k) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= k;
  return r;
}

IntMatrix matrix_power(const IntMatrix& m, std::size_t exponent) {
  if (!m.is_square()) throw InputError("matrix power of a non-square matrix");
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (exponent) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntVector SmithForm::invariant_factors() const {
  IntVector d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
  IntMatrix& D = s.D;
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Pivot: nonzero entry of least absolute value in the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (pi == rows || abs(D(i, j)) < abs(D(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        s.rank = t;
        return s;
      }
      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);

      bool clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // Divisibility chain: fold any non-multiple of the pivot into row t.
      bool chained = true;
      for (std::size_t i = t + 1; i < rows && chained; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(D(t, t), D(i, j))) {
            D.add_row_multiple(t, i, 1);
            s.U.add_row_multiple(t, i, 1);
            chained = false;
            break;
          }
      if (chained) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  s.rank = diag;
  for (std::size_t t = 0; t < diag; ++t)
    if (D(t, t) == 0) {
      s.rank = t;
      break;
    }
  return s;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t n = m.cols();
  IntMatrix k(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.V(i, j);
  return k;
}

std::optional<IntVector> solve_integer(const SmithForm& s, const IntVector& b) {
  if (b.size() != s.U.cols()) throw InputError("right-hand side dimension mismatch");
  IntVector y = s.U.apply(b);
  IntVector x(s.V.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (!divides(s.D(i, i), y[i])) return std::nullopt;
      Integer q;
      mpz_divexact(q.get_mpz_t(), y[i].get_mpz_t(), s.D(i, i).get_mpz_t());
      x[i] = std::move(q);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(x);
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  return solve_integer(smith_normal_form(m), b);
}

IntMatrix hermite_row_basis(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0) {
          ++nonzero;
          if (best == rows || abs(a(i, c)) < abs(a(best, c))) best = i;
        }
      if (nonzero == 0) break;
      a.swap_rows(r, best);
      if (nonzero == 1) break;
      for (std::size_t i = r + 1; i < rows; ++i)
        if (a(i, c) != 0) {
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
          a.add_row_multiple(i, r, -q);
        }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row_multiple(i, r, -floor_div(a(i, c), a(r, c)));
    ++r;
  }
  IntMatrix basis(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) basis(i, j) = a(i, j);
  return basis;
}

std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

IntVector characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; every division below is exact over Z.
  if (!m.is_square()) throw InputError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  IntVector coeffs(n);
  IntMatrix acc(n, n);
  Integer c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = m * acc;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c;
    acc = std::move(next);
    IntMatrix prod = m * acc;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    Integer kk = static_cast<unsigned long>(k);
    check_invariant(divides(kk, trace), "Faddeev-LeVerrier trace not divisible");
    c = -trace / kk;
    coeffs[k - 1] = c;
  }
  return coeffs;
}

IntVector minimal_polynomial(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("minimal polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  const std::size_t len = n * n;
  auto flatten = [&](const IntMatrix& p) {
    std::vector<Rational> v(len);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = p(i, j);
    return v;
  };
  // Incremental elimination on vec(I), vec(M), vec(M^2), ...; each basis row
  // remembers its expression in the original powers.
  std::vector<std::vector<Rational>> basis;     // reduced rows
  std::vector<std::size_t> pivots;              // pivot column per basis row
  std::vector<std::vector<Rational>> combos;    // coefficients on powers
  IntMatrix power = IntMatrix::identity(n);
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<Rational> v = flatten(power);
    std::vector<Rational> combo(d + 1);
    combo[d] = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational f = v[pivots[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < len; ++j) v[j] -= f * basis[b][j];
      for (std::size_t j = 0; j < combos[b].size(); ++j) combo[j] -= f * combos[b][j];
    }
    std::size_t piv = len;
    for (std::size_t j = 0; j < len; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv == len) {
      // combo[0] I + ... + combo[d] M^d = 0 with combo[d] = 1.
      IntVector coeffs(d);
      for (std::size_t i = 1; i <= d; ++i) {
        const Rational& q = combo[d - i];
        check_invariant(q.get_den() == 1, "minimal polynomial is not integral");
        coeffs[i - 1] = q.get_num();
      }
      return coeffs;
    }
    const Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    basis.push_back(std::move(v));
    pivots.push_back(piv);
    combos.push_back(std::move(combo));
    power = power * m;
  }
  return characteristic_polynomial(m);
}

}  // namespace semiab
