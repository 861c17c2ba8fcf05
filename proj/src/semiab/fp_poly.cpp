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

#include "semiab/fp_poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "semiab/error.hpp"

namespace semiab {

std::uint32_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = r * a % p;
    a = a * a % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t fp_inverse(std::uint64_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw InputError("inverse of zero in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p_ < 2) throw InputError("polynomial modulus must be prime");
  for (auto& x : c_) x %= p_;
  trim();
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::constant(std::uint32_t p, std::uint64_t c) {
  return FpPoly(p, {static_cast<std::uint32_t>(c % p)});
}

FpPoly FpPoly::monomial(std::uint32_t p, std::uint64_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = static_cast<std::uint32_t>(c % p);
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(fp_inverse(leading(), p_));
}

FpPoly FpPoly::scaled(std::uint64_t k) const {
  k %= p_;
  FpPoly r(p_);
  if (k == 0) return r;
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(c_[i] * k % p_);
  r.trim();
  return r;
}

FpPoly FpPoly::derivative() const {
  FpPoly r(p_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_[i - 1] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c_[i]) * (i % p_) % p_);
  r.trim();
  return r;
}

std::uint32_t FpPoly::evaluate(std::uint32_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
  return static_cast<std::uint32_t>(acc);
}

FpPoly& FpPoly::operator+=(const FpPoly& o) {
  if (o.p_ != p_ && !o.is_zero() && p_ != 0) throw InputError("polynomials over different fields");
  if (p_ == 0) p_ = o.p_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::uint32_t s = c_[i] + o.c_[i];
    if (s >= p_) s -= p_;
    c_[i] = s;
  }
  trim();
  return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& o) { return *this += -o; }

FpPoly FpPoly::operator-() const {
  FpPoly r = *this;
  for (auto& x : r.c_)
    if (x) x = p_ - x;
  return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  const std::uint32_t p = a.p_ ? a.p_ : b.p_;
  if (a.p_ && b.p_ && a.p_ != b.p_) throw InputError("polynomials over different fields");
  FpPoly r(p);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const std::uint64_t x = a.c_[i];
    if (!x) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + x * b.c_[j]) % p;
  }
  r.c_.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_;
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::string FpPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i > 0) {
      if (c_[i] != 1) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  const std::uint32_t p = b.modulus();
  if (a.degree() < b.degree()) return {FpPoly(p), a};
  std::vector<std::uint64_t> rem(a.coefficients().begin(), a.coefficients().end());
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const std::uint64_t inv = fp_inverse(b.leading(), p);
  std::vector<std::uint32_t> q(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const std::uint64_t coef = rem[i] % p * inv % p;
    if (!coef) continue;
    q[i - db] = static_cast<std::uint32_t>(coef);
    const std::uint64_t neg = p - coef;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + neg * bc[j]) % p;
  }
  rem.resize(db);
  std::vector<std::uint32_t> r(rem.begin(), rem.end());
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly exact_div(const FpPoly& a, const FpPoly& b) {
  auto [q, r] = divmod(a, b);
  check_invariant(r.is_zero(), "inexact polynomial division");
  return q;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly pow(const FpPoly& base, unsigned long e) {
  FpPoly r = FpPoly::constant(base.modulus(), 1);
  FpPoly b = base;
  while (e) {
    if (e & 1UL) r = r * b;
    e >>= 1UL;
    if (e) b = b * b;
  }
  return r;
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod) {
  FpPoly r = FpPoly::constant(mod.modulus(), 1) % mod;
  FpPoly b = base % mod;
  const std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
  }
  return r;
}

namespace {

// g with g(t)^p = f(t); valid when f' = 0 (only exponents divisible by p).
FpPoly pth_root(const FpPoly& f) {
  const std::uint32_t p = f.modulus();
  const auto& c = f.coefficients();
  std::vector<std::uint32_t> r((c.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < c.size(); i += p) r[i / p] = c[i];
  return FpPoly(p, std::move(r));
}

// Square-free decomposition of a monic f: pairs (square-free g, multiplicity).
void square_free(const FpPoly& f, unsigned long scale, std::vector<std::pair<FpPoly, unsigned long>>& out) {
  if (f.degree() <= 0) return;
  const FpPoly d = f.derivative();
  if (d.is_zero()) {
    square_free(pth_root(f), scale * f.modulus(), out);
    return;
  }
  FpPoly c = gcd(f, d);
  FpPoly w = exact_div(f, c);
  unsigned long i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly fac = exact_div(w, y);
    if (fac.degree() > 0) out.emplace_back(fac, i * scale);
    ++i;
    w = std::move(y);
    c = exact_div(c, w);
  }
  if (!c.is_one()) square_free(pth_root(c), scale * f.modulus(), out);
}

// Distinct-degree factorization of a monic square-free f.
std::vector<std::pair<FpPoly, std::size_t>> distinct_degree(FpPoly f) {
  const std::uint32_t p = f.modulus();
  std::vector<std::pair<FpPoly, std::size_t>> out;
  const FpPoly x = FpPoly::variable(p);
  FpPoly h = x % f;
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 1; f.degree() >= static_cast<long>(2 * i); ++i) {
    h = powmod(h, pz, f);
    FpPoly g = gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<std::size_t>(f.degree()));
  return out;
}

// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree d.
void equal_degree(const FpPoly& f, std::size_t d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (static_cast<std::size_t>(f.degree()) == d) {
    out.push_back(f);
    return;
  }
  const std::uint32_t p = f.modulus();
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  Integer half;
  if (p != 2) {
    Integer pd = pow_int(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
    half = (pd - 1) / 2;
  }
  for (;;) {
    std::vector<std::uint32_t> a(n);
    for (auto& x : a) x = coef(rng);
    FpPoly ap(p, std::move(a));
    if (ap.degree() <= 0) continue;
    FpPoly b(p);
    if (p == 2) {
      FpPoly term = ap;
      b = term;
      for (std::size_t i = 1; i < d; ++i) {
        term = (term * term) % f;
        b += term;
      }
    } else {
      b = powmod(ap, half, f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

FpFactorization factor(const FpPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
  FpFactorization result;
  result.unit = f.leading();
  std::vector<std::pair<FpPoly, unsigned long>> sqf;
  square_free(f.monic(), 1, sqf);
  std::mt19937_64 rng(seed);
  std::map<FpPoly, unsigned long> merged;
  for (const auto& [g, mult] : sqf)
    for (const auto& [block, d] : distinct_degree(g)) {
      std::vector<FpPoly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& q : irreducibles) merged[q] += mult;
    }
  result.factors.assign(merged.begin(), merged.end());
  return result;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() <= 0) return false;
  FpFactorization fz = factor(f);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

}  // namespace semiab
