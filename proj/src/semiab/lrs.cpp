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

#include "semiab/lrs.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "semiab/error.hpp"

namespace semiab::lrs {

namespace {

constexpr std::uint64_t kCanonicalPeriodLimit = 20000;
constexpr std::uint64_t kExactnessModulusLimit = 10000;
constexpr std::uint64_t kModularCycleLimit = std::uint64_t{1} << 16;
constexpr std::uint32_t kCertificatePrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                                37, 41, 43, 47, 53, 59, 61, 67, 71, 73};

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  const Integer l = lcm(Integer(static_cast<unsigned long>(a)), Integer(static_cast<unsigned long>(b)));
  if (l > Integer(static_cast<unsigned long>(std::uint64_t{1} << 62)))
    throw ResourceExceeded("progression modulus overflow");
  return l.get_ui();
}

IntVector state_after(const IntegerLRS& lrs, std::uint64_t n) {
  IntVector s = lrs.initial;
  if (n == 0) return s;
  return matrix_power(companion_matrix(lrs.coefficients), n).apply(s);
}

// x mod p for every term, with the first repeated state.
struct ModCycle {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  std::vector<std::uint32_t> residues;  // length preperiod + period
};

std::optional<ModCycle> mod_cycle(const IntegerLRS& lrs, std::uint32_t p) {
  const std::size_t d = lrs.order();
  const Integer pz(static_cast<unsigned long>(p));
  std::vector<std::uint32_t> c(d), start(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = static_cast<std::uint32_t>(mod_floor(lrs.coefficients[i], pz).get_ui());
  for (std::size_t i = 0; i < d; ++i) start[i] = static_cast<std::uint32_t>(mod_floor(lrs.initial[i], pz).get_ui());
  auto step = [&](std::vector<std::uint32_t>& w) {
    std::uint64_t next = 0;
    for (std::size_t i = 0; i < d; ++i) next = (next + std::uint64_t{c[i]} * w[d - 1 - i]) % p;
    std::rotate(w.begin(), w.begin() + 1, w.end());
    w[d - 1] = static_cast<std::uint32_t>(next);
  };
  // Brent's cycle detection, constant memory.
  std::uint64_t power = 1, period = 1, steps = 0;
  std::vector<std::uint32_t> tortoise = start, hare = start;
  step(hare);
  while (tortoise != hare) {
    if (++steps > kModularCycleLimit) return std::nullopt;
    if (power == period) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
    step(hare);
    ++period;
  }
  tortoise = hare = start;
  for (std::uint64_t i = 0; i < period; ++i) step(hare);
  std::uint64_t preperiod = 0;
  while (tortoise != hare) {
    step(tortoise);
    step(hare);
    ++preperiod;
  }
  ModCycle out{preperiod, period, {}};
  std::vector<std::uint32_t> w = start;
  for (std::uint64_t n = 0; n < preperiod + period; ++n) {
    out.residues.push_back(w[0]);
    step(w);
  }
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

void prune(ZeroSetReport& r) {
  std::vector<Progression> unique;
  for (const auto& ap : r.progressions)
    if (std::find(unique.begin(), unique.end(), ap) == unique.end()) unique.push_back(ap);
  std::vector<Progression> kept;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < unique.size() && !covered; ++j) covered = j != i && unique[j].covers(unique[i]);
    if (!covered) kept.push_back(unique[i]);
  }
  std::sort(kept.begin(), kept.end(), [](const Progression& a, const Progression& b) {
    return std::tie(a.modulus, a.residue, a.start) < std::tie(b.modulus, b.residue, b.start);
  });
  r.progressions = std::move(kept);
  std::sort(r.sporadic.begin(), r.sporadic.end());
  r.sporadic.erase(std::unique(r.sporadic.begin(), r.sporadic.end()), r.sporadic.end());
  std::erase_if(r.sporadic, [&](std::uint64_t n) {
    return std::any_of(r.progressions.begin(), r.progressions.end(),
                       [n](const Progression& ap) { return ap.contains(n); });
  });
}

// Rewrites the set in its coarsest progression form: for n beyond every start
// and sporadic element the set is periodic, so each full class modulo a divisor
// of the period becomes one progression, extended downwards as far as it goes.
void canonicalize(ZeroSetReport& r) {
  prune(r);
  if (r.progressions.empty()) return;
  std::uint64_t period = 1, settle = 0;
  for (const auto& ap : r.progressions) {
    period = checked_lcm(period, ap.modulus);
    settle = std::max(settle, ap.start);
    if (period > kCanonicalPeriodLimit) return;
  }
  if (!r.sporadic.empty()) settle = std::max(settle, r.sporadic.back() + 1);
  const ZeroSetReport old = r;
  std::vector<Progression> aps;
  for (std::uint64_t k : divisors(period)) {
    for (std::uint64_t res = 0; res < k; ++res) {
      std::uint64_t first = settle + (res + k - settle % k) % k;
      bool full = true;
      for (std::uint64_t n = first; n < settle + period && full; n += k) full = old.contains(n);
      if (!full) continue;
      while (first >= k && old.contains(first - k)) first -= k;
      const Progression cand{k, res, first};
      if (std::none_of(aps.begin(), aps.end(), [&](const Progression& a) { return a.covers(cand); }))
        aps.push_back(cand);
    }
  }
  std::vector<std::uint64_t> sporadic;
  for (std::uint64_t n = 0; n < settle; ++n)
    if (old.contains(n) &&
        std::none_of(aps.begin(), aps.end(), [n](const Progression& a) { return a.contains(n); }))
      sporadic.push_back(n);
  r.progressions = std::move(aps);
  r.sporadic = std::move(sporadic);
  prune(r);
}

std::optional<Progression> intersect_progressions(const Progression& a, const Progression& b) {
  // n = a.residue + a.modulus * t with n = b.residue mod b.modulus.
  const Integer ka(static_cast<unsigned long>(a.modulus)), kb(static_cast<unsigned long>(b.modulus));
  const Integer g = gcd(ka, kb);
  const Integer diff = Integer(static_cast<unsigned long>(b.residue)) - Integer(static_cast<unsigned long>(a.residue));
  if (!divides(g, diff)) return std::nullopt;
  const Integer kbg = kb / g;
  Integer inv;
  Integer kag = mod_floor(ka / g, kbg);
  if (kbg == 1) {
    inv = 0;
  } else {
    mpz_invert(inv.get_mpz_t(), kag.get_mpz_t(), kbg.get_mpz_t());
  }
  const Integer t = kbg == 1 ? Integer(0) : mod_floor((diff / g) * inv, kbg);
  const Integer m = ka * kbg;
  const Integer r = mod_floor(Integer(static_cast<unsigned long>(a.residue)) + ka * t, m);
  if (m > Integer(static_cast<unsigned long>(std::uint64_t{1} << 62)))
    throw ResourceExceeded("progression modulus overflow");
  Progression out{m.get_ui(), r.get_ui(), 0};
  const std::uint64_t lo = std::max(a.start, b.start);
  out.start = lo + (out.residue + out.modulus - lo % out.modulus) % out.modulus;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Integer sequences

void IntegerLRS::check() const {
  if (coefficients.empty()) throw InputError("a recurrence needs order at least 1");
  if (initial.size() != coefficients.size())
    throw InputError("expected " + std::to_string(coefficients.size()) + " initial terms, got " +
                     std::to_string(initial.size()));
}

IntMatrix companion_matrix(const IntVector& c) {
  const std::size_t d = c.size();
  IntMatrix m(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) m(i, i + 1) = 1;
  for (std::size_t j = 0; j < d; ++j) m(d - 1, j) = c[d - 1 - j];
  return m;
}

IntVector terms(const IntegerLRS& lrs, std::size_t count, std::size_t max_bits) {
  lrs.check();
  const std::size_t d = lrs.order();
  IntVector out(lrs.initial.begin(), lrs.initial.begin() + static_cast<std::ptrdiff_t>(std::min(count, d)));
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t n = out.size();
    Integer next = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (lrs.coefficients[i] != 0) next += lrs.coefficients[i] * out[n - 1 - i];
    if (bit_length(next) > max_bits)
      throw ResourceExceeded("recurrence term " + std::to_string(n) + " exceeds " + std::to_string(max_bits) +
                             " bits");
    out.push_back(std::move(next));
  }
  return out;
}

Integer term_sequential(const IntegerLRS& lrs, std::uint64_t n) {
  return terms(lrs, static_cast<std::size_t>(n) + 1, std::numeric_limits<std::size_t>::max()).back();
}

Integer term_at(const IntegerLRS& lrs, std::uint64_t n) {
  lrs.check();
  if (n < lrs.order()) return lrs.initial[n];
  return state_after(lrs, n)[0];
}

IntegerLRS subsequence(const IntegerLRS& lrs, std::uint64_t k, std::uint64_t l) {
  lrs.check();
  if (k == 0) throw InputError("subsequence step must be positive");
  const IntMatrix step = matrix_power(companion_matrix(lrs.coefficients), k);
  IntegerLRS out;
  for (const auto& a : characteristic_polynomial(step)) out.coefficients.push_back(-a);
  IntVector state = state_after(lrs, l);
  for (std::size_t j = 0; j < lrs.order(); ++j) {
    out.initial.push_back(state[0]);
    if (j + 1 < lrs.order()) state = step.apply(state);
  }
  return out;
}

bool certified_ap_zero(const IntegerLRS& lrs, std::uint64_t k, std::uint64_t l) {
  const IntegerLRS sub = subsequence(lrs, k, l);
  return std::all_of(sub.initial.begin(), sub.initial.end(), [](const Integer& z) { return z == 0; });
}

IntVector times_x_minus_one(const IntVector& c) {
  const std::size_t d = c.size();
  IntVector out(d + 1);
  if (d == 0) {
    out[0] = 1;
    return out;
  }
  out[0] = c[0] + 1;
  for (std::size_t i = 1; i < d; ++i) out[i] = c[i] - c[i - 1];
  out[d] = -c[d - 1];
  return out;
}

IntVector product_recurrence(const IntVector& a, const IntVector& b) {
  // Polynomials high to low: [1, -c_1, ..., -c_k].
  IntVector pa{1}, pb{1};
  for (const auto& x : a) pa.push_back(-x);
  for (const auto& x : b) pb.push_back(-x);
  IntVector prod(pa.size() + pb.size() - 1);
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];
  IntVector out;
  for (std::size_t i = 1; i < prod.size(); ++i) out.push_back(-prod[i]);
  return out;
}

IntegerLRS shift_by_constant(const IntegerLRS& lrs, const Integer& value) {
  lrs.check();
  IntegerLRS out{times_x_minus_one(lrs.coefficients), terms(lrs, lrs.order() + 1)};
  for (auto& x : out.initial) x -= value;
  return out;
}

// ---------------------------------------------------------------------------
// Zero sets

bool Progression::covers(const Progression& other) const {
  if (other.modulus % modulus != 0) return false;
  if (other.residue % modulus != residue) return false;
  return other.start >= start;
}

std::string to_string(Status s) { return s == Status::Exact ? "exact" : "bounded"; }

bool ZeroSetReport::contains(std::uint64_t n) const {
  for (const auto& ap : progressions)
    if (ap.contains(n)) return true;
  return std::binary_search(sporadic.begin(), sporadic.end(), n);
}

std::vector<bool> ZeroSetReport::bitmap(std::uint64_t bound) const {
  std::vector<bool> out(bound + 1, false);
  for (const auto& ap : progressions)
    for (std::uint64_t n = ap.start; n <= bound; n += ap.modulus) out[n] = true;
  for (auto n : sporadic)
    if (n <= bound) out[n] = true;
  return out;
}

namespace {

// Nonvanishing of u_n for n > n_max in every residue class modulo `modulus`
// not already covered by a progression.
std::string exactness_certificate(const IntegerLRS& lrs, const IntVector& t, const ZeroSetReport& rep,
                                  std::uint64_t modulus, std::uint64_t n_max, bool& ok) {
  ok = false;
  std::vector<std::uint64_t> open;
  for (std::uint64_t c = 0; c < modulus; ++c) {
    const bool covered = std::any_of(rep.progressions.begin(), rep.progressions.end(),
                                     [&](const Progression& ap) { return c % ap.modulus == ap.residue; });
    if (!covered) open.push_back(c);
  }
  if (open.empty()) {
    ok = true;
    return "every residue class modulo " + std::to_string(modulus) + " is a certified progression";
  }

  const std::size_t d = lrs.order();
  std::vector<std::uint64_t> remaining;
  // Growth: a dominant first coefficient keeps a non-decreasing window growing.
  const IntegerLRS shape = subsequence(lrs, modulus, 0);
  Integer tail = 0;
  for (std::size_t i = 1; i < d; ++i) tail += abs(shape.coefficients[i]);
  const bool dominant = abs(shape.coefficients[0]) >= tail + 1;
  for (std::uint64_t c : open) {
    bool done = false;
    if (dominant) {
      std::vector<const Integer*> v;
      for (std::uint64_t n = c; n <= n_max; n += modulus) v.push_back(&t[n]);
      for (std::size_t j = 0; j + d <= v.size() && !done; ++j) {
        bool monotone = *v[j + d - 1] != 0;
        for (std::size_t i = j; i + 1 < j + d && monotone; ++i) monotone = abs(*v[i]) <= abs(*v[i + 1]);
        done = monotone;
      }
    }
    if (!done) remaining.push_back(c);
  }
  std::string how = dominant && remaining.size() < open.size() ? "growth" : "";
  // Modular: periodic mod p and never zero on the class past n_max.
  for (std::uint32_t p : kCertificatePrimes) {
    if (remaining.empty()) break;
    const auto cyc = mod_cycle(lrs, p);
    if (!cyc || cyc->preperiod > n_max + 1) continue;
    const std::uint64_t span = std::lcm(modulus, cyc->period);
    if (span > 1000000) continue;
    std::vector<std::uint64_t> still;
    bool used = false;
    for (std::uint64_t c : remaining) {
      bool clean = true;
      std::uint64_t n = n_max + 1 + (c + modulus - (n_max + 1) % modulus) % modulus;
      for (std::uint64_t steps = 0; steps < span / modulus && clean; ++steps, n += modulus)
        clean = cyc->residues[cyc->preperiod + (n - cyc->preperiod) % cyc->period] != 0;
      if (clean)
        used = true;
      else
        still.push_back(c);
    }
    if (used) how += (how.empty() ? "" : ", ") + std::string("nonzero mod ") + std::to_string(p);
    remaining = std::move(still);
  }
  if (!remaining.empty()) {
    std::ostringstream os;
    os << "no nonvanishing certificate for residue " << remaining.front() << " mod " << modulus
       << "; zeros beyond " << n_max << " not excluded";
    return os.str();
  }
  ok = true;
  return "no zeros beyond " + std::to_string(n_max) + " outside progressions (" + how + ")";
}

}  // namespace

ZeroSetReport zero_set(const IntegerLRS& lrs, const ZeroSetOptions& options) {
  lrs.check();
  if (options.k_max < 1 || options.n_max < 1) throw InputError("zero_set needs k_max >= 1 and n_max >= 1");
  const std::uint64_t n_max = options.n_max;
  const IntVector t = terms(lrs, static_cast<std::size_t>(n_max) + 1, options.max_term_bits);

  ZeroSetReport rep;
  rep.search_bound = n_max;
  for (std::uint64_t k = 1; k <= options.k_max; ++k) {
    for (std::uint64_t r = 0; r < k && r <= n_max; ++r) {
      std::uint64_t last = r + (n_max - r) / k * k;
      if (t[last] != 0) continue;
      std::uint64_t s = last;
      while (s >= k && t[s - k] == 0) s -= k;
      const Progression cand{k, r, s};
      if (std::any_of(rep.progressions.begin(), rep.progressions.end(),
                      [&](const Progression& ap) { return ap.covers(cand); }))
        continue;
      if (certified_ap_zero(lrs, k, s)) rep.progressions.push_back(cand);
    }
  }
  for (std::uint64_t n = 0; n <= n_max; ++n)
    if (t[n] == 0 && !rep.contains(n)) rep.sporadic.push_back(n);

  std::uint64_t modulus = 1;
  for (const auto& ap : rep.progressions) {
    modulus = std::lcm(modulus, ap.modulus);
    if (modulus > kExactnessModulusLimit) break;
  }
  if (modulus > kExactnessModulusLimit) {
    rep.certificate = "progression moduli too large for a nonvanishing certificate";
    return rep;
  }
  bool ok = false;
  rep.certificate = exactness_certificate(lrs, t, rep, modulus, n_max, ok);
  rep.status = ok ? Status::Exact : Status::Bounded;
  return rep;
}

// ---------------------------------------------------------------------------
// Group sequences

void GroupLRS::check() const {
  if (coefficients.empty()) throw InputError("a recurrence needs order at least 1");
  if (initial.size() != coefficients.size())
    throw InputError("expected " + std::to_string(coefficients.size()) + " initial terms, got " +
                     std::to_string(initial.size()));
  for (const auto& x : initial) ambient.check(x);
}

std::vector<fgab::GroupVector> group_terms(const GroupLRS& lrs, std::size_t count) {
  lrs.check();
  const std::size_t d = lrs.order();
  std::vector<fgab::GroupVector> out(lrs.initial.begin(),
                                     lrs.initial.begin() + static_cast<std::ptrdiff_t>(std::min(count, d)));
  IntVector weights(d);
  for (std::size_t j = 0; j < d; ++j) weights[j] = lrs.coefficients[d - 1 - j];
  while (out.size() < count) {
    const std::size_t n = out.size();
    out.push_back(lrs.ambient.combine(weights, std::span(out).subspan(n - d, d)));
  }
  return out;
}

fgab::GroupVector group_term_at(const GroupLRS& lrs, std::uint64_t n) {
  lrs.check();
  if (n < lrs.order()) return lrs.initial[n];
  const IntMatrix p = matrix_power(companion_matrix(lrs.coefficients), n);
  return lrs.ambient.combine(p.row(0), lrs.initial);
}

GroupLRS map_lrs(const GroupLRS& lrs, const fgab::GroupHom& hom) {
  if (!(hom.domain() == lrs.ambient)) throw InputError("homomorphism domain does not match the sequence");
  GroupLRS out{lrs.coefficients, hom.codomain(), {}};
  for (const auto& x : lrs.initial) out.initial.push_back(hom.apply(x));
  return out;
}

EventualPeriod eventual_period(const GroupLRS& lrs, std::uint64_t max_states) {
  lrs.check();
  if (!lrs.ambient.is_finite()) throw InputError("eventual_period needs a finite ambient group");
  const std::size_t d = lrs.order();
  IntVector weights(d);
  for (std::size_t j = 0; j < d; ++j) weights[j] = lrs.coefficients[d - 1 - j];
  std::vector<fgab::GroupVector> window = lrs.initial;
  std::map<IntVector, std::uint64_t> seen;
  std::vector<bool> zero;
  for (std::uint64_t n = 0;; ++n) {
    IntVector key;
    for (const auto& x : window) key.insert(key.end(), x.torsion_part.begin(), x.torsion_part.end());
    auto [it, fresh] = seen.emplace(std::move(key), n);
    if (!fresh) {
      EventualPeriod ep{it->second, n - it->second, {}};
      for (std::uint64_t i = 0; i < n; ++i)
        if (zero[i]) ep.zeros.push_back(i);
      return ep;
    }
    if (n >= max_states) throw ResourceExceeded("eventual period search exceeded " + std::to_string(max_states) + " states");
    zero.push_back(window[0].is_zero());
    fgab::GroupVector next = lrs.ambient.combine(weights, window);
    window.erase(window.begin());
    window.push_back(std::move(next));
  }
}

ZeroSetReport periodic_zero_set(const EventualPeriod& ep, std::uint64_t n_max) {
  ZeroSetReport r;
  r.search_bound = std::max(n_max, ep.preperiod);
  r.status = Status::Exact;
  r.certificate = "eventually periodic with preperiod " + std::to_string(ep.preperiod) + " and period " +
                  std::to_string(ep.period);
  for (auto z : ep.zeros) {
    if (z < ep.preperiod)
      r.sporadic.push_back(z);
    else
      r.progressions.push_back(Progression{ep.period, z % ep.period, z});
  }
  canonicalize(r);
  return r;
}

ZeroSetReport intersect(const ZeroSetReport& a, const ZeroSetReport& b) {
  ZeroSetReport r;
  for (const auto& x : a.progressions)
    for (const auto& y : b.progressions)
      if (auto z = intersect_progressions(x, y)) r.progressions.push_back(*z);
  for (auto n : a.sporadic)
    if (b.contains(n)) r.sporadic.push_back(n);
  for (auto n : b.sporadic)
    if (a.contains(n)) r.sporadic.push_back(n);
  const bool exact = a.status == Status::Exact && b.status == Status::Exact;
  r.status = exact ? Status::Exact : Status::Bounded;
  if (exact)
    r.search_bound = std::max(a.search_bound, b.search_bound);
  else if (a.status == Status::Bounded && b.status == Status::Bounded)
    r.search_bound = std::min(a.search_bound, b.search_bound);
  else
    r.search_bound = a.status == Status::Bounded ? a.search_bound : b.search_bound;
  if (a.certificate.empty() || b.certificate.empty())
    r.certificate = a.certificate + b.certificate;
  else
    r.certificate = a.certificate + "; " + b.certificate;
  canonicalize(r);
  return r;
}

ZeroSetReport group_zero_set(const GroupLRS& lrs, const fgab::SubgroupBasis& gamma, const ZeroSetOptions& options) {
  lrs.check();
  if (!(gamma.ambient == lrs.ambient)) throw InputError("subgroup and sequence live in different groups");
  const fgab::Quotient q = fgab::quotient(gamma);
  const GroupLRS y = map_lrs(lrs, q.projection);

  ZeroSetReport all;
  all.progressions.push_back(Progression{1, 0, 0});
  all.status = Status::Exact;
  all.search_bound = options.n_max;
  if (q.ambient.is_trivial()) {
    all.certificate = "the subgroup is the whole ambient group";
    return all;
  }
  ZeroSetReport result = all;
  result.certificate.clear();
  for (std::size_t j = 0; j < q.ambient.free_rank(); ++j) {
    IntegerLRS coord{lrs.coefficients, {}};
    for (const auto& x : y.initial) coord.initial.push_back(x.free_part[j]);
    result = intersect(result, zero_set(coord, options));
  }
  for (std::size_t j = 0; j < q.ambient.torsion_count(); ++j) {
    const fgab::FgAmbient cyclic(0, {q.ambient.torsion_orders()[j]});
    GroupLRS coord{lrs.coefficients, cyclic, {}};
    for (const auto& x : y.initial) coord.initial.push_back(cyclic.make({}, {x.torsion_part[j]}));
    result = intersect(result, periodic_zero_set(eventual_period(coord), options.n_max));
  }
  result.search_bound = std::max<std::uint64_t>(result.search_bound, options.n_max);
  if (result.status == Status::Bounded) result.search_bound = options.n_max;
  return result;
}

}  // namespace semiab::lrs
