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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "random_models.hpp"
#include "semiab/commands.hpp"
#include "semiab/decomp.hpp"
#include "semiab/dynamics.hpp"
#include "semiab/error.hpp"
#include "semiab/expr.hpp"
#include "semiab/fgab.hpp"
#include "semiab/instance.hpp"
#include "semiab/lrs.hpp"
#include "semiab/semiabelian.hpp"

using namespace semiab;
using Json = nlohmann::ordered_json;
using fgab::FgAmbient;
using fgab::GroupVector;
using fgab::SubgroupBasis;

namespace {

// Wall-clock limits and sizes, fixed.
constexpr double kExample2Seconds = 60.0;
constexpr double kExample1Seconds = 30.0;
constexpr double kRandomSuiteSeconds = 300.0;
constexpr int kAffineInstances = 200;
constexpr std::uint64_t kAffineBound = 2000;
constexpr int kRecurrenceInstances = 100;
constexpr std::size_t kRecurrenceBound = 50;
constexpr int kPropFgInstances = 100;
constexpr int kPipelineInstances = 20;
constexpr std::uint64_t kPipelineBound = 300;
constexpr int kLrsInstances = 100;
constexpr std::uint64_t kLrsScanBound = 5000;
constexpr std::uint64_t kMersenneBound = std::uint64_t{1} << 16;
const Rational kMersenneCeiling(16, 1024);

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << what;
    passed = passed && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::uint64_t> powers_minus_one(std::uint64_t base, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 1; q - 1 <= bound; q *= base) out.push_back(q - 1);
  return out;
}

Json analyze_builtin(const std::string& name, Outcome& o) {
  const auto r = cli::run("analyze", cli::builtin_instance_json(name), {});
  o.require(r.exit_code == cli::kOk, name + ": exit code " + std::to_string(r.exit_code) + " " + r.error);
  return r.report.empty() ? Json() : Json::parse(r.report);
}

std::vector<std::uint64_t> members_of(const Json& report) {
  if (report.is_null()) return {};
  return report["result"]["return_set"]["members"].get<std::vector<std::uint64_t>>();
}

void criterion1(Outcome& o) {
  for (const auto& [name, base, bound] : {std::tuple{"example2-p2", 2, 256}, std::tuple{"example2-p3", 3, 243}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json rep = analyze_builtin(name, o);
    const double secs = seconds_since(t0);
    const auto got = members_of(rep);
    o.require(!rep.is_null() && rep["parameters"]["n_max"] == bound, std::string(name) + ": wrong scan bound");
    o.require(got == powers_minus_one(base, bound), std::string(name) + ": return set differs");
    o.require(secs < kExample2Seconds, std::string(name) + ": took " + std::to_string(secs) + " s");
    if (o.passed) o.detail << (base == 2 ? "" : "; ") << name << " " << got.size() << " members in " << secs << " s";
  }
}

void criterion2(Outcome& o) {
  for (std::uint32_t p : {2u, 3u}) {
    const FieldSpec f = FieldSpec::function_field(p);
    const Scalar t = Scalar::t(f), one = Scalar::one(f);
    const auto phi = expr::parse_expression("t*x1 - t + 1", 1, f);
    dynamics::RationalTorusMap map(f, {phi});
    dynamics::TorusIterator it(map, {mulgroup::factor(t + one, f)});
    o.require(it.point()[0].value() == t + one, "p = " + std::to_string(p) + ": iterate 0 differs");
    Scalar expected = t * t + one;  // n = 1
    Scalar direct = t + one;
    for (std::uint64_t n = 1; n <= 200; ++n) {
      it.advance();
      const std::vector<Scalar> at{direct};
      direct = *phi.evaluate(at);
      const Scalar got = it.point()[0].value();
      o.require(got == expected && direct == expected,
                "p = " + std::to_string(p) + ": iterate " + std::to_string(n) + " differs");
      expected = (expected - one) * t + one;
    }
  }
  if (o.passed) o.detail << "p = 2, 3; n = 0..200";
}

void criterion3(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Json rep = analyze_builtin("example1", o);
  const double secs = seconds_since(t0);
  o.require(!rep.is_null() && rep["parameters"]["n_max"] == 4095, "wrong scan bound");
  o.require(members_of(rep) == powers_minus_one(2, 4095), "return set differs from {2^k - 1}");
  bool noted = false;
  if (!rep.is_null())
    for (const auto& n : rep["notes"]) noted = noted || n.get<std::string>().find("{0} ∪ {2^n") != std::string::npos;
  o.require(noted, "discrepancy note missing");
  o.require(secs < kExample1Seconds, "took " + std::to_string(secs) + " s");
  if (o.passed) o.detail << "13 members, note present, " << secs << " s";
}

void criterion4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(4004);
  lrs::ZeroSetOptions opt;
  opt.n_max = kAffineBound;
  std::size_t exact = 0, total_members = 0;
  for (int trial = 0; trial < kAffineInstances && o.passed; ++trial) {
    const FgAmbient a = testing::random_ambient(rng, 3, 6);
    const auto phi = testing::random_affine(rng, a, -3, 3);
    const GroupVector alpha = testing::random_vector(rng, a, -3, 3);
    const SubgroupBasis gamma = testing::random_subgroup(rng, a, 3, -3, 3);
    const auto r = dynamics::return_set_regular(phi, alpha, gamma, opt);
    o.require(r.decomposition.has_value(), "no decomposition");
    if (!o.passed) break;
    const auto from_decomposition = r.decomposition->bitmap(kAffineBound);
    const fgab::MembershipOracle oracle(gamma);
    GroupVector x = alpha;
    for (std::uint64_t n = 0; n <= kAffineBound; ++n) {
      const bool brute = oracle.contains(x);
      total_members += brute;
      o.require(from_decomposition[n] == brute,
                "instance " + std::to_string(trial) + " differs at n = " + std::to_string(n));
      if (!o.passed) break;
      x = phi.apply(x);
    }
    exact += r.decomposition->status == lrs::Status::Exact;
  }
  const double secs = seconds_since(t0);
  o.require(secs < kRandomSuiteSeconds, "took " + std::to_string(secs) + " s");
  if (o.passed)
    o.detail << kAffineInstances << " instances, " << exact << " certified exact, " << total_members
             << " returns, " << secs << " s";
}

void criterion5(Outcome& o) {
  testing::Rng rng(5005);
  for (int trial = 0; trial < kRecurrenceInstances && o.passed; ++trial) {
    FgAmbient a = testing::random_ambient(rng, 3, 6);
    while (a.torsion_count() > 2) a = testing::random_ambient(rng, 3, 6);
    const auto phi = testing::random_affine(rng, a, -3, 3);
    const GroupVector alpha = testing::random_vector(rng, a, -5, 5);
    const IntVector c = dynamics::orbit_recurrence(phi);
    const std::size_t k = c.size();
    std::vector<GroupVector> orb{alpha};
    while (orb.size() < kRecurrenceBound + k + 1) orb.push_back(phi.apply(orb.back()));
    for (std::size_t n = 0; n <= kRecurrenceBound; ++n) {
      GroupVector rhs = a.zero();
      for (std::size_t i = 1; i <= k; ++i) rhs = a.add(rhs, a.scale(c[i - 1], orb[n + k - i]));
      o.require(rhs == orb[n + k], "orbit recurrence fails, instance " + std::to_string(trial));
      o.require(dynamics::iterate_closed_form(phi, alpha, n) == orb[n],
                "closed form fails, instance " + std::to_string(trial) + ", n = " + std::to_string(n));
    }
  }
  if (o.passed) o.detail << kRecurrenceInstances << " instances, n <= " << kRecurrenceBound;
}

void criterion6(Outcome& o) {
  testing::Rng rng(6006);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < kPropFgInstances; ++trial) {
    const std::size_t old_free = rng.index(3), n = 1 + rng.index(3);
    IntVector torsion;
    for (std::size_t i = rng.index(2); i > 0; --i) torsion.push_back(rng.uniform(2, 6));
    const FgAmbient a(old_free + n, torsion);
    auto old_vector = [&] {
      IntVector free = rng.vector(old_free, -4, 4);
      free.resize(old_free + n);
      return a.make(free, rng.vector(torsion.size(), 0, 5));
    };
    std::vector<GroupVector> gamma_gens, ys, zs;
    for (std::size_t i = rng.index(3); i > 0; --i) gamma_gens.push_back(old_vector());
    for (std::size_t i = 0; i < n; ++i) ys.push_back(old_vector());
    for (std::size_t i = 0; i < n; ++i) {
      GroupVector z = old_vector();
      z.free_part[old_free + i] = rng.uniform(1, 3) * (rng.coin() ? 1 : -1);
      zs.push_back(z);
    }
    const SubgroupBasis gamma(a, gamma_gens);
    if (fgab::verify_prop_fg(gamma, ys, zs)) ++accepted;

    std::vector<GroupVector> dependent = zs;
    dependent[0] = a.add(a.scale(rng.uniform(1, 3), ys[0]), gamma_gens.empty() ? a.zero() : gamma_gens[0]);
    try {
      fgab::verify_prop_fg(gamma, ys, dependent);
    } catch (const InputError&) {
      ++rejected;
    }
  }
  o.require(accepted == kPropFgInstances, std::to_string(kPropFgInstances - accepted) + " valid instances failed");
  o.require(rejected == kPropFgInstances, std::to_string(kPropFgInstances - rejected) + " dependent instances accepted");
  if (o.passed) o.detail << accepted << " accepted, " << rejected << " dependent rejected";
}

void criterion7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(7007);
  semiabelian::PipelineOptions opt;
  opt.n_max = kPipelineBound;
  const std::set<std::string> required{"the_same", "prop_beta_n", "prop_theta", "in_gamma",
                                       "r_equals_r1_and_r1_prime"};
  std::size_t returns = 0;
  for (int trial = 0; trial < kPipelineInstances && o.passed; ++trial) {
    const auto inst = testing::random_pipeline_instance(rng);
    o.require(inst.model.torus_rank <= 2 && inst.model.abelian.dimension() <= 2, "instance outside the size bounds");
    const auto art = semiabelian::run_pipeline(inst.model, inst.map, inst.alpha, inst.gamma, opt);
    std::set<std::string> seen;
    for (const auto& a : art.assertions) {
      seen.insert(a.name);
      o.require(a.passed, "instance " + std::to_string(trial) + ": " + a.name + " failed: " + a.detail);
    }
    for (const auto& name : required)
      o.require(seen.count(name) == 1, "instance " + std::to_string(trial) + ": " + name + " not checked");
    for (bool b : art.r) returns += b;
  }
  const double secs = seconds_since(t0);
  o.require(secs < kRandomSuiteSeconds, "took " + std::to_string(secs) + " s");
  if (o.passed) o.detail << kPipelineInstances << " instances at n_max " << kPipelineBound << ", " << returns
                         << " returns, " << secs << " s";
}

// Terms by the recurrence, independent of the library.
IntVector scan_terms(const lrs::IntegerLRS& l, std::size_t count) {
  IntVector t = l.initial;
  const std::size_t k = l.coefficients.size();
  while (t.size() < count) {
    Integer next = 0;
    for (std::size_t i = 1; i <= k; ++i) next += l.coefficients[i - 1] * t[t.size() - i];
    t.push_back(next);
  }
  t.resize(count);
  return t;
}

void criterion8(Outcome& o) {
  testing::Rng rng(8008);
  lrs::ZeroSetOptions opt;
  opt.n_max = kLrsScanBound;
  std::size_t zeros = 0, aps = 0;
  for (int trial = 0; trial < kLrsInstances && o.passed; ++trial) {
    const std::size_t d = 1 + rng.index(4);
    const lrs::IntegerLRS l{rng.vector(d, -3, 3), rng.vector(d, -3, 3)};
    const auto rep = lrs::zero_set(l, opt);
    const IntVector t = scan_terms(l, kLrsScanBound + 1);
    for (std::uint64_t n = 0; n <= kLrsScanBound; ++n)
      if (t[n] == 0) {
        ++zeros;
        o.require(rep.contains(n), "instance " + std::to_string(trial) + ": zero at " + std::to_string(n) +
                                       " not covered");
      }
    for (std::uint64_t n : rep.sporadic)
      o.require(n <= kLrsScanBound && t[n] == 0, "instance " + std::to_string(trial) + ": false sporadic zero");
    for (const auto& ap : rep.progressions) {
      ++aps;
      const std::uint64_t end = ap.start + 10 * d * ap.modulus;
      const IntVector far = scan_terms(l, end + 1);
      for (std::uint64_t n = ap.start; n <= end; n += ap.modulus)
        o.require(far[n] == 0, "instance " + std::to_string(trial) + ": progression fails at " + std::to_string(n));
    }
  }
  if (o.passed) o.detail << kLrsInstances << " sequences, " << zeros << " zeros, " << aps << " progressions";
}

void criterion9(Outcome& o) {
  decomp::Bitmap b(kMersenneBound + 1, false);
  for (std::uint64_t q = 1; q - 1 <= kMersenneBound; q *= 2) b[q - 1] = true;
  const std::vector<std::uint64_t> lengths{64, 256, 1024};
  const auto prof = decomp::banach_profile(b, lengths);
  o.require(prof.size() == 3, "profile has the wrong size");
  if (!o.passed) return;
  o.require(prof[0].value > prof[1].value && prof[1].value > prof[2].value, "profile is not strictly decreasing");
  o.require(prof[2].value <= kMersenneCeiling, "L = 1024 value exceeds 16/1024");
  decomp::DecompOptions opt;
  opt.lengths = lengths;
  const auto d = decomp::decompose(b, opt);
  o.require(d.verdict == decomp::Verdict::APPlusSparse, "verdict is " + decomp::to_string(d.verdict));
  if (o.passed)
    o.detail << prof[0].value.get_str() << ", " << prof[1].value.get_str() << ", " << prof[2].value.get_str() << "; "
             << decomp::to_string(d.verdict);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Example 2 return sets over F_2(t) and F_3(t)", criterion1},
      {"Example 2 iterate identity", criterion2},
      {"Example 1 return set and discrepancy note", criterion3},
      {"regular maps: exact decomposition vs brute force", criterion4},
      {"orbit recurrence and closed form", criterion5},
      {"intersection of perturbed subgroups", criterion6},
      {"pipeline equalities", criterion7},
      {"LRS zero sets vs direct scan", criterion8},
      {"Banach profile of {2^k - 1}", criterion9}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.passed;
    std::printf("%s criterion %zu: %s (%s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
