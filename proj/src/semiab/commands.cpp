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

#include "semiab/commands.hpp"

#include <chrono>
#include <new>
#include <sstream>
#include <type_traits>
#include <variant>

#include "semiab/decomp.hpp"
#include "semiab/error.hpp"
#include "semiab/instance.hpp"

namespace semiab::cli {

namespace {

constexpr std::size_t kExplicitListLimit = 10000;
constexpr std::size_t kValueBitsLimit = 1024;

// Upper bound on the size of the multiplied-out value, saturating at the limit.
std::size_t value_bits(const mulgroup::FactoredElement& x) {
  Integer total = 0;
  for (const auto& [q, e] : x.exponents) {
    const std::size_t size = std::visit(
        [&](const auto& v) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Integer>) return bit_length(v);
          else return static_cast<std::size_t>(v.degree()) * bit_length(Integer(x.field.p));
        },
        q);
    total += abs(e) * static_cast<unsigned long>(size);
    if (total > kValueBitsLimit) return kValueBitsLimit + 1;
  }
  return total.get_ui();
}

std::string element_string(const mulgroup::FactoredElement& x) {
  if (value_bits(x) <= kValueBitsLimit) return x.value().to_string();
  std::string s = x.unit.get_str();
  for (const auto& [q, e] : x.exponents) {
    s += " * (" + mulgroup::to_string(q) + ")";
    if (e != 1) s += "^" + e.get_str();
  }
  return s;
}

Json torus_json(const mulgroup::TorusPoint& t) {
  Json a = Json::array();
  for (const auto& x : t) a.push_back(element_string(x));
  return a;
}

Json point_json(const semiabelian::ModelPoint& p) {
  return Json{{"torus", torus_json(p.torus)}, {"base", integers_json(p.base.coordinates())}};
}

Json points_json(const std::vector<semiabelian::ModelPoint>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

Json set_json(const std::vector<std::uint64_t>& members) {
  Json j{{"count", members.size()}};
  if (members.size() <= kExplicitListLimit) {
    j["members"] = members;
  } else {
    j["first"] = std::vector<std::uint64_t>(members.begin(), members.begin() + 100);
    j["last"] = members.back();
  }
  return j;
}

Json bitmap_json(const std::vector<bool>& b) { return set_json(decomp::members(b)); }

Json progression_json(const lrs::Progression& p) {
  return Json{{"modulus", p.modulus}, {"residue", p.residue}, {"start", p.start}};
}

Json zero_set_json(const lrs::ZeroSetReport& r) {
  Json aps = Json::array();
  for (const auto& p : r.progressions) aps.push_back(progression_json(p));
  return Json{{"status", lrs::to_string(r.status)},
              {"certificate", r.certificate},
              {"search_bound", r.search_bound},
              {"progressions", aps},
              {"sporadic", r.sporadic}};
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Json decomposition_json(const decomp::Decomposition& d) {
  Json aps = Json::array();
  for (const auto& p : d.aps) aps.push_back(progression_json(p));
  Json prof = Json::array();
  for (const auto& p : d.profile) prof.push_back(Json{{"length", p.length}, {"value", rational_string(p.value)}});
  return Json{{"n_max", d.n_max},
              {"k_max", d.k_max},
              {"burn_in", d.burn_in},
              {"aps", aps},
              {"residual", bitmap_json(d.residual)},
              {"density_profile", prof},
              {"verdict", decomp::to_string(d.verdict)},
              {"sparse_threshold", rational_string(d.sparse_threshold)},
              {"dense_threshold", rational_string(d.dense_threshold)}};
}

struct Settings {
  AnalysisParams params;
  lrs::ZeroSetOptions zero_set;
  dynamics::IterationOptions iteration;
};

Settings settings(const Instance& inst) {
  Settings s{inst.analysis, {}, {}};
  s.zero_set.n_max = s.params.n_max;
  s.zero_set.k_max = s.params.k_max;
  s.iteration.height_cap_bits = s.params.height_cap_bits;
  s.iteration.factor.seed = s.params.seed;
  s.iteration.factor.integer.seed = s.params.seed;
  return s;
}

Json parameters_json(const Settings& s) {
  Json j{{"n_max", s.params.n_max}, {"k_max", s.params.k_max}};
  if (s.params.burn_in) j["burn_in"] = *s.params.burn_in;
  j["height_cap_bits"] = s.params.height_cap_bits;
  j["seed"] = s.params.seed;
  return j;
}

std::optional<decomp::Decomposition> try_decompose(const std::vector<bool>& bitmap, const AnalysisParams& p,
                                                   Json& notes) {
  decomp::DecompOptions o;
  o.k_max = p.k_max;
  o.burn_in = p.burn_in;
  const std::uint64_t n_max = bitmap.empty() ? 0 : bitmap.size() - 1;
  for (auto l : p.window_lengths)
    if (l <= bitmap.size()) o.lengths.push_back(l);
  if (o.lengths.empty() && !p.window_lengths.empty()) notes.push_back("every window length exceeds the scanned range");
  const std::uint64_t burn_in = p.burn_in.value_or(n_max / 10);
  if (n_max < 1 || burn_in >= n_max) {
    notes.push_back("empirical decomposition skipped: burn-in must be below the scanned bound");
    return std::nullopt;
  }
  return decomp::decompose(bitmap, o);
}

dynamics::ReturnSetResult compute_return_set(const Instance& inst, const Model& m, const Settings& s) {
  if (m.model.torus_rank == 0) {
    std::vector<fgab::GroupVector> gens;
    for (const auto& g : m.gamma) gens.push_back(g.base);
    return dynamics::return_set_regular(m.base_map, m.alpha.base, fgab::SubgroupBasis(inst.abelian, gens), s.zero_set);
  }
  return semiabelian::return_set(m.model, semiabelian::ModelMap{*m.torus_map, m.base_map}, m.alpha, m.gamma,
                                 s.zero_set, s.iteration);
}

Json result_json(const dynamics::ReturnSetResult& r) {
  Json j{{"kind", dynamics::to_string(r.kind)},
         {"truncated", r.truncated},
         {"scanned_through", r.bitmap.empty() ? 0 : r.bitmap.size() - 1},
         {"return_set", bitmap_json(r.bitmap)}};
  if (r.decomposition) j["exact_decomposition"] = zero_set_json(*r.decomposition);
  return j;
}

// ---------------------------------------------------------------------------
// Commands

struct Outcome {
  Json body;
  bool checks_passed = true;
};

Outcome cmd_analyze(const Instance& inst) {
  const Settings s = settings(inst);
  const Model m = build_model(inst);
  const auto r = compute_return_set(inst, m, s);
  Json notes = Json::array();
  for (const auto& n : inst.notes) notes.push_back(n);
  for (const auto& n : r.notes) notes.push_back(n);
  Json result = result_json(r);
  if (auto d = try_decompose(r.bitmap, s.params, notes)) result["decomposition"] = decomposition_json(*d);
  return Outcome{Json{{"parameters", parameters_json(s)}, {"result", result}, {"notes", notes}}, true};
}

Outcome cmd_zeroset(const Instance& inst) {
  if (!inst.lrs) throw InputError("$.lrs: the zeroset command needs a recurrence");
  const Settings s = settings(inst);
  const auto r = lrs::zero_set(*inst.lrs, s.zero_set);
  Json result = zero_set_json(r);
  result["members"] = set_json(decomp::members(r.bitmap(s.params.n_max)));
  return Outcome{Json{{"parameters", parameters_json(s)}, {"result", result}, {"notes", inst.notes}}, true};
}

Json assertion_json(const semiabelian::Assertion& a) {
  Json j{{"name", a.name}, {"passed", a.passed}};
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

Outcome cmd_pipeline(const Instance& inst) {
  const Settings s = settings(inst);
  const Model m = build_model(inst);
  if (m.model.torus_rank == 0) throw InputError("$.model.torus_rank: the pipeline needs at least one torus coordinate");
  semiabelian::PipelineOptions po;
  po.n_max = s.params.n_max;
  po.perturbed = s.params.perturbed;
  po.iteration = s.iteration;
  po.zero_set = s.zero_set;
  const auto art =
      semiabelian::run_pipeline(m.model, semiabelian::ModelMap{*m.torus_map, m.base_map}, m.alpha, m.gamma, po);

  Json h = Json::array();
  for (const auto& g : art.h_generators) h.push_back(torus_json(g));
  Json e = Json::array();
  for (const auto& x : art.e_generators) e.push_back(element_string(x));
  Json support = Json::array();
  for (const auto& q : art.gamma1_support) support.push_back(mulgroup::to_string(q));
  Json thetas = Json::array();
  for (std::size_t n = 0; n < art.thetas.size() && n < 32; ++n) thetas.push_back(torus_json(art.thetas[n]));

  Json result{{"m", art.m()},
              {"c", integers_json(art.c)},
              {"betas", points_json(art.betas)},
              {"gamma1_generators", points_json(art.gamma1_generators)},
              {"gamma1_support", support},
              {"h_generators", h},
              {"e_generators", e},
              {"thetas_head", thetas},
              {"r", bitmap_json(art.r)},
              {"r1", bitmap_json(art.r1)},
              {"r1_tilde", bitmap_json(art.r1_tilde)},
              {"exponent_status", art.exponent_status}};
  if (art.exponent_report) result["exponent_zero_set"] = zero_set_json(*art.exponent_report);
  if (art.perturbed) {
    Json eps = Json::array();
    for (const auto& x : art.perturbed->epsilons) eps.push_back(torus_json(x));
    result["perturbed"] = Json{{"epsilons", eps},
                               {"betas", points_json(art.perturbed->betas)},
                               {"gamma1_generators", points_json(art.perturbed->gamma1_generators)},
                               {"r1_prime", bitmap_json(art.perturbed->r1_prime)}};
  }
  Json assertions = Json::array();
  for (const auto& a : art.assertions) assertions.push_back(assertion_json(a));
  Json notes = Json::array();
  for (const auto& n : inst.notes) notes.push_back(n);
  for (const auto& n : art.notes) notes.push_back(n);
  return Outcome{Json{{"parameters", parameters_json(s)}, {"result", result}, {"assertions", assertions}, {"notes", notes}},
                 art.all_passed()};
}

Outcome cmd_fgab(const Instance& inst) {
  if (!inst.fgab) throw InputError("$.fgab: the fgab command needs an ambient and a subgroup");
  const FgabSpec& f = *inst.fgab;
  const fgab::FgAmbient& a = f.ambient;
  auto basis = [&](const std::vector<IntVector>& rows) {
    std::vector<fgab::GroupVector> gens;
    for (const auto& v : rows) gens.push_back(a.from_coordinates(v));
    return fgab::SubgroupBasis(a, gens);
  };
  auto ambient_json = [](const fgab::FgAmbient& x) {
    return Json{{"free_rank", x.free_rank()}, {"torsion", integers_json(x.torsion_orders())}};
  };
  auto gens_json = [](const fgab::SubgroupBasis& s) {
    Json g = Json::array();
    for (const auto& v : s.generators) g.push_back(integers_json(v.coordinates()));
    return g;
  };
  const fgab::SubgroupBasis sub = basis(f.subgroup);
  Json result{{"ambient_normal_form", ambient_json(fgab::normalize(a).ambient)},
              {"quotient", ambient_json(fgab::quotient(sub).ambient)},
              {"simplified_generators", gens_json(fgab::simplify(sub))}};
  const fgab::MembershipOracle oracle(sub);
  Json members = Json::array();
  for (const auto& v : f.elements) {
    const auto w = oracle.witness(a.from_coordinates(v));
    members.push_back(Json{{"element", integers_json(v)}, {"member", w.has_value()},
                           {"witness", w ? integers_json(*w) : Json(nullptr)}});
  }
  result["membership"] = members;
  if (f.has_other) {
    const fgab::SubgroupBasis other = basis(f.other);
    result["intersection"] = gens_json(fgab::simplify(fgab::intersect(sub, other)));
    result["same_subgroup"] = fgab::same_subgroup(sub, other);
    result["subgroup_contains_other"] = fgab::contains_subgroup(sub, other);
    result["other_contains_subgroup"] = fgab::contains_subgroup(other, sub);
  }
  return Outcome{Json{{"result", result}, {"notes", inst.notes}}, true};
}

Json check_json(const std::string& name, bool passed, const std::vector<std::uint64_t>& expected,
                const std::vector<std::uint64_t>& computed) {
  return Json{{"name", name}, {"passed", passed}, {"expected", expected}, {"computed", computed}};
}

Outcome cmd_verify() {
  Json checks = Json::array();
  Json examples = Json::object();
  Json notes = Json::array();
  bool all = true;

  auto scan = [&](const std::string& name, const std::vector<std::uint64_t>& expected) {
    const Instance inst = builtin_instance(name);
    const Settings s = settings(inst);
    const Model m = build_model(inst);
    const auto r = compute_return_set(inst, m, s);
    const auto got = r.members();
    const bool ok = got == expected && !r.truncated;
    all = all && ok;
    checks.push_back(check_json(name + ": return set on [0, " + std::to_string(s.params.n_max) + "]", ok, expected, got));
    Json ex{{"parameters", parameters_json(s)}, {"result", result_json(r)}};
    Json local_notes = Json::array();
    if (auto d = try_decompose(r.bitmap, s.params, local_notes)) ex["result"]["decomposition"] = decomposition_json(*d);
    examples[name] = ex;
    for (const auto& n : inst.notes) notes.push_back(n);
    for (const auto& n : local_notes) notes.push_back(name + ": " + n.get<std::string>());
  };

  auto minus_one_powers = [](std::uint64_t base, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 1; q - 1 <= bound; q *= base) out.push_back(q - 1);
    return out;
  };
  scan("example1", minus_one_powers(2, 4095));
  scan("example2-p2", minus_one_powers(2, 256));
  scan("example2-p3", minus_one_powers(3, 243));

  for (const std::string name : {"example2-p2", "example2-p3"}) {
    const Instance inst = builtin_instance(name);
    const Model m = build_model(inst);
    const FieldSpec f = inst.field;
    dynamics::TorusIterator it(*m.torus_map, m.alpha.torus);
    std::optional<std::uint64_t> bad;
    Scalar tpow = Scalar::t(f);
    for (std::uint64_t n = 0; n <= 200; ++n) {
      if (!(it.point()[0].value() == tpow + Scalar::one(f)) && !bad) bad = n;
      if (n < 200) it.advance();
      tpow = tpow * Scalar::t(f);
    }
    all = all && !bad;
    Json c{{"name", name + ": n-th iterate equals t^(n+1) + 1 for n <= 200"}, {"passed", !bad}};
    if (bad) c["first_failure"] = *bad;
    checks.push_back(c);
  }
  return Outcome{Json{{"checks", checks}, {"examples", examples}, {"notes", notes}}, all};
}

// ---------------------------------------------------------------------------
// Text rendering

void render(std::ostringstream& os, const Json& j, const std::string& indent) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = j.is_array() ? "-" : k + ":";
    if (v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()))) {
      os << indent << key << "\n";
      render(os, v, indent + "  ");
    } else if (v.is_array()) {
      os << indent << key;
      for (const auto& x : v) os << " " << (x.is_string() ? x.get<std::string>() : x.dump());
      os << "\n";
    } else {
      os << indent << key << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void apply_overrides(Instance& inst, const RunOptions& o) {
  if (o.n_max) inst.analysis.n_max = *o.n_max;
  if (o.k_max) inst.analysis.k_max = *o.k_max;
  if (o.burn_in) inst.analysis.burn_in = *o.burn_in;
  if (o.seed) inst.analysis.seed = *o.seed;
  if (o.height_cap_bits) inst.analysis.height_cap_bits = *o.height_cap_bits;
  if (inst.analysis.n_max == 0 || inst.analysis.n_max > (std::uint64_t{1} << 24))
    throw InputError("n_max must lie in [1, 2^24]");
  if (inst.analysis.k_max == 0 || inst.analysis.k_max > 10000) throw InputError("k_max must lie in [1, 10000]");
}

}  // namespace

RunResult failure(std::exception_ptr error) {
  RunResult out;
  try {
    std::rethrow_exception(error);
  } catch (const UndefinedOrbit& e) {
    out.exit_code = kUndefinedOrbit;
    out.error = std::string("undefined orbit: ") + e.what();
  } catch (const InputError& e) {
    out.exit_code = kParse;
    out.error = e.what();
  } catch (const Json::exception& e) {
    out.exit_code = kParse;
    out.error = e.what();
  } catch (const ResourceExceeded& e) {
    out.exit_code = kResource;
    out.error = std::string("resource bound exceeded: ") + e.what();
  } catch (const std::bad_alloc&) {
    out.exit_code = kResource;
    out.error = "resource bound exceeded: out of memory";
  } catch (const InvariantViolation& e) {
    out.exit_code = kInvariant;
    out.error = std::string("internal check failed: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = kInvariant;
    out.error = std::string("internal error: ") + e.what();
  } catch (...) {
    out.exit_code = kInvariant;
    out.error = "internal error";
  }
  return out;
}

std::string builtin_instance_json(const std::string& name) { return to_json(builtin_instance(name)).dump(2) + "\n"; }

RunResult run(const std::string& command, const std::optional<std::string>& instance_text, const RunOptions& options) {
  RunResult out;
  const auto started = std::chrono::steady_clock::now();
  try {
    Outcome outcome;
    Json echo;
    if (command == "verify-paper-examples") {
      outcome = cmd_verify();
    } else if (command == "analyze" || command == "zeroset" || command == "pipeline" || command == "fgab") {
      if (!instance_text) throw InputError("the " + command + " command needs an instance");
      Instance inst = parse_instance(*instance_text);
      apply_overrides(inst, options);
      echo = to_json(inst);
      if (command == "analyze") outcome = cmd_analyze(inst);
      else if (command == "zeroset") outcome = cmd_zeroset(inst);
      else if (command == "pipeline") outcome = cmd_pipeline(inst);
      else outcome = cmd_fgab(inst);
    } else {
      throw InputError("unknown command '" + command +
                       "' (expected analyze, zeroset, pipeline, verify-paper-examples or fgab)");
    }
    Json report{{"schema", kReportSchema}, {"command", command}};
    if (!echo.is_null()) report["instance"] = echo;
    for (const auto& [k, v] : outcome.body.items()) report[k] = v;
    report["status"] = outcome.checks_passed ? "ok" : "check_failed";
    if (options.timings) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      report["timings"] = Json{{"total_ms", ms}};
    }
    if (options.format == Format::Json) {
      out.report = report.dump(2) + "\n";
    } else {
      std::ostringstream os;
      render(os, report, "");
      out.report = os.str();
    }
    if (!outcome.checks_passed) {
      out.exit_code = kInvariant;
      out.error = "one or more checks failed; see the report";
    }
  } catch (...) {
    return failure(std::current_exception());
  }
  return out;
}

}  // namespace semiab::cli
