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

#include "semiab/instance.hpp"

#include <set>

#include "semiab/error.hpp"
#include "semiab/expr.hpp"

namespace semiab::cli {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) schema_error(path, "unknown key '" + k + "'");
}

Integer get_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()), 10);
    return Integer(std::to_string(j.get<std::int64_t>()), 10);
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t digits = s.size() - (!s.empty() && s[0] == '-');
    if (digits == 0 || s.find_first_not_of("0123456789", s.size() - digits) != std::string::npos)
      schema_error(path, "expected a decimal integer string, got \"" + s + "\"");
    return Integer(s, 10);
  }
  schema_error(path, "expected an integer");
}

std::uint64_t get_u64(const Json& j, const std::string& path) {
  const Integer z = get_integer(j, path);
  if (z < 0 || bit_length(z) > 63) schema_error(path, "expected a nonnegative integer below 2^63");
  return std::stoull(z.get_str());
}

IntVector get_integers(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<IntVector> get_integer_rows(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of integer arrays");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_integers(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

FieldSpec get_field(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected \"Q\" or \"F_p(t)\"");
  const auto& s = j.get_ref<const std::string&>();
  if (s == "Q") return FieldSpec::rationals();
  if (s.size() > 5 && s.rfind("F_", 0) == 0 && s.substr(s.size() - 3) == "(t)") {
    const std::string p = s.substr(2, s.size() - 5);
    if (!p.empty() && p.size() <= 10 && p.find_first_not_of("0123456789") == std::string::npos)
      return FieldSpec::function_field(std::stoull(p));
  }
  schema_error(path, "expected \"Q\" or \"F_p(t)\", got \"" + s + "\"");
}

fgab::FgAmbient get_ambient(const Json& j, const std::string& path) {
  only_keys(j, path, {"free_rank", "torsion"});
  const std::uint64_t r = j.contains("free_rank") ? get_u64(j["free_rank"], path + ".free_rank") : 0;
  const IntVector t = j.contains("torsion") ? get_integers(j["torsion"], path + ".torsion") : IntVector{};
  for (const auto& d : t)
    if (d < 2) schema_error(path + ".torsion", "orders must be at least 2");
  return fgab::FgAmbient(r, t);
}

Json ambient_json(const fgab::FgAmbient& a) {
  return Json{{"free_rank", a.free_rank()}, {"torsion", integers_json(a.torsion_orders())}};
}

PointSpec get_point(const Json& j, const std::string& path) {
  only_keys(j, path, {"torus", "base"});
  PointSpec p;
  if (j.contains("torus")) p.torus = get_strings(j["torus"], path + ".torus");
  if (j.contains("base")) p.base = get_integers(j["base"], path + ".base");
  return p;
}

Json point_json(const PointSpec& p) { return Json{{"torus", p.torus}, {"base", integers_json(p.base)}}; }

AnalysisParams get_analysis(const Json& j, const std::string& path) {
  only_keys(j, path, {"n_max", "k_max", "burn_in", "window_lengths", "height_cap_bits", "seed", "perturbed"});
  AnalysisParams a;
  if (j.contains("n_max")) a.n_max = get_u64(j["n_max"], path + ".n_max");
  if (j.contains("k_max")) a.k_max = get_u64(j["k_max"], path + ".k_max");
  if (j.contains("burn_in")) a.burn_in = get_u64(j["burn_in"], path + ".burn_in");
  if (j.contains("window_lengths")) {
    for (const auto& v : get_integers(j["window_lengths"], path + ".window_lengths")) {
      if (v < 1 || bit_length(v) > 62) schema_error(path + ".window_lengths", "lengths must be positive");
      a.window_lengths.push_back(v.get_ui());
    }
  }
  if (j.contains("height_cap_bits")) a.height_cap_bits = get_u64(j["height_cap_bits"], path + ".height_cap_bits");
  if (j.contains("seed")) a.seed = get_u64(j["seed"], path + ".seed");
  if (j.contains("perturbed")) {
    if (!j["perturbed"].is_boolean()) schema_error(path + ".perturbed", "expected true or false");
    a.perturbed = j["perturbed"].get<bool>();
  }
  if (a.n_max == 0 || a.n_max > (std::uint64_t{1} << 24)) schema_error(path + ".n_max", "must lie in [1, 2^24]");
  if (a.k_max == 0 || a.k_max > 10000) schema_error(path + ".k_max", "must lie in [1, 10000]");
  return a;
}

Json analysis_json(const AnalysisParams& a) {
  Json j{{"n_max", a.n_max}, {"k_max", a.k_max}};
  if (a.burn_in) j["burn_in"] = *a.burn_in;
  if (!a.window_lengths.empty()) j["window_lengths"] = a.window_lengths;
  j["height_cap_bits"] = a.height_cap_bits;
  j["seed"] = a.seed;
  j["perturbed"] = a.perturbed;
  return j;
}

}  // namespace

FieldSpec parse_field(const std::string& text) { return get_field(Json(text), "field"); }

std::string integer_string(const Integer& z) { return z.get_str(); }

Json integers_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& z : v) j.push_back(integer_string(z));
  return j;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  only_keys(j, "$", {"schema", "name", "field", "model", "map", "alpha", "gamma", "lrs", "fgab", "notes", "analysis"});
  if (!j.contains("schema") || j["schema"] != kInstanceSchema)
    schema_error("$.schema", std::string("expected \"") + kInstanceSchema + "\"");

  Instance inst;
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error("$.name", "expected a string");
    inst.name = j["name"].get<std::string>();
  }
  if (j.contains("field")) inst.field = get_field(j["field"], "$.field");
  if (j.contains("model")) {
    const Json& m = j["model"];
    only_keys(m, "$.model", {"torus_rank", "abelian"});
    if (m.contains("torus_rank")) inst.torus_rank = get_u64(m["torus_rank"], "$.model.torus_rank");
    if (m.contains("abelian")) inst.abelian = get_ambient(m["abelian"], "$.model.abelian");
    if (inst.torus_rank > 16) schema_error("$.model.torus_rank", "at most 16 torus coordinates are supported");
  }
  if (j.contains("map")) {
    const Json& m = j["map"];
    only_keys(m, "$.map", {"torus", "base"});
    if (m.contains("torus")) inst.torus_map = get_strings(m["torus"], "$.map.torus");
    if (m.contains("base")) {
      only_keys(m["base"], "$.map.base", {"matrix", "translation"});
      AffineSpec a;
      const auto rows = m["base"].contains("matrix") ? get_integer_rows(m["base"]["matrix"], "$.map.base.matrix")
                                                     : std::vector<IntVector>{};
      const std::size_t d = inst.abelian.dimension();
      if (rows.size() != d) schema_error("$.map.base.matrix", "expected " + std::to_string(d) + " rows");
      for (const auto& r : rows)
        if (r.size() != d) schema_error("$.map.base.matrix", "expected rows of length " + std::to_string(d));
      a.matrix = IntMatrix::from_rows(rows, d);
      a.translation = m["base"].contains("translation")
                          ? get_integers(m["base"]["translation"], "$.map.base.translation")
                          : IntVector(d);
      if (a.translation.size() != d) schema_error("$.map.base.translation", "expected " + std::to_string(d) + " entries");
      inst.base_map = std::move(a);
    }
  }
  if (j.contains("alpha")) inst.alpha = get_point(j["alpha"], "$.alpha");
  if (j.contains("gamma")) {
    if (!j["gamma"].is_array()) schema_error("$.gamma", "expected an array of points");
    for (std::size_t i = 0; i < j["gamma"].size(); ++i)
      inst.gamma.push_back(get_point(j["gamma"][i], "$.gamma[" + std::to_string(i) + "]"));
  }
  if (j.contains("lrs")) {
    only_keys(j["lrs"], "$.lrs", {"coefficients", "initial"});
    lrs::IntegerLRS s;
    if (j["lrs"].contains("coefficients")) s.coefficients = get_integers(j["lrs"]["coefficients"], "$.lrs.coefficients");
    if (j["lrs"].contains("initial")) s.initial = get_integers(j["lrs"]["initial"], "$.lrs.initial");
    if (s.coefficients.empty() || s.coefficients.size() != s.initial.size())
      schema_error("$.lrs", "coefficients and initial terms must be nonempty and of equal length");
    inst.lrs = std::move(s);
  }
  if (j.contains("fgab")) {
    const Json& f = j["fgab"];
    only_keys(f, "$.fgab", {"ambient", "subgroup", "other", "elements"});
    FgabSpec s;
    if (!f.contains("ambient")) schema_error("$.fgab", "missing key 'ambient'");
    s.ambient = get_ambient(f["ambient"], "$.fgab.ambient");
    auto rows = [&](const char* key) {
      if (!f.contains(key)) return std::vector<IntVector>{};
      auto r = get_integer_rows(f[key], std::string("$.fgab.") + key);
      for (const auto& v : r)
        if (v.size() != s.ambient.dimension())
          schema_error(std::string("$.fgab.") + key, "vectors must have " + std::to_string(s.ambient.dimension()) +
                                                         " coordinates");
      return r;
    };
    s.subgroup = rows("subgroup");
    s.has_other = f.contains("other");
    s.other = rows("other");
    s.elements = rows("elements");
    inst.fgab = std::move(s);
  }
  if (j.contains("notes")) inst.notes = get_strings(j["notes"], "$.notes");
  if (j.contains("analysis")) inst.analysis = get_analysis(j["analysis"], "$.analysis");
  return inst;
}

Json to_json(const Instance& inst) {
  Json j{{"schema", kInstanceSchema}};
  if (!inst.name.empty()) j["name"] = inst.name;
  j["field"] = inst.field.to_string();
  j["model"] = Json{{"torus_rank", inst.torus_rank}, {"abelian", ambient_json(inst.abelian)}};
  Json map = Json::object();
  map["torus"] = inst.torus_map;
  if (inst.base_map) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < inst.base_map->matrix.rows(); ++r) rows.push_back(integers_json(inst.base_map->matrix.row(r)));
    map["base"] = Json{{"matrix", rows}, {"translation", integers_json(inst.base_map->translation)}};
  }
  j["map"] = map;
  if (inst.alpha) j["alpha"] = point_json(*inst.alpha);
  Json gamma = Json::array();
  for (const auto& g : inst.gamma) gamma.push_back(point_json(g));
  j["gamma"] = gamma;
  if (inst.lrs)
    j["lrs"] = Json{{"coefficients", integers_json(inst.lrs->coefficients)}, {"initial", integers_json(inst.lrs->initial)}};
  if (inst.fgab) {
    auto rows = [](const std::vector<IntVector>& vs) {
      Json a = Json::array();
      for (const auto& v : vs) a.push_back(integers_json(v));
      return a;
    };
    Json f{{"ambient", ambient_json(inst.fgab->ambient)}, {"subgroup", rows(inst.fgab->subgroup)}};
    if (inst.fgab->has_other) f["other"] = rows(inst.fgab->other);
    f["elements"] = rows(inst.fgab->elements);
    j["fgab"] = f;
  }
  if (!inst.notes.empty()) j["notes"] = inst.notes;
  j["analysis"] = analysis_json(inst.analysis);
  return j;
}

std::vector<std::string> builtin_names() { return {"example1", "example2-p2", "example2-p3"}; }

Instance builtin_instance(const std::string& name) {
  Instance inst;
  inst.name = name;
  inst.torus_rank = 1;
  if (name == "example1") {
    inst.field = FieldSpec::rationals();
    inst.torus_map = {"x1 + 1"};
    inst.alpha = PointSpec{{"1"}, {}};
    inst.gamma = {PointSpec{{"2"}, {}}};
    inst.analysis.n_max = 4095;
    inst.notes.push_back(
        "discrepancy: the published statement of this example displays the return set as {0} ∪ {2^n : n >= 0}; "
        "the n-th iterate of 1 is n + 1, so the computed return set is {2^k - 1 : k >= 0}");
    return inst;
  }
  if (name == "example2-p2" || name == "example2-p3") {
    const std::uint64_t p = name.back() == '2' ? 2 : 3;
    inst.field = FieldSpec::function_field(p);
    inst.torus_map = {"t*x1 - t + 1"};
    inst.alpha = PointSpec{{"t + 1"}, {}};
    inst.gamma = {PointSpec{{"t + 1"}, {}}};
    inst.analysis.n_max = p == 2 ? 256 : 243;
    return inst;
  }
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown built-in instance '" + name + "' (known: " + known + ")");
}

Model build_model(const Instance& inst) {
  const std::size_t n = inst.torus_rank;
  const std::size_t d = inst.abelian.dimension();
  mulgroup::FactorOptions fo;
  fo.seed = inst.analysis.seed;
  fo.integer.seed = inst.analysis.seed;

  if (inst.torus_map.size() != n)
    throw InputError("$.map.torus: expected " + std::to_string(n) + " coordinate expressions, got " +
                     std::to_string(inst.torus_map.size()));
  auto point = [&](const PointSpec& p, const std::string& path) {
    if (p.torus.size() != n)
      throw InputError(path + ".torus: expected " + std::to_string(n) + " coordinates, got " +
                       std::to_string(p.torus.size()));
    if (p.base.size() != d)
      throw InputError(path + ".base: expected " + std::to_string(d) + " coordinates, got " +
                       std::to_string(p.base.size()));
    semiabelian::ModelPoint out;
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar v = expr::parse_constant(p.torus[i], inst.field);
      if (v.is_zero()) throw InputError(path + ".torus[" + std::to_string(i) + "]: coordinate must be nonzero");
      out.torus.push_back(mulgroup::factor(v, inst.field, fo));
    }
    out.base = inst.abelian.from_coordinates(p.base);
    return out;
  };

  Model m{semiabelian::SplitModel{inst.field, n, inst.abelian}, std::nullopt, {}, {}, {}};
  if (n > 0) {
    std::vector<RationalFunction> coords;
    for (const auto& s : inst.torus_map) coords.push_back(expr::parse_expression(s, n, inst.field));
    m.torus_map = dynamics::RationalTorusMap(inst.field, std::move(coords));
  }
  const AffineSpec base = inst.base_map.value_or(AffineSpec{IntMatrix::identity(d), IntVector(d)});
  m.base_map = dynamics::AffineSelfMap(fgab::GroupHom(inst.abelian, inst.abelian, base.matrix),
                                       inst.abelian.from_coordinates(base.translation));
  if (!inst.alpha) throw InputError("$.alpha: missing starting point");
  m.alpha = point(*inst.alpha, "$.alpha");
  for (std::size_t i = 0; i < inst.gamma.size(); ++i)
    m.gamma.push_back(point(inst.gamma[i], "$.gamma[" + std::to_string(i) + "]"));
  if (n == 0 && d == 0) throw InputError("$.model: the model has no coordinates");
  return m;
}

}  // namespace semiab::cli
