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

// Instance documents: the JSON input format shared by every command.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiab/fgab.hpp"
#include "semiab/lrs.hpp"
#include "semiab/semiabelian.hpp"

namespace semiab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "semiab.instance/1";
inline constexpr const char* kReportSchema = "semiab.report/1";

struct AnalysisParams {
  std::uint64_t n_max = 256;
  std::uint64_t k_max = 64;
  std::optional<std::uint64_t> burn_in;
  std::vector<std::uint64_t> window_lengths;
  std::size_t height_cap_bits = std::size_t{1} << 20;
  std::uint64_t seed = 0x5eed;
  bool perturbed = true;
};

struct PointSpec {
  std::vector<std::string> torus;
  IntVector base;
};

struct AffineSpec {
  IntMatrix matrix;
  IntVector translation;
};

struct FgabSpec {
  fgab::FgAmbient ambient;
  std::vector<IntVector> subgroup;
  std::vector<IntVector> other;
  bool has_other = false;
  std::vector<IntVector> elements;
};

struct Instance {
  std::string name;
  FieldSpec field;
  std::size_t torus_rank = 0;
  fgab::FgAmbient abelian;
  std::vector<std::string> torus_map;
  std::optional<AffineSpec> base_map;
  std::optional<PointSpec> alpha;
  std::vector<PointSpec> gamma;
  std::optional<lrs::IntegerLRS> lrs;
  std::optional<FgabSpec> fgab;
  std::vector<std::string> notes;
  AnalysisParams analysis;
};

/// "Q" or "F_p(t)"; throws InputError otherwise.
FieldSpec parse_field(const std::string& text);

/// Throws ParseError for malformed JSON and InputError for schema violations.
Instance parse_instance(const std::string& text);
Json to_json(const Instance& inst);

/// example1, example2-p2, example2-p3.
std::vector<std::string> builtin_names();
/// Throws InputError for an unknown name.
Instance builtin_instance(const std::string& name);

/// The model, map and points of an instance, parsed and checked.
struct Model {
  semiabelian::SplitModel model;
  std::optional<dynamics::RationalTorusMap> torus_map;
  dynamics::AffineSelfMap base_map;
  semiabelian::ModelPoint alpha;
  std::vector<semiabelian::ModelPoint> gamma;
};

/// Throws InputError when a part needed for dynamics is missing or inconsistent.
Model build_model(const Instance& inst);

std::string integer_string(const Integer& z);
Json integers_json(const IntVector& v);

}  // namespace semiab::cli
