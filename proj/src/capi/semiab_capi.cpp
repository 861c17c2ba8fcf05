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

#include "semiab/semiab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "semiab/commands.hpp"
#include "semiab/error.hpp"
#include "semiab/expr.hpp"
#include "semiab/instance.hpp"
#include "semiab/int_matrix.hpp"

struct semiab_context {
  semiab::cli::RunOptions options;
  std::string last_error;
};

namespace {

using semiab::cli::Json;

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

semiab_status fail(semiab_context* ctx, semiab_status status, const std::string& message) {
  if (ctx) ctx->last_error = message;
  return status;
}

std::uint64_t parse_unsigned(const char* name, const char* value) {
  const std::string s = value ? value : "";
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos)
    throw semiab::InputError(std::string("option ") + name + ": expected an unsigned integer, got '" + s + "'");
  return std::stoull(s);
}

// Maps library exceptions onto status codes.
template <class F>
semiab_status guarded(semiab_context* ctx, F&& body) {
  if (!ctx) return SEMIAB_INTERNAL_ERROR;
  try {
    body();
    ctx->last_error.clear();
    return SEMIAB_OK;
  } catch (...) {
    const auto f = semiab::cli::failure(std::current_exception());
    return fail(ctx, static_cast<semiab_status>(f.exit_code), f.error);
  }
}

semiab::Integer json_integer(const Json& j) {
  if (j.is_number_integer()) return semiab::Integer(j.dump());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t digits = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > digits && s.find_first_not_of("0123456789", digits) == std::string::npos)
      return semiab::Integer(s);
  }
  throw semiab::InputError("matrix entries must be integers or decimal strings, got " + j.dump());
}

Json matrix_to_json(const semiab::IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

extern "C" {

semiab_context* semiab_context_new(void) { return new (std::nothrow) semiab_context(); }

void semiab_context_free(semiab_context* ctx) { delete ctx; }

semiab_status semiab_set_option(semiab_context* ctx, const char* name, const char* value) {
  return guarded(ctx, [&] {
    const std::string key = name ? name : "";
    auto& o = ctx->options;
    if (key == "n_max") o.n_max = parse_unsigned(name, value);
    else if (key == "k_max") o.k_max = parse_unsigned(name, value);
    else if (key == "burn_in") o.burn_in = parse_unsigned(name, value);
    else if (key == "seed") o.seed = parse_unsigned(name, value);
    else if (key == "height_cap_bits") o.height_cap_bits = parse_unsigned(name, value);
    else if (key == "timings") o.timings = parse_unsigned(name, value) != 0;
    else if (key == "format") {
      const std::string v = value ? value : "";
      if (v == "json") o.format = semiab::cli::Format::Json;
      else if (v == "text") o.format = semiab::cli::Format::Text;
      else throw semiab::InputError("option format: expected json or text, got '" + v + "'");
    } else {
      throw semiab::InputError("unknown option '" + key + "'");
    }
  });
}

semiab_status semiab_run(semiab_context* ctx, const char* command, const char* instance_json, char** report) {
  if (!ctx || !report) return SEMIAB_INTERNAL_ERROR;
  *report = nullptr;
  if (!command) return fail(ctx, SEMIAB_PARSE_ERROR, "no command given");
  std::optional<std::string> instance;
  if (instance_json) instance = instance_json;
  const auto result = semiab::cli::run(command, instance, ctx->options);
  if (!result.report.empty()) *report = copy_out(result.report);
  ctx->last_error = result.error;
  return static_cast<semiab_status>(result.exit_code);
}

const char* semiab_last_error(const semiab_context* ctx) { return ctx ? ctx->last_error.c_str() : "no context"; }

void semiab_string_free(char* s) { std::free(s); }

semiab_status semiab_parse_expression(semiab_context* ctx, const char* text, size_t nvars, const char* field,
                                      char** normalized) {
  if (normalized) *normalized = nullptr;
  return guarded(ctx, [&] {
    if (!text || !field || !normalized) throw semiab::InputError("null argument");
    const auto f = semiab::expr::parse_expression(text, nvars, semiab::cli::parse_field(field));
    *normalized = copy_out(semiab::expr::unparse(f));
  });
}

semiab_status semiab_snf(semiab_context* ctx, const char* matrix_json, char** result_json) {
  if (result_json) *result_json = nullptr;
  return guarded(ctx, [&] {
    if (!matrix_json || !result_json) throw semiab::InputError("null argument");
    const Json j = Json::parse(matrix_json);
    if (!j.is_array()) throw semiab::InputError("expected an array of rows");
    const std::size_t cols = j.empty() ? 0 : j.front().size();
    std::vector<semiab::IntVector> rows;
    for (const auto& r : j) {
      if (!r.is_array() || r.size() != cols) throw semiab::InputError("matrix rows must be arrays of equal length");
      semiab::IntVector row;
      for (const auto& x : r) row.push_back(json_integer(x));
      rows.push_back(std::move(row));
    }
    const auto snf = semiab::smith_normal_form(semiab::IntMatrix::from_rows(rows, cols));
    Json out{{"U", matrix_to_json(snf.U)},
             {"D", matrix_to_json(snf.D)},
             {"V", matrix_to_json(snf.V)},
             {"rank", snf.rank},
             {"invariant_factors", semiab::cli::integers_json(snf.invariant_factors())}};
    *result_json = copy_out(out.dump());
  });
}

semiab_status semiab_builtin_instance(semiab_context* ctx, const char* name, char** instance_json) {
  if (instance_json) *instance_json = nullptr;
  return guarded(ctx, [&] {
    if (!name || !instance_json) throw semiab::InputError("null argument");
    *instance_json = copy_out(semiab::cli::builtin_instance_json(name));
  });
}

const char* semiab_version(void) { return "1.0.0"; }

}  // extern "C"
