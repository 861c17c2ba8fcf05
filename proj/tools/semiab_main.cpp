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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "semiab/semiab.h"

namespace {

struct ContextDeleter {
  void operator()(semiab_context* c) const { semiab_context_free(c); }
};

// A readable file wins over a built-in name.
std::optional<std::string> load_instance(semiab_context* ctx, const std::string& source, std::string& error) {
  std::ifstream in(source, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  char* text = nullptr;
  if (semiab_builtin_instance(ctx, source.c_str(), &text) != SEMIAB_OK) {
    error = "cannot read instance '" + source + "': no such file and " + semiab_last_error(ctx);
    return std::nullopt;
  }
  std::string out(text);
  semiab_string_free(text);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Return sets of self-maps of split semiabelian models"};
  app.set_version_flag("--version", std::string(semiab_version()));

  std::string command;
  std::string instance;
  std::optional<std::string> n_max, k_max, burn_in, seed, height_cap;
  std::string output;
  std::string format = "json";
  bool timings = false;

  app.add_option("command", command, "analyze, zeroset, pipeline, fgab or verify-paper-examples")
      ->required()
      ->check(CLI::IsMember({"analyze", "zeroset", "pipeline", "fgab", "verify-paper-examples"}));
  app.add_option("--instance", instance, "Instance JSON file, or example1, example2-p2, example2-p3");
  app.add_option("--n-max", n_max, "Scan bound for return sets");
  app.add_option("--k-max", k_max, "Largest progression modulus tried");
  app.add_option("--burn-in", burn_in, "Start of the periodic part");
  app.add_option("--seed", seed, "Seed for randomized factorization and checks");
  app.add_option("--height-cap-bits", height_cap, "Abort iteration above this height");
  app.add_option("--output", output, "Write the report here instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", timings, "Include wall-clock timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::unique_ptr<semiab_context, ContextDeleter> ctx(semiab_context_new());
  if (!ctx) {
    std::cerr << "error: out of memory\n";
    return SEMIAB_RESOURCE_EXCEEDED;
  }
  auto set = [&](const char* name, const std::optional<std::string>& v) {
    if (v && semiab_set_option(ctx.get(), name, v->c_str()) != SEMIAB_OK) {
      std::cerr << "error: " << semiab_last_error(ctx.get()) << "\n";
      return false;
    }
    return true;
  };
  if (!set("n_max", n_max) || !set("k_max", k_max) || !set("burn_in", burn_in) || !set("seed", seed) ||
      !set("height_cap_bits", height_cap) || !set("format", format) ||
      !set("timings", std::string(timings ? "1" : "0")))
    return SEMIAB_PARSE_ERROR;

  std::optional<std::string> text;
  if (!instance.empty()) {
    std::string error;
    text = load_instance(ctx.get(), instance, error);
    if (!text) {
      std::cerr << "error: " << error << "\n";
      return SEMIAB_PARSE_ERROR;
    }
  }

  char* report = nullptr;
  const semiab_status status = semiab_run(ctx.get(), command.c_str(), text ? text->c_str() : nullptr, &report);
  if (report) {
    if (output.empty()) {
      std::fputs(report, stdout);
    } else {
      std::ofstream out(output, std::ios::binary);
      out << report;
      if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        semiab_string_free(report);
        return SEMIAB_RESOURCE_EXCEEDED;
      }
    }
    semiab_string_free(report);
  }
  if (status != SEMIAB_OK) std::cerr << "error: " << semiab_last_error(ctx.get()) << "\n";
  return status;
}
