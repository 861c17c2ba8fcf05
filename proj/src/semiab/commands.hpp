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

// Command dispatch and report documents.

#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>

namespace semiab::cli {

enum class Format { Json, Text };

/// Values that replace the corresponding analysis settings of the instance.
struct RunOptions {
  std::optional<std::uint64_t> n_max;
  std::optional<std::uint64_t> k_max;
  std::optional<std::uint64_t> burn_in;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> height_cap_bits;
  Format format = Format::Json;
  /// Adds wall-clock timings, which makes reports differ between runs.
  bool timings = false;
};

/// 0 success, 1 parse or schema error, 2 undefined orbit, 3 resource bound
/// exceeded, 4 failed internal check.
enum ExitCode : int { kOk = 0, kParse = 1, kUndefinedOrbit = 2, kResource = 3, kInvariant = 4 };

struct RunResult {
  int exit_code = kOk;
  /// Empty when the command failed before producing a report.
  std::string report;
  std::string error;
};

/// analyze, zeroset, pipeline, verify-paper-examples, fgab. The instance is
/// a JSON document; verify-paper-examples ignores it.
RunResult run(const std::string& command, const std::optional<std::string>& instance, const RunOptions& options);

/// Exit code and message for an exception escaping a command.
RunResult failure(std::exception_ptr error);

/// The JSON text of a built-in instance.
std::string builtin_instance_json(const std::string& name);

}  // namespace semiab::cli
