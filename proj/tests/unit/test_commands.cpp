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

#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiab/commands.hpp"
#include "semiab/error.hpp"

using namespace semiab;
using semiab::cli::RunOptions;
using semiab::cli::run;
using Json = nlohmann::ordered_json;

namespace {

const char* kUndefined = R"({"schema":"semiab.instance/1","field":"Q","model":{"torus_rank":1},
  "map":{"torus":["x1 - 1"]},"alpha":{"torus":["2"]},"gamma":[{"torus":["2"]}],"analysis":{"n_max":10}})";

const char* kTall = R"({"schema":"semiab.instance/1","field":"Q","model":{"torus_rank":1},
  "map":{"torus":["x1^2 + 1"]},"alpha":{"torus":["3"]},"gamma":[{"torus":["2"]}],
  "analysis":{"n_max":40,"height_cap_bits":64}})";

const char* kMixed = R"({"schema":"semiab.instance/1","field":"Q",
  "model":{"torus_rank":1,"abelian":{"free_rank":1,"torsion":[4]}},
  "map":{"torus":["2*x1^3"],"base":{"matrix":[[1,0],[1,1]],"translation":[1,0]}},
  "alpha":{"torus":["3"],"base":[0,1]},
  "gamma":[{"torus":["6"],"base":[1,2]},{"torus":["2"],"base":[0,0]}],
  "analysis":{"n_max":120}})";

const char* kLrs = R"({"schema":"semiab.instance/1","lrs":{"coefficients":[1,-1],"initial":[0,1]},
  "analysis":{"n_max":60}})";

const char* kFgab = R"({"schema":"semiab.instance/1","fgab":{"ambient":{"free_rank":2,"torsion":[6]},
  "subgroup":[[2,0,3],[0,2,0]],"other":[[1,0,0]],"elements":[[4,2,0],[1,0,0],[2,0,3]]}})";

std::string builtin(const std::string& name) { return cli::builtin_instance_json(name); }

Json report(const cli::RunResult& r) {
  REQUIRE(!r.report.empty());
  return Json::parse(r.report);
}

}  // namespace

TEST_CASE("analyze Example 2 over F_2(t)") {
  const auto r = run("analyze", builtin("example2-p2"), {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  CHECK(j["schema"] == "semiab.report/1");
  CHECK(j["instance"]["name"] == "example2-p2");
  CHECK(j["result"]["return_set"]["members"] == Json::array({0, 1, 3, 7, 15, 31, 63, 127, 255}));
  CHECK(j["result"]["decomposition"]["aps"].empty());
  CHECK(j["result"]["decomposition"]["residual"]["count"] == 9);
  CHECK(j["result"]["decomposition"]["sparse_threshold"] == "1/50");
  CHECK(j["result"]["decomposition"]["dense_threshold"] == "1/4");
  CHECK(j["status"] == "ok");
}

TEST_CASE("analyze with a monomial map and a torsion base is exact") {
  const auto r = run("analyze", std::string(kMixed), {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  CHECK(j["result"]["kind"] == "exact");
  CHECK(j["result"].contains("exact_decomposition"));
}

TEST_CASE("command-line overrides replace instance settings") {
  RunOptions o;
  o.n_max = 64;
  const Json j = report(run("analyze", builtin("example2-p2"), o));
  CHECK(j["parameters"]["n_max"] == 64);
  CHECK(j["result"]["return_set"]["members"] == Json::array({0, 1, 3, 7, 15, 31, 63}));
  o.n_max = 0;
  CHECK(run("analyze", builtin("example2-p2"), o).exit_code == cli::kParse);
}

TEST_CASE("zeroset reports progressions") {
  const auto r = run("zeroset", std::string(kLrs), {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  REQUIRE(j["result"]["progressions"].size() == 1);
  CHECK(j["result"]["progressions"][0]["modulus"] == 3);
  CHECK(j["result"]["progressions"][0]["residue"] == 0);
  CHECK(j["result"]["members"]["count"] == 21);
}

TEST_CASE("pipeline records every assertion") {
  const auto r = run("pipeline", std::string(kMixed), {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  CHECK(j["assertions"].size() >= 9);
  for (const auto& a : j["assertions"]) {
    CAPTURE(a.dump());
    CHECK(a["passed"] == true);
  }
  REQUIRE(j["result"].contains("perturbed"));
  const auto members = [](const Json& b) { return b["members"].get<std::vector<int>>(); };
  const auto returns = members(j["result"]["r"]);
  const auto r1 = members(j["result"]["r1"]);
  const auto r1_prime = members(j["result"]["perturbed"]["r1_prime"]);
  std::vector<int> both;
  std::set_intersection(r1.begin(), r1.end(), r1_prime.begin(), r1_prime.end(), std::back_inserter(both));
  CHECK(returns == both);
}

TEST_CASE("fgab utilities") {
  const auto r = run("fgab", std::string(kFgab), {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  CHECK(j["result"]["ambient_normal_form"]["torsion"] == Json::array({"6"}));
  const auto& m = j["result"]["membership"];
  CHECK(m[0]["member"] == true);
  CHECK(m[1]["member"] == false);
  CHECK(m[2]["member"] == true);
  CHECK(j["result"]["same_subgroup"] == false);
}

TEST_CASE("built-in example verification passes with the Example 1 note") {
  const auto r = run("verify-paper-examples", std::nullopt, {});
  REQUIRE(r.exit_code == cli::kOk);
  const Json j = report(r);
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
  bool noted = false;
  for (const auto& n : j["notes"]) noted = noted || n.get<std::string>().find("displays the return set as {0} ∪ {2^n") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("exit code 1: malformed JSON reports its position") {
  const auto r = run("analyze", std::string("{\"schema\": \"semiab.instance/1\",, }"), {});
  CHECK(r.exit_code == cli::kParse);
  CHECK(r.report.empty());
  CHECK(r.error.find("position 31") != std::string::npos);
}

TEST_CASE("exit code 1: schema violations") {
  const std::string unknown_key = R"({"schema":"semiab.instance/1","bogus":1})";
  const std::string wrong_schema = R"({"schema":"other/1"})";
  const std::string bad_field = R"j({"schema":"semiab.instance/1","field":"F_4(t)"})j";
  const std::string bad_expr = R"({"schema":"semiab.instance/1","field":"Q",
    "model":{"torus_rank":1},"map":{"torus":["x1 + y"]},"alpha":{"torus":["1"]}})";
  CHECK(run("analyze", unknown_key, {}).exit_code == cli::kParse);
  CHECK(run("analyze", wrong_schema, {}).exit_code == cli::kParse);
  CHECK(run("analyze", bad_field, {}).exit_code == cli::kParse);
  CHECK(run("analyze", std::nullopt, {}).exit_code == cli::kParse);
  CHECK(run("zeroset", builtin("example1"), {}).exit_code == cli::kParse);
  CHECK(run("frobnicate", builtin("example1"), {}).exit_code == cli::kParse);
  const auto r = run("analyze", bad_expr, {});
  CHECK(r.exit_code == cli::kParse);
  CHECK(r.error.find("position 5") != std::string::npos);
}

TEST_CASE("exit code 2: undefined orbit") {
  const auto r = run("analyze", std::string(kUndefined), {});
  CHECK(r.exit_code == cli::kUndefinedOrbit);
  CHECK(r.error.find("step 2") != std::string::npos);
  CHECK(run("pipeline", std::string(kUndefined), {}).exit_code == cli::kUndefinedOrbit);
}

TEST_CASE("exit code 3: height cap") {
  const auto r = run("pipeline", std::string(kTall), {});
  CHECK(r.exit_code == cli::kResource);
  CHECK(r.error.find("height cap") != std::string::npos);
  // analyze truncates instead and says so.
  const Json j = report(run("analyze", std::string(kTall), {}));
  CHECK(j["result"]["truncated"] == true);
  CHECK(!j["notes"].empty());
}

TEST_CASE("exit code 4: failed internal checks") {
  const auto r = cli::failure(std::make_exception_ptr(InvariantViolation("broken")));
  CHECK(r.exit_code == cli::kInvariant);
  CHECK(r.error.find("broken") != std::string::npos);
  CHECK(cli::failure(std::make_exception_ptr(std::logic_error("x"))).exit_code == cli::kInvariant);
  CHECK(cli::failure(std::make_exception_ptr(std::bad_alloc())).exit_code == cli::kResource);
  CHECK(cli::failure(std::make_exception_ptr(ParseError("p", 3))).exit_code == cli::kParse);
}

TEST_CASE("reports are byte-stable") {
  for (const char* cmd : {"analyze", "pipeline"}) {
    const auto a = run(cmd, std::string(kMixed), {});
    const auto b = run(cmd, std::string(kMixed), {});
    CHECK(a.report == b.report);
  }
  RunOptions text;
  text.format = cli::Format::Text;
  CHECK(run("analyze", builtin("example2-p3"), text).report == run("analyze", builtin("example2-p3"), text).report);
  RunOptions timed;
  timed.timings = true;
  CHECK(report(run("analyze", builtin("example2-p3"), timed)).contains("timings"));
  CHECK_FALSE(report(run("analyze", builtin("example2-p3"), {})).contains("timings"));
}

TEST_CASE("text format") {
  RunOptions o;
  o.format = cli::Format::Text;
  const auto r = run("analyze", builtin("example2-p3"), o);
  REQUIRE(r.exit_code == cli::kOk);
  CHECK(r.report.find("schema: semiab.report/1\n") == 0);
  CHECK(r.report.find("members: 0 2 8 26 80 242\n") != std::string::npos);
}

TEST_CASE("instances survive a round trip through the report echo") {
  const Json first = report(run("analyze", std::string(kMixed), {}));
  const auto again = run("analyze", first["instance"].dump(), {});
  REQUIRE(again.exit_code == cli::kOk);
  CHECK(report(again)["result"] == first["result"]);
}
