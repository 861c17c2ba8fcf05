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

#include <string>

#include "semiab/semiab.h"

namespace {

struct Context {
  Context() : ctx(semiab_context_new()) {}
  ~Context() { semiab_context_free(ctx); }
  semiab_context* ctx;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  semiab_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("run a built-in instance through the C interface") {
  Context c;
  char* instance = nullptr;
  REQUIRE(semiab_builtin_instance(c.ctx, "example2-p3", &instance) == SEMIAB_OK);
  const std::string doc = take(instance);
  CHECK(doc.find("\"F_3(t)\"") != std::string::npos);

  REQUIRE(semiab_set_option(c.ctx, "format", "text") == SEMIAB_OK);
  char* report = nullptr;
  CHECK(semiab_run(c.ctx, "analyze", doc.c_str(), &report) == SEMIAB_OK);
  const std::string text = take(report);
  CHECK(text.find("members: 0 2 8 26 80 242") != std::string::npos);
  CHECK(std::string(semiab_last_error(c.ctx)).empty());
}

TEST_CASE("status codes") {
  Context c;
  char* report = nullptr;
  CHECK(semiab_run(c.ctx, "analyze", "{\"schema\":", &report) == SEMIAB_PARSE_ERROR);
  CHECK(report == nullptr);
  CHECK(std::string(semiab_last_error(c.ctx)).find("position") != std::string::npos);

  const char* undefined = "{\"schema\":\"semiab.instance/1\",\"field\":\"Q\",\"model\":{\"torus_rank\":1},"
                          "\"map\":{\"torus\":[\"x1 - 1\"]},\"alpha\":{\"torus\":[\"2\"]},"
                          "\"gamma\":[{\"torus\":[\"2\"]}]}";
  CHECK(semiab_run(c.ctx, "analyze", undefined, &report) == SEMIAB_UNDEFINED_ORBIT);

  const char* tall = "{\"schema\":\"semiab.instance/1\",\"field\":\"Q\",\"model\":{\"torus_rank\":1},"
                     "\"map\":{\"torus\":[\"x1^2 + 1\"]},\"alpha\":{\"torus\":[\"3\"]},"
                     "\"gamma\":[{\"torus\":[\"2\"]}],\"analysis\":{\"n_max\":40}}";
  REQUIRE(semiab_set_option(c.ctx, "height_cap_bits", "64") == SEMIAB_OK);
  CHECK(semiab_run(c.ctx, "pipeline", tall, &report) == SEMIAB_RESOURCE_EXCEEDED);
  CHECK(report == nullptr);

  CHECK(semiab_set_option(c.ctx, "n_max", "-3") == SEMIAB_PARSE_ERROR);
  CHECK(semiab_set_option(c.ctx, "colour", "1") == SEMIAB_PARSE_ERROR);
  CHECK(semiab_set_option(c.ctx, "format", "xml") == SEMIAB_PARSE_ERROR);
  CHECK(semiab_builtin_instance(c.ctx, "example3", &report) == SEMIAB_PARSE_ERROR);
  CHECK(semiab_run(nullptr, "analyze", nullptr, &report) == SEMIAB_INTERNAL_ERROR);
}

TEST_CASE("expressions") {
  Context c;
  char* out = nullptr;
  REQUIRE(semiab_parse_expression(c.ctx, "t*x1 - t + 1", 1, "F_2(t)", &out) == SEMIAB_OK);
  const std::string first = take(out);
  REQUIRE(semiab_parse_expression(c.ctx, first.c_str(), 1, "F_2(t)", &out) == SEMIAB_OK);
  CHECK(take(out) == first);
  CHECK(semiab_parse_expression(c.ctx, "x1 + x2", 1, "Q", &out) == SEMIAB_PARSE_ERROR);
  CHECK(std::string(semiab_last_error(c.ctx)).find("position 5") != std::string::npos);
  CHECK(semiab_parse_expression(c.ctx, "x1", 1, "F_6(t)", &out) == SEMIAB_PARSE_ERROR);
}

TEST_CASE("Smith normal form") {
  Context c;
  char* out = nullptr;
  REQUIRE(semiab_snf(c.ctx, "[[2,4,4],[-6,6,12],[10,-4,-16]]", &out) == SEMIAB_OK);
  const std::string j = take(out);
  CHECK(j.find("\"invariant_factors\":[\"2\",\"6\",\"12\"]") != std::string::npos);
  CHECK(j.find("\"rank\":3") != std::string::npos);
  CHECK(semiab_snf(c.ctx, "[[1,2],[3]]", &out) == SEMIAB_PARSE_ERROR);
  CHECK(semiab_snf(c.ctx, "[[1,\"x\"]]", &out) == SEMIAB_PARSE_ERROR);
  CHECK(semiab_snf(c.ctx, "[[1,", &out) == SEMIAB_PARSE_ERROR);
}

TEST_CASE("version") { CHECK(std::string(semiab_version()) == "1.0.0"); }
