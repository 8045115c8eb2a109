// Copyright 2026 The QCL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "qcl/config.hpp"
#include "qcl/error.hpp"

using namespace qcl;
using nlohmann::json;

TEST_CASE("defaults") {
  const auto c = parse_config(json::object());
  CHECK(c.spec.lambda() == 0.5);
  CHECK(c.kappa == 1.0);
  CHECK(c.n == 1000000);
  CHECK(c.seed == 1);
  CHECK(c.buckets == 64);
  CHECK(channel_name(c.spec.channel) == "erasure");
  CHECK(c.spec.convention == DelayConvention::WaitingBeforeService);
}

TEST_CASE("full document") {
  const auto c = parse_config_text(R"({
    "lambda": 0.3, "kappa": 0.2,
    "service": {"kind": "gamma", "shape": 2, "scale": 0.5},
    "channel": {"kind": "bijective", "table_file": ")" QCL_TEST_DATA_DIR R"(/quaternary_table.json",
                "noise": {"base": [1, 0, 0, 0], "target": [0.1, 0.2, 0.3, 0.4]}},
    "delay_convention": "sojourn", "receiver_knows_timing": true,
    "n": 5000, "burn_in": 100, "seed": 12345678901234, "buckets": 16,
    "grid": [0.1, 0.2], "kappas": [1, 2], "tolerance_sigma": 3, "out": "x.csv", "suite": "bsc"
  })");
  CHECK(c.spec.lambda() == 0.3);
  CHECK(alphabet_size(c.spec.channel) == 4);
  CHECK(c.spec.convention == DelayConvention::Sojourn);
  CHECK(c.spec.receiver_knows_timing);
  CHECK(c.n == 5000);
  CHECK(c.burn_in == 100u);
  CHECK(c.seed == 12345678901234ull);
  CHECK(c.lambda_grid.size() == 2);
  CHECK(c.kappas.size() == 2);
  CHECK(c.out == "x.csv");
}

TEST_CASE("grids") {
  const auto g = lambda_grid(0.01, 0.99, 0.01);
  CHECK(g.size() == 99);
  CHECK(g.front() == 0.01);
  CHECK(g[56] == 0.57);
  CHECK(g.back() == 0.99);
  CHECK(lambda_grid(0.5, 0.5, 0.1).size() == 1);
  CHECK(lambda_grid(0.6, 0.5, 0.1).empty());
  CHECK_THROWS_AS(lambda_grid(0.1, 0.5, 0.0), ConfigError);
  const auto c = parse_config(json{{"grid", {{"start", 0.1}, {"stop", 0.3}, {"step", 0.1}}}});
  CHECK(c.lambda_grid == std::vector<double>{0.1, 0.2, 0.3});
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS(parse_config(json{{"lamda", 0.5}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"service", {{"kind", "exponential"}, {"mean", 1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"channel", {{"kind", "bsc"}, {"alphabet_size", 2}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"grid", {{"start", 0.1}, {"stop", 0.3}, {"steps", 0.1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"service", {{"kind", "weibull"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"n", -1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"n", 1.5}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"lambda", "fast"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"delay_convention", "queue"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"kappa", -1.0}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"service", {{"kind", "uniform"}, {"a", 2}, {"b", 1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"channel", {{"kind", "bijective"}, {"table_file", "/nonexistent.json"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"channel", {{"kind", "bsc"}}}, {"decoherence", {{"family", "constant"}, {"value", 0.1}}}}),
                  ConfigError);
}

TEST_CASE("decoherence families in config") {
  const auto c = parse_config(json{{"decoherence", {{"family", "deadline"}, {"deadline", 2.0}}}});
  const auto& e = std::get<ErasureChannel>(c.spec.channel);
  CHECK(e.erasure.family() == "deadline");
  CHECK(e.erasure.probability(3.0) == 1.0);
}

TEST_CASE("instability is not a config error") {
  // Parsing accepts lambda >= mu; commands raise UnstableQueue when they run.
  CHECK_NOTHROW(parse_config(json{{"lambda", 1.2}}));
}
