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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcl/capacity.hpp"

namespace qcl {

// Experiment configuration, parsed from a JSON document of the form
//
//   {
//     "lambda": 0.5,
//     "kappa": 1.0,
//     "service": {"kind": "exponential", "rate": 1.0},
//     "channel": {"kind": "erasure", "alphabet_size": 2},
//     "decoherence": {"family": "exponential"},
//     "delay_convention": "waiting",
//     "receiver_knows_timing": false,
//     "assume_unpredictable": false,
//     "n": 1000000, "burn_in": 10000, "seed": 1,
//     "grid": {"start": 0.01, "stop": 0.99, "step": 0.01},
//     "kappas": [0.01, 0.1, 1],
//     "tolerance_sigma": 4, "buckets": 64, "out": "file.csv", "suite": "all"
//   }
//
// Every key is optional. Unknown keys anywhere in the document are rejected
// with ConfigError.
struct ExperimentConfig {
  QueueChannelSpec spec;
  double kappa = 1.0;
  std::size_t n = 1'000'000;
  std::optional<std::size_t> burn_in;
  std::uint64_t seed = 1;
  std::vector<double> lambda_grid;
  std::vector<double> kappas;
  double tolerance_sigma = 4.0;
  std::size_t buckets = 64;
  std::string out;
  std::string suite = "all";
  // Source document; sweeps re-parse it at each (lambda, kappa).
  nlohmann::json document = nlohmann::json::object();

  MonteCarloBudget budget() const { return {n, burn_in, seed, buckets}; }
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);

// Parses a JSON text into a document (ConfigError on syntax errors).
nlohmann::json parse_json_document(const std::string& text);

// Grid points start, start+step, ... up to stop (inclusive within 1e-9),
// rounded to 12 decimals so that printed values stay short.
std::vector<double> lambda_grid(double start, double stop, double step);

}  // namespace qcl
