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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcl/config.hpp"
#include "qcl/simulation.hpp"

namespace qcl {

// CapacityResult for the configured experiment as a JSON object.
nlohmann::json run_capacity(const ExperimentConfig& config);

// Optimal arrival rate for an erasure queue-channel. Reports the
// P-K-based closed form when p is exponential, the general Laplace route
// when the service is exponential, and their discrepancy when both apply.
// With n > 0 each candidate is also simulated.
nlohmann::json run_optimize(const ExperimentConfig& config);

struct SweepRow {
  double lambda = 0.0;
  double kappa = 0.0;
  double capacity_analytic = 0.0;
  std::optional<double> capacity_mc;
  std::optional<double> mc_stderr;
};

struct SweepOutput {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

// One row per (kappa, lambda), kappa-major. Grid points outside (0, mu) are
// dropped with a warning. Rows are computed concurrently with per-row seeds.
SweepOutput run_sweep(const ExperimentConfig& config);

void write_sweep_csv(const SweepOutput& sweep, std::ostream& os);

struct SimulateOutput {
  Transcript transcript;
  nlohmann::json summary;
};

SimulateOutput run_simulate(const ExperimentConfig& config);

// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace qcl
