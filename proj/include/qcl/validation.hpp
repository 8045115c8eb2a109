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
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qcl {

enum class Suite { All, Erasure, Bsc, Bijective, ServiceOptimality };

std::optional<Suite> parse_suite(const std::string& name);
std::string to_string(Suite suite);

struct SubCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::vector<SubCheck> subchecks;
  double seconds = 0.0;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::size_t n = 1'000'000;
  double tolerance_sigma = 4.0;
  // M/M/1 erasure capacity formula (lambda, kappa) checked against the
  // simulator. Empty means the library's closed form; tests substitute a
  // broken formula to confirm the suite notices.
  std::function<double(double, double)> mm1_formula;
};

// Criterion numbers run by a suite, ascending.
std::vector<int> suite_criteria(Suite suite);

// Runs the criteria of a suite concurrently; results are ordered by
// criterion number. A criterion that throws is reported as failed.
std::vector<CheckResult> run_validation(Suite suite, const ValidationOptions& options = {});

// Runs a single criterion (1..11).
CheckResult run_criterion(int criterion, const ValidationOptions& options = {});

}  // namespace qcl
