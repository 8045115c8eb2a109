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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qcl/capacity.hpp"

namespace qcl {

struct TranscriptRecord {
  int x = 0;         // input symbol
  double a = 0.0;    // arrival time
  double d = 0.0;    // departure time
  double s = 0.0;    // service time
  double w = 0.0;    // delay seen by the channel, per spec.convention
  int y = 0;         // output symbol, kErased for erasures
};

struct Transcript {
  std::vector<TranscriptRecord> records;
  QueueChannelSpec spec;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
};

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Sample mean with a batch-means standard error (batch size ceil(sqrt(n))).
// Throws InvalidArgument on an empty series.
EstimateWithError batch_means(std::span<const double> series);

// n symbols through the queue-channel with i.i.d. uniform inputs. Customers
// in the burn-in prefix are simulated but not recorded.
Transcript simulate_transmission(const QueueChannelSpec& spec, std::size_t n, std::uint64_t seed,
                                 std::optional<std::size_t> burn_in = std::nullopt);

// Columnar CSV "index,x,a,d,s,w,y"; shortest round-trip decimals; erasures
// as '?'.
void write_transcript_csv(const Transcript& transcript, std::ostream& os);

// lambda log2|X| (1 - erased fraction).
EstimateWithError estimate_erasure_capacity(const Transcript& transcript);

// lambda log2|X| mean_j(1 - p(w_j)): the same capacity computed from the
// delays instead of the erasure outcomes.
EstimateWithError estimate_erasure_capacity_from_waits(const Transcript& transcript);

// E_pi[f(W)] over stationary delays of the spec's queue.
EstimateWithError estimate_expectation_over_pi(const std::function<double(double)>& f,
                                               const QueueChannelSpec& spec, std::size_t n,
                                               std::optional<std::size_t> burn_in,
                                               std::uint64_t seed);

// Same, over an already drawn set of stationary delays.
EstimateWithError expectation_over_samples(const std::function<double(double)>& f,
                                           std::span<const double> waits);

// Plug-in BSC capacity estimators over a transcript:
//   csir:  lambda (1 - mean_j H(phi(w_j)))
//   !csir: lambda (1 - H(mean_j phi(w_j)))
EstimateWithError estimate_bsc_capacity(const Transcript& transcript, bool csir);

// Same estimators from raw delays (no channel outputs needed).
EstimateWithError bsc_capacity_from_waits(const BitFlipModel& flip, double lambda,
                                          std::span<const double> waits, bool csir);

// Plug-in expectations of phi over a set of stationary delays.
struct PhiExpectations {
  EstimateWithError mean_entropy_phi;  // E[H(phi(W))]
  EstimateWithError mean_phi;          // E[phi(W)]
};
PhiExpectations phi_expectations(const BitFlipModel& flip, std::span<const double> waits);

// Entropy functionals of the noise law over a set of consecutive stationary
// delays (in path order). The standard error of the averaged-noise entropy
// uses the delta method.
struct NoiseEntropyEstimates {
  EstimateWithError mean_noise_entropy;
  EstimateWithError entropy_of_mean_noise;
  EstimateWithError mean_entropy_of_kernel_noise;
};
NoiseEntropyEstimates noise_entropy_estimates(const NoiseLaw& noise, std::span<const double> waits,
                                              std::size_t buckets = 64);

struct BijectiveEstimates {
  // lambda (log|X| - H(mean noise law)); equals the capacity when the queue
  // is unpredictable given noise.
  EstimateWithError lower;
  // lambda (log|X| - mean H(one-step-ahead noise law)), conditional laws
  // estimated from consecutive delay pairs bucketed by quantile of W.
  EstimateWithError upper;
  // lambda (log|X| - mean H(N(w_j))).
  EstimateWithError csir_exact;
};

BijectiveEstimates estimate_bijective_bounds(const QueueChannelSpec& spec, std::size_t n,
                                             std::optional<std::size_t> burn_in,
                                             std::uint64_t seed, std::size_t buckets = 64);

BijectiveEstimates bijective_bounds_from_waits(const RandomBijectiveChannel& channel, double lambda,
                                               std::span<const double> waits,
                                               std::size_t buckets = 64);

struct FormulaCheck {
  bool pass = false;
  double formula = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double tolerance_sigma = 0.0;
  // |estimate - formula| / std_error; infinite when std_error == 0 and the
  // values differ.
  double z = 0.0;
};

// Passes when |estimate - formula| <= tolerance_sigma * std_error. A zero
// standard error demands equality up to rounding.
FormulaCheck validate_formula(double formula_value, const EstimateWithError& estimate,
                              double tolerance_sigma);

}  // namespace qcl
