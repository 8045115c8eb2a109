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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcl/channel.hpp"
#include "qcl/queueing.hpp"

namespace qcl {

// Complete description of a queue-channel experiment.
struct QueueChannelSpec {
  ArrivalProcess arrival{0.5};
  ServiceDistribution service = ServiceDistribution::exponential(1.0);
  ChannelKind channel = ErasureChannel{};
  DelayConvention convention = DelayConvention::WaitingBeforeService;
  // Receiver observes arrival and departure epochs (CSIR).
  bool receiver_knows_timing = false;
  // Caller asserts the queue is unpredictable given the noise, which makes
  // the no-CSIR bijective capacity exact instead of a bound pair.
  bool assume_unpredictable = false;

  double lambda() const { return arrival.rate(); }
  double mu() const { return service.rate(); }

  // Throws InvalidArgument for malformed channels and UnstableQueue when
  // lambda >= mu.
  void validate() const;
};

enum class CapacityMethod { ClosedFormMM1, PKTransform, GeneralLaplace, MonteCarlo, BoundLower, BoundUpper };

std::string to_string(CapacityMethod m);

struct CapacityResult {
  double bits_per_sec = 0.0;
  CapacityMethod method = CapacityMethod::ClosedFormMM1;
  // Present when bits_per_sec is only the lower end of a bound pair.
  std::optional<double> upper_bound;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

// Monte Carlo settings for expectations that have no closed form.
struct MonteCarloBudget {
  std::size_t n = 1'000'000;
  std::optional<std::size_t> burn_in;
  std::uint64_t seed = 1;
  std::size_t buckets = 64;
};

// F~_S(s) = E[exp(-s S)].
double laplace_service(const ServiceDistribution& service, double s);

// E[exp(-kappa W)] for the stationary M/GI/1 waiting time (before service):
//   (1 - rho) kappa / (kappa - lambda (1 - F~_S(kappa))).
double pk_wait_transform(double lambda, const ServiceDistribution& service, double kappa);

// E[exp(-kappa D)] where D is the delay under the given convention. Sojourn
// multiplies by F~_S(kappa) since a customer's own service is independent of
// its wait.
double delay_transform(double lambda, const ServiceDistribution& service, double kappa,
                       DelayConvention convention);

// M/GI/1 constant alpha = mu (1 - F~_S(kappa)) / kappa, i.e. the unit-rate
// constant after rescaling time by mu. Equals 1/(1+kappa) for Exp(1).
double service_alpha(const ServiceDistribution& service, double kappa);

// lambda log2|X| E_pi[1 - p(W)]. Closed form for the exponential family,
// Monte Carlo over stationary waits otherwise (throws if budget.n == 0).
CapacityResult erasure_capacity(const QueueChannelSpec& spec, const MonteCarloBudget& budget = {});

// lambda (1 - lambda) / (1 - alpha lambda), alpha = 1/(1+kappa), mu = 1.
CapacityResult mm1_capacity_closed_form(double lambda, double kappa);

struct OptimalRate {
  double lambda = 0.0;
  double alpha = 0.0;
  double capacity = 0.0;  // erasure capacity at lambda, bits/sec, log|X| = 1
};

// lambda* = mu (1 - sqrt(1 - alpha)) / alpha for p(w) = 1 - exp(-kappa w).
OptimalRate optimal_lambda_mg1(const ServiceDistribution& service, double kappa);

struct GeneralOptimum {
  double lambda = 0.0;
  double u_min = 0.0;
  // Implied capacity lambda (1 - ((1-lambda)/lambda) p~((1-lambda)/lambda)).
  double implied_capacity = 0.0;
  bool at_boundary = false;
  // Objective flat over (0,1): every rate gives the same capacity.
  bool degenerate = false;
  CapacityMethod method = CapacityMethod::GeneralLaplace;
  std::string caveat;
};

// M/M/1 (mu = 1) optimal rate for a general p via its Laplace transform:
//   lambda* = 1 - argmin_{u in (0,1)} u (1 + p~(u / (1 - u))).
// The formula assumes an exponential wait with rate (1-lambda)/lambda, which
// is not the P-K waiting-time law; the result carries that caveat.
GeneralOptimum optimal_lambda_general(const std::function<double(double)>& laplace_p);

// Expectations of phi over the stationary delay law.
struct WaitExpectations {
  std::optional<double> mean_entropy_phi;  // E_pi[H(phi(W))]
  std::optional<double> mean_phi;          // E_pi[phi(W)]
};

// lambda (1 - E[H(phi)]) with CSIR, lambda (1 - H(E[phi])) without.
CapacityResult bsc_capacity(const QueueChannelSpec& spec, const WaitExpectations& expectations);

struct NoiseEntropyExpectations {
  std::optional<double> mean_noise_entropy;          // E_pi[H(N(W))]
  std::optional<double> entropy_of_mean_noise;       // H(E_pi[N(W)])
  std::optional<double> mean_entropy_of_kernel_noise;  // E_pi[H(E_{P(W'|W)} N(W'))]
};

// Random bijective channel.
//   CSIR: lambda (log|X| - E[H(N(W))]).
//   No CSIR, unpredictable queue: lambda (log|X| - H(E[N(W)])).
//   No CSIR otherwise: the bound pair
//     lambda (log|X| - H(E[N(W)]))  <=  C  <=  lambda (log|X| - E[H(E_{P(W'|W)} N(W'))]).
// The entropy of the averaged noise is the larger of the two entropies
// (concavity), so it gives the lower capacity bound.
CapacityResult bijective_capacity(const QueueChannelSpec& spec,
                                  const NoiseEntropyExpectations& expectations);

// Dispatches to the analytic route matching the spec, gathering Monte Carlo
// expectations when a route needs them.
CapacityResult evaluate_capacity(const QueueChannelSpec& spec, const MonteCarloBudget& budget = {});

}  // namespace qcl
