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

#include "qcl/capacity.hpp"

#include <cmath>
#include <sstream>

#include "overloaded.hpp"
#include "qcl/error.hpp"
#include "qcl/numerics.hpp"
#include "qcl/simulation.hpp"

namespace qcl {

void QueueChannelSpec::validate() const {
  validate_channel(channel);
  require_stable(arrival, service);
}

std::string to_string(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::ClosedFormMM1: return "ClosedFormMM1";
    case CapacityMethod::PKTransform: return "PKTransform";
    case CapacityMethod::GeneralLaplace: return "GeneralLaplace";
    case CapacityMethod::MonteCarlo: return "MonteCarlo";
    case CapacityMethod::BoundLower: return "Bound-Lower";
    case CapacityMethod::BoundUpper: return "Bound-Upper";
  }
  return "unknown";
}

double laplace_service(const ServiceDistribution& service, double s) { return service.laplace(s); }

double pk_wait_transform(double lambda, const ServiceDistribution& service, double kappa) {
  require_stable(ArrivalProcess(lambda), service);
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("pk_wait_transform needs kappa > 0");
  }
  const double rho = lambda / service.rate();
  return (1.0 - rho) * kappa / (kappa - lambda * (1.0 - service.laplace(kappa)));
}

double delay_transform(double lambda, const ServiceDistribution& service, double kappa,
                       DelayConvention convention) {
  if (kappa == 0.0) {
    require_stable(ArrivalProcess(lambda), service);
    return 1.0;
  }
  const double w = pk_wait_transform(lambda, service, kappa);
  return convention == DelayConvention::Sojourn ? w * service.laplace(kappa) : w;
}

double service_alpha(const ServiceDistribution& service, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("alpha needs kappa > 0");
  return service.rate() * (1.0 - service.laplace(kappa)) / kappa;
}

namespace {

const ErasureChannel& as_erasure(const QueueChannelSpec& spec) {
  const auto* e = std::get_if<ErasureChannel>(&spec.channel);
  if (!e) throw InvalidArgument("spec does not describe an erasure channel");
  return *e;
}

}  // namespace

CapacityResult mm1_capacity_closed_form(double lambda, double kappa) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
  if (!(lambda < 1.0)) throw UnstableQueue("unstable: lambda >= mu (mu = 1)");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be nonnegative");
  const double alpha = 1.0 / (1.0 + kappa);
  CapacityResult r;
  r.method = CapacityMethod::ClosedFormMM1;
  r.bits_per_sec = lambda * (1.0 - lambda) / (1.0 - alpha * lambda);
  r.diagnostics["alpha"] = alpha;
  r.diagnostics["lambda"] = lambda;
  r.diagnostics["E_p_W"] = lambda > 0.0 ? 1.0 - r.bits_per_sec / lambda : 0.0;
  return r;
}

CapacityResult erasure_capacity(const QueueChannelSpec& spec, const MonteCarloBudget& budget) {
  spec.validate();
  const auto& channel = as_erasure(spec);
  const double lambda = spec.lambda();
  const double log_x = std::log2(static_cast<double>(channel.alphabet_size));

  CapacityResult r;
  r.notes.push_back("independent of receiver timing knowledge");
  r.diagnostics["lambda"] = lambda;
  r.diagnostics["mu"] = spec.mu();
  r.diagnostics["log2_alphabet"] = log_x;

  if (const auto kappa = channel.erasure.kappa()) {
    const bool mm1 = std::holds_alternative<ServiceDistribution::Exponential>(spec.service.kind()) &&
                     spec.convention == DelayConvention::WaitingBeforeService;
    double keep;  // E[1 - p(W)]
    if (mm1) {
      // Rescale time by mu: rho = lambda/mu, kappa' = kappa/mu.
      const double mu = spec.mu();
      const auto unit = mm1_capacity_closed_form(lambda / mu, *kappa / mu);
      keep = lambda > 0.0 ? unit.bits_per_sec * mu / lambda : 1.0;
      r.method = CapacityMethod::ClosedFormMM1;
      r.diagnostics["alpha"] = unit.diagnostics.at("alpha");
    } else {
      keep = delay_transform(lambda, spec.service, *kappa, spec.convention);
      r.method = CapacityMethod::PKTransform;
      if (*kappa > 0.0) r.diagnostics["alpha"] = service_alpha(spec.service, *kappa);
    }
    r.bits_per_sec = lambda * log_x * keep;
    r.diagnostics["kappa"] = *kappa;
    r.diagnostics["E_p_W"] = 1.0 - keep;
    return r;
  }

  if (budget.n == 0) {
    throw InvalidArgument("erasure probability family '" + channel.erasure.family() +
                          "' has no closed form; a Monte Carlo budget (n > 0) is required");
  }
  const auto& p = channel.erasure;
  const auto est = estimate_expectation_over_pi([&p](double w) { return 1.0 - p.probability(w); },
                                                spec, budget.n, budget.burn_in, budget.seed);
  r.method = CapacityMethod::MonteCarlo;
  r.bits_per_sec = lambda * log_x * est.value;
  r.diagnostics["E_p_W"] = 1.0 - est.value;
  r.diagnostics["std_error"] = lambda * log_x * est.std_error;
  r.diagnostics["n"] = static_cast<double>(est.n);
  return r;
}

OptimalRate optimal_lambda_mg1(const ServiceDistribution& service, double kappa) {
  const double alpha = service_alpha(service, kappa);
  if (!(alpha > 0.0)) throw InvalidArgument("degenerate alpha <= 0");
  if (alpha > 1.0 + 1e-12) throw InvalidArgument("alpha > 1 is impossible for a valid service law");
  OptimalRate r;
  r.alpha = alpha;
  // (1 - sqrt(1 - alpha)) / alpha, written without the cancellation.
  r.lambda = service.rate() / (1.0 + std::sqrt(std::max(0.0, 1.0 - alpha)));
  r.capacity = r.lambda * pk_wait_transform(r.lambda, service, kappa);
  return r;
}

GeneralOptimum optimal_lambda_general(const std::function<double(double)>& laplace_p) {
  if (!laplace_p) throw InvalidArgument("optimal_lambda_general needs a Laplace transform");
  const auto objective = [&](double u) { return u * (1.0 + laplace_p(u / (1.0 - u))); };
  const auto implied = [&](double lambda) {
    if (lambda <= 0.0) return 0.0;
    const double v = (1.0 - lambda) / lambda;
    if (v == 0.0) return lambda;
    return lambda * (1.0 - v * laplace_p(v));
  };

  GeneralOptimum r;
  r.caveat =
      "assumes the M/M/1 wait is Exp((1-lambda)/lambda); the P-K waiting-time law differs, "
      "so this rate need not maximize the true capacity";

  const double lo = 1e-9;
  const double hi = 1.0 - 1e-9;
  double vmin = objective(lo);
  double vmax = vmin;
  for (int i = 1; i <= 64; ++i) {
    const double v = objective(lo + (hi - lo) * i / 64.0);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (vmax - vmin <= 1e-9 * std::max(1.0, std::abs(vmax))) {
    // Flat: every rate is optimal; take the smallest.
    r.degenerate = true;
    r.at_boundary = true;
    r.u_min = 1.0;
    r.lambda = 0.0;
    r.implied_capacity = 0.0;
    return r;
  }

  const auto opt =
      golden_section_extremize(objective, lo, hi, 1e-10, Extremum::Minimize, TiePreference::Upper);
  r.u_min = opt.argument;
  r.lambda = 1.0 - opt.argument;
  r.at_boundary = opt.at_boundary;
  r.implied_capacity = implied(r.lambda);
  return r;
}

CapacityResult bsc_capacity(const QueueChannelSpec& spec, const WaitExpectations& expectations) {
  spec.validate();
  if (!std::holds_alternative<BinarySymmetricChannel>(spec.channel)) {
    throw InvalidArgument("spec does not describe a binary symmetric channel");
  }
  const double lambda = spec.lambda();
  CapacityResult r;
  r.method = CapacityMethod::MonteCarlo;
  r.diagnostics["lambda"] = lambda;
  if (spec.receiver_knows_timing) {
    if (!expectations.mean_entropy_phi) throw InvalidArgument("missing E_pi[H(phi(W))]");
    r.bits_per_sec = lambda * (1.0 - *expectations.mean_entropy_phi);
    r.diagnostics["E_H_phi"] = *expectations.mean_entropy_phi;
  } else {
    if (!expectations.mean_phi) throw InvalidArgument("missing E_pi[phi(W)]");
    r.bits_per_sec = lambda * (1.0 - binary_entropy(*expectations.mean_phi));
    r.diagnostics["E_phi"] = *expectations.mean_phi;
    r.diagnostics["unpredictable_assumed"] = spec.assume_unpredictable ? 1.0 : 0.0;
    r.notes.push_back(
        "exact when the queue is unpredictable given the noise; otherwise a lower bound");
  }
  if (expectations.mean_entropy_phi) r.diagnostics["E_H_phi"] = *expectations.mean_entropy_phi;
  if (expectations.mean_phi) r.diagnostics["E_phi"] = *expectations.mean_phi;
  return r;
}

CapacityResult bijective_capacity(const QueueChannelSpec& spec,
                                  const NoiseEntropyExpectations& expectations) {
  spec.validate();
  const auto* channel = std::get_if<RandomBijectiveChannel>(&spec.channel);
  if (!channel) throw InvalidArgument("spec does not describe a random bijective channel");
  const double lambda = spec.lambda();
  const double log_x = std::log2(static_cast<double>(channel->table.size()));

  CapacityResult r;
  r.method = CapacityMethod::MonteCarlo;
  r.diagnostics["lambda"] = lambda;
  r.diagnostics["log2_alphabet"] = log_x;
  if (spec.receiver_knows_timing) {
    if (!expectations.mean_noise_entropy) throw InvalidArgument("missing E_pi[H(N(W))]");
    r.bits_per_sec = lambda * (log_x - *expectations.mean_noise_entropy);
    r.diagnostics["E_H_N"] = *expectations.mean_noise_entropy;
    return r;
  }
  if (!expectations.entropy_of_mean_noise) throw InvalidArgument("missing H(E_pi[N(W)])");
  const double lower = lambda * (log_x - *expectations.entropy_of_mean_noise);
  r.diagnostics["H_E_N"] = *expectations.entropy_of_mean_noise;
  if (spec.assume_unpredictable) {
    r.bits_per_sec = lower;
    r.notes.push_back("exact under the unpredictable-queue assumption");
    return r;
  }
  if (!expectations.mean_entropy_of_kernel_noise) {
    throw InvalidArgument("missing E_pi[H(E_{P(W'|W)} N(W'))]");
  }
  r.method = CapacityMethod::BoundLower;
  r.bits_per_sec = lower;
  r.upper_bound = lambda * (log_x - *expectations.mean_entropy_of_kernel_noise);
  r.diagnostics["E_H_kernel_N"] = *expectations.mean_entropy_of_kernel_noise;
  r.notes.push_back("no timing knowledge: bits_per_sec is a lower bound, upper_bound an upper bound");
  return r;
}

CapacityResult evaluate_capacity(const QueueChannelSpec& spec, const MonteCarloBudget& budget) {
  spec.validate();
  return std::visit(
      detail::overloaded{
          [&](const ErasureChannel&) { return erasure_capacity(spec, budget); },
          [&](const BinarySymmetricChannel& b) {
            const auto kappa = b.flip.kappa();
            if (kappa && !spec.receiver_knows_timing) {
              // phi = (1 - e^{-kappa W}) / 2, so E[phi] follows from the transform.
              WaitExpectations e;
              e.mean_phi =
                  0.5 * (1.0 - delay_transform(spec.lambda(), spec.service, *kappa, spec.convention));
              auto r = bsc_capacity(spec, e);
              r.method = CapacityMethod::PKTransform;
              r.diagnostics["kappa"] = *kappa;
              return r;
            }
            if (budget.n == 0) throw InvalidArgument("BSC route needs a Monte Carlo budget (n > 0)");
            const auto waits = stationary_wait_samples(spec.arrival, spec.service, budget.n,
                                                       budget.burn_in, spec.convention, budget.seed);
            const auto est = phi_expectations(b.flip, waits.samples);
            auto r = bsc_capacity(spec, {est.mean_entropy_phi.value, est.mean_phi.value});
            r.diagnostics["std_error"] =
                bsc_capacity_from_waits(b.flip, spec.lambda(), waits.samples,
                                        spec.receiver_knows_timing)
                    .std_error;
            r.diagnostics["n"] = static_cast<double>(budget.n);
            return r;
          },
          [&](const RandomBijectiveChannel& c) {
            if (budget.n == 0) {
              throw InvalidArgument("bijective route needs a Monte Carlo budget (n > 0)");
            }
            const auto waits = stationary_wait_samples(spec.arrival, spec.service, budget.n,
                                                       budget.burn_in, spec.convention, budget.seed);
            const auto est = noise_entropy_estimates(c.noise, waits.samples, budget.buckets);
            NoiseEntropyExpectations e;
            e.mean_noise_entropy = est.mean_noise_entropy.value;
            e.entropy_of_mean_noise = est.entropy_of_mean_noise.value;
            e.mean_entropy_of_kernel_noise = est.mean_entropy_of_kernel_noise.value;
            auto r = bijective_capacity(spec, e);
            const double lambda = spec.lambda();
            if (spec.receiver_knows_timing) {
              r.diagnostics["std_error"] = lambda * est.mean_noise_entropy.std_error;
            } else {
              r.diagnostics["std_error"] = lambda * est.entropy_of_mean_noise.std_error;
              if (r.upper_bound) {
                r.diagnostics["upper_std_error"] = lambda * est.mean_entropy_of_kernel_noise.std_error;
              }
            }
            r.diagnostics["n"] = static_cast<double>(budget.n);
            r.diagnostics["buckets"] = static_cast<double>(budget.buckets);
            return r;
          },
      },
      spec.channel);
}

}  // namespace qcl
