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
#include <variant>
#include <vector>

#include "qcl/rng.hpp"

namespace qcl {

// Which delay the channel sees. The capacity closed forms are stated for the
// time spent waiting before service begins (Pollaczek-Khinchin); Sojourn adds
// the symbol's own service time.
enum class DelayConvention { WaitingBeforeService, Sojourn };

std::string to_string(DelayConvention c);
std::optional<DelayConvention> parse_delay_convention(const std::string& s);

// Poisson arrival stream of rate lambda. A zero rate is accepted and models an
// empty stream (every interarrival is +inf).
class ArrivalProcess {
 public:
  explicit ArrivalProcess(double rate);

  double rate() const { return rate_; }
  double sample_interarrival(RandomSource& rng) const;

 private:
  double rate_;
};

// Service-time law S >= 0 with E[S] > 0.
class ServiceDistribution {
 public:
  struct Exponential {
    double rate;
  };
  struct Deterministic {
    double value;
  };
  struct Gamma {
    double shape;
    double scale;
  };
  struct Uniform {
    double a;
    double b;
  };
  struct Empirical {
    std::vector<double> samples;
  };
  using Kind = std::variant<Exponential, Deterministic, Gamma, Uniform, Empirical>;

  static ServiceDistribution exponential(double rate);
  static ServiceDistribution deterministic(double value);
  static ServiceDistribution gamma(double shape, double scale);
  static ServiceDistribution uniform(double a, double b);
  static ServiceDistribution empirical(std::vector<double> samples);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  double mean() const { return mean_; }
  // mu = 1 / E[S].
  double rate() const { return 1.0 / mean_; }
  // E[S^2], used for textbook mean-wait checks.
  double second_moment() const;

  // E[exp(-s S)] for s >= 0.
  double laplace(double s) const;
  double sample(RandomSource& rng) const;

 private:
  explicit ServiceDistribution(Kind kind);

  Kind kind_;
  double mean_;
};

// One FIFO step: W' = max(0, w + s - t_next).
double lindley_step(double w, double s, double t_next);

// Throws UnstableQueue unless lambda < mu.
void require_stable(const ArrivalProcess& arrival, const ServiceDistribution& service);

// max(1e4, ceil(10 / (mu - lambda))).
std::size_t default_burn_in(const ArrivalProcess& arrival, const ServiceDistribution& service);

struct WaitSampleSet {
  std::vector<double> samples;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  DelayConvention convention = DelayConvention::WaitingBeforeService;
};

// Sample path of the FIFO queue, one customer per call to next(). The first
// customer finds the system empty. Interarrivals and services are drawn from
// separate streams of the seed, so two paths with the same seed share their
// arrival epochs (up to the 1/lambda scale) regardless of the service law.
class QueuePath {
 public:
  struct Customer {
    double arrival;
    double service;
    double wait;  // time before service starts
    double departure;
  };

  QueuePath(ArrivalProcess arrival, ServiceDistribution service, std::uint64_t seed);

  Customer next();

 private:
  ArrivalProcess arrival_;
  ServiceDistribution service_;
  RandomSource interarrivals_;
  RandomSource services_;
  double clock_ = 0.0;
  double wait_ = 0.0;
  double last_service_ = 0.0;
  bool started_ = false;
};

// Stationary draws of the delay after discarding burn_in customers. Requires
// lambda < mu and n >= 1. Passing std::nullopt for burn_in selects
// default_burn_in().
WaitSampleSet stationary_wait_samples(const ArrivalProcess& arrival,
                                      const ServiceDistribution& service, std::size_t n,
                                      std::optional<std::size_t> burn_in,
                                      DelayConvention convention, std::uint64_t seed);

}  // namespace qcl
