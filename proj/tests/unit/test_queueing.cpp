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

#include <cmath>

#include "oracles.hpp"
#include "qcl/error.hpp"
#include "qcl/queueing.hpp"
#include "qcl/simulation.hpp"

using namespace qcl;

TEST_CASE("lindley step") {
  CHECK(lindley_step(0.0, 1.0, 0.5) == doctest::Approx(0.5));
  CHECK(lindley_step(2.0, 1.0, 5.0) == 0.0);
  CHECK(lindley_step(1.0, 1.0, 2.0) == 0.0);
}

TEST_CASE("default burn-in") {
  CHECK(default_burn_in(ArrivalProcess(0.5), ServiceDistribution::exponential(1.0)) == 10000);
  // mu - lambda = 2^-11 exactly.
  CHECK(default_burn_in(ArrivalProcess(1.0 - std::ldexp(1.0, -11)), ServiceDistribution::exponential(1.0)) == 20480);
}

TEST_CASE("stability is required") {
  const auto s = ServiceDistribution::exponential(1.0);
  CHECK_NOTHROW(require_stable(ArrivalProcess(0.99), s));
  CHECK_THROWS_AS(require_stable(ArrivalProcess(1.0), s), UnstableQueue);
  CHECK_THROWS_AS(require_stable(ArrivalProcess(1.2), s), UnstableQueue);
  CHECK_THROWS_WITH_AS(stationary_wait_samples(ArrivalProcess(1.2), s, 10, std::nullopt,
                                               DelayConvention::WaitingBeforeService, 1),
                       doctest::Contains("unstable: lambda >= mu"), UnstableQueue);
}

TEST_CASE("invalid service parameters") {
  CHECK_THROWS_AS(ServiceDistribution::exponential(0.0), InvalidArgument);
  CHECK_THROWS_AS(ServiceDistribution::deterministic(-1.0), InvalidArgument);
  CHECK_THROWS_AS(ServiceDistribution::gamma(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ServiceDistribution::uniform(2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ServiceDistribution::empirical({}), InvalidArgument);
  CHECK_THROWS_AS(ArrivalProcess(-0.1), InvalidArgument);
}

TEST_CASE("service means and rates") {
  CHECK(ServiceDistribution::exponential(2.0).mean() == doctest::Approx(0.5));
  CHECK(ServiceDistribution::gamma(2.0, 0.5).rate() == doctest::Approx(1.0));
  CHECK(ServiceDistribution::uniform(0.5, 1.5).mean() == doctest::Approx(1.0));
  CHECK(ServiceDistribution::empirical({1.0, 2.0, 3.0}).mean() == doctest::Approx(2.0));
}

TEST_CASE("service Laplace transforms match direct integration") {
  const double s = 0.7;
  // Densities integrated numerically on a truncated support.
  const double exp_ref = oracle::simpson([&](double x) { return std::exp(-s * x) * 2.0 * std::exp(-2.0 * x); }, 0, 40);
  const double gamma_ref = oracle::simpson(
      [&](double x) { return std::exp(-s * x) * x * std::exp(-x / 0.5) / (0.5 * 0.5); }, 0, 60);
  const double unif_ref = oracle::simpson([&](double x) { return std::exp(-s * x); }, 0.5, 1.5);
  CHECK(ServiceDistribution::exponential(2.0).laplace(s) == doctest::Approx(exp_ref).epsilon(1e-10));
  CHECK(ServiceDistribution::gamma(2.0, 0.5).laplace(s) == doctest::Approx(gamma_ref).epsilon(1e-10));
  CHECK(ServiceDistribution::uniform(0.5, 1.5).laplace(s) == doctest::Approx(unif_ref).epsilon(1e-10));
  CHECK(ServiceDistribution::deterministic(1.0).laplace(s) == doctest::Approx(std::exp(-s)));
  CHECK(ServiceDistribution::empirical({1.0, 3.0}).laplace(s) ==
        doctest::Approx(0.5 * (std::exp(-s) + std::exp(-3 * s))));
  CHECK(ServiceDistribution::gamma(3.0, 2.0).laplace(0.0) == 1.0);
}

TEST_CASE("queue path bookkeeping") {
  QueuePath path(ArrivalProcess(0.8), ServiceDistribution::exponential(1.0), 11);
  auto prev = path.next();
  CHECK(prev.wait == 0.0);
  for (int i = 0; i < 1000; ++i) {
    const auto c = path.next();
    CHECK(c.arrival >= prev.arrival);
    CHECK(c.departure == doctest::Approx(c.arrival + c.wait + c.service));
    // FIFO single server: service starts when the previous customer leaves.
    CHECK(c.arrival + c.wait == doctest::Approx(std::max(c.arrival, prev.departure)));
    prev = c;
  }
}

TEST_CASE("M/M/1 stationary wait law") {
  const double lambda = 0.6;
  const auto set = stationary_wait_samples(ArrivalProcess(lambda), ServiceDistribution::exponential(1.0),
                                           400000, std::nullopt, DelayConvention::WaitingBeforeService, 5);
  CHECK(set.burn_in == 10000);
  std::vector<double> zero(set.samples.size());
  for (std::size_t i = 0; i < zero.size(); ++i) zero[i] = set.samples[i] == 0.0 ? 1.0 : 0.0;
  const auto p0 = batch_means(zero);
  const auto mean = batch_means(set.samples);
  CHECK(std::abs(p0.value - (1.0 - lambda)) < 4 * p0.std_error);
  CHECK(std::abs(mean.value - oracle::mg1_mean_wait(lambda, 1.0, 2.0)) < 4 * mean.std_error);
}

TEST_CASE("M/D/1 and M/G/1 mean waits follow the P-K mean formula") {
  const double lambda = 0.7;
  struct Case {
    ServiceDistribution s;
    double es2;
  };
  for (const auto& c : {Case{ServiceDistribution::deterministic(1.0), 1.0},
                        Case{ServiceDistribution::gamma(2.0, 0.5), 1.5},
                        Case{ServiceDistribution::uniform(0.5, 1.5), 1.0 + 1.0 / 12.0}}) {
    const auto set = stationary_wait_samples(ArrivalProcess(lambda), c.s, 300000, std::nullopt,
                                             DelayConvention::WaitingBeforeService, 9);
    const auto mean = batch_means(set.samples);
    CHECK(std::abs(mean.value - oracle::mg1_mean_wait(lambda, 1.0, c.es2)) < 4 * mean.std_error);
  }
}

TEST_CASE("sojourn delay adds the customer's own service") {
  const auto s = ServiceDistribution::deterministic(1.0);
  const auto w = stationary_wait_samples(ArrivalProcess(0.5), s, 1000, 100, DelayConvention::WaitingBeforeService, 3);
  const auto d = stationary_wait_samples(ArrivalProcess(0.5), s, 1000, 100, DelayConvention::Sojourn, 3);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(d.samples[i] == doctest::Approx(w.samples[i] + 1.0));
}

TEST_CASE("zero arrival rate and zero samples") {
  const auto s = ServiceDistribution::exponential(1.0);
  CHECK_THROWS_AS(stationary_wait_samples(ArrivalProcess(0.5), s, 0, std::nullopt,
                                          DelayConvention::WaitingBeforeService, 1),
                  InvalidArgument);
  RandomSource rng(1);
  CHECK(std::isinf(ArrivalProcess(0.0).sample_interarrival(rng)));
}

TEST_CASE("delay convention names") {
  CHECK(to_string(DelayConvention::Sojourn) == "sojourn");
  CHECK(parse_delay_convention("waiting") == DelayConvention::WaitingBeforeService);
  CHECK_FALSE(parse_delay_convention("queue").has_value());
}
