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

#include "qcl/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "overloaded.hpp"
#include "qcl/error.hpp"

namespace qcl {

std::string to_string(DelayConvention c) {
  return c == DelayConvention::Sojourn ? "sojourn" : "waiting";
}

std::optional<DelayConvention> parse_delay_convention(const std::string& s) {
  if (s == "waiting" || s == "waiting_before_service") return DelayConvention::WaitingBeforeService;
  if (s == "sojourn") return DelayConvention::Sojourn;
  return std::nullopt;
}

ArrivalProcess::ArrivalProcess(double rate) : rate_(rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("arrival rate must be a finite nonnegative number");
  }
}

double ArrivalProcess::sample_interarrival(RandomSource& rng) const {
  const double e = rng.standard_exponential();
  if (rate_ == 0.0) return std::numeric_limits<double>::infinity();
  return e / rate_;
}

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }


double mean_of(const ServiceDistribution::Kind& kind) {
  return std::visit(
      detail::overloaded{
          [](const ServiceDistribution::Exponential& e) { return 1.0 / e.rate; },
          [](const ServiceDistribution::Deterministic& d) { return d.value; },
          [](const ServiceDistribution::Gamma& g) { return g.shape * g.scale; },
          [](const ServiceDistribution::Uniform& u) { return 0.5 * (u.a + u.b); },
          [](const ServiceDistribution::Empirical& e) {
            return std::accumulate(e.samples.begin(), e.samples.end(), 0.0) /
                   static_cast<double>(e.samples.size());
          },
      },
      kind);
}

}  // namespace

ServiceDistribution::ServiceDistribution(Kind kind) : kind_(std::move(kind)), mean_(mean_of(kind_)) {
  if (!positive_finite(mean_)) throw InvalidArgument("service mean must be positive");
}

ServiceDistribution ServiceDistribution::exponential(double rate) {
  if (!positive_finite(rate)) throw InvalidArgument("exponential service rate must be positive");
  return ServiceDistribution(Exponential{rate});
}

ServiceDistribution ServiceDistribution::deterministic(double value) {
  if (!positive_finite(value)) throw InvalidArgument("deterministic service time must be positive");
  return ServiceDistribution(Deterministic{value});
}

ServiceDistribution ServiceDistribution::gamma(double shape, double scale) {
  if (!positive_finite(shape) || !positive_finite(scale)) {
    throw InvalidArgument("gamma service needs positive shape and scale");
  }
  return ServiceDistribution(Gamma{shape, scale});
}

ServiceDistribution ServiceDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw InvalidArgument("uniform service needs 0 <= a < b");
  }
  return ServiceDistribution(Uniform{a, b});
}

ServiceDistribution ServiceDistribution::empirical(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("empirical service distribution has no samples");
  for (double x : samples) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("empirical service samples must be finite and nonnegative");
    }
  }
  return ServiceDistribution(Empirical{std::move(samples)});
}

std::string ServiceDistribution::name() const {
  std::ostringstream os;
  std::visit(detail::overloaded{
                 [&](const Exponential& e) { os << "Exponential(" << e.rate << ")"; },
                 [&](const Deterministic& d) { os << "Deterministic(" << d.value << ")"; },
                 [&](const Gamma& g) { os << "Gamma(" << g.shape << "," << g.scale << ")"; },
                 [&](const Uniform& u) { os << "Uniform(" << u.a << "," << u.b << ")"; },
                 [&](const Empirical& e) { os << "Empirical(n=" << e.samples.size() << ")"; },
             },
             kind_);
  return os.str();
}

double ServiceDistribution::second_moment() const {
  return std::visit(
      detail::overloaded{
          [](const Exponential& e) { return 2.0 / (e.rate * e.rate); },
          [](const Deterministic& d) { return d.value * d.value; },
          [](const Gamma& g) { return g.shape * (g.shape + 1.0) * g.scale * g.scale; },
          [](const Uniform& u) { return (u.a * u.a + u.a * u.b + u.b * u.b) / 3.0; },
          [](const Empirical& e) {
            double acc = 0.0;
            for (double x : e.samples) acc += x * x;
            return acc / static_cast<double>(e.samples.size());
          },
      },
      kind_);
}

double ServiceDistribution::laplace(double s) const {
  if (!(s >= 0.0)) throw InvalidArgument("Laplace transform argument must be nonnegative");
  if (s == 0.0) return 1.0;
  return std::visit(
      detail::overloaded{
          [s](const Exponential& e) { return e.rate / (e.rate + s); },
          [s](const Deterministic& d) { return std::exp(-s * d.value); },
          [s](const Gamma& g) { return std::pow(1.0 + g.scale * s, -g.shape); },
          [s](const Uniform& u) {
            const double width = s * (u.b - u.a);
            return std::exp(-s * u.a) * (-std::expm1(-width)) / width;
          },
          [s](const Empirical& e) {
            double acc = 0.0;
            for (double x : e.samples) acc += std::exp(-s * x);
            return acc / static_cast<double>(e.samples.size());
          },
      },
      kind_);
}

double ServiceDistribution::sample(RandomSource& rng) const {
  return std::visit(
      detail::overloaded{
          [&](const Exponential& e) { return rng.standard_exponential() / e.rate; },
          [](const Deterministic& d) { return d.value; },
          [&](const Gamma& g) { return rng.gamma(g.shape, g.scale); },
          [&](const Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
          [&](const Empirical& e) { return e.samples[rng.index(e.samples.size())]; },
      },
      kind_);
}

double lindley_step(double w, double s, double t_next) { return std::max(0.0, w + s - t_next); }

void require_stable(const ArrivalProcess& arrival, const ServiceDistribution& service) {
  if (!(arrival.rate() < service.rate())) {
    std::ostringstream os;
    os << "unstable: lambda >= mu (lambda=" << arrival.rate() << ", mu=" << service.rate() << ")";
    throw UnstableQueue(os.str());
  }
}

std::size_t default_burn_in(const ArrivalProcess& arrival, const ServiceDistribution& service) {
  const double gap = service.rate() - arrival.rate();
  const double relax = gap > 0.0 ? std::ceil(10.0 / gap) : 0.0;
  return std::max<std::size_t>(10'000, static_cast<std::size_t>(std::min(relax, 1e9)));
}

QueuePath::QueuePath(ArrivalProcess arrival, ServiceDistribution service, std::uint64_t seed)
    : arrival_(arrival),
      service_(std::move(service)),
      interarrivals_(RandomSource(seed).split(streams::kInterarrival)),
      services_(RandomSource(seed).split(streams::kService)) {}

QueuePath::Customer QueuePath::next() {
  const double t = arrival_.sample_interarrival(interarrivals_);
  clock_ += t;
  wait_ = started_ ? lindley_step(wait_, last_service_, t) : 0.0;
  started_ = true;
  last_service_ = service_.sample(services_);
  return Customer{clock_, last_service_, wait_, clock_ + wait_ + last_service_};
}

WaitSampleSet stationary_wait_samples(const ArrivalProcess& arrival,
                                      const ServiceDistribution& service, std::size_t n,
                                      std::optional<std::size_t> burn_in,
                                      DelayConvention convention, std::uint64_t seed) {
  require_stable(arrival, service);
  if (n == 0) throw InvalidArgument("stationary_wait_samples needs n >= 1");
  WaitSampleSet out;
  out.burn_in = burn_in.value_or(default_burn_in(arrival, service));
  out.seed = seed;
  out.convention = convention;
  out.samples.reserve(n);

  QueuePath path(arrival, service, seed);
  for (std::size_t i = 0; i < out.burn_in; ++i) path.next();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = path.next();
    out.samples.push_back(convention == DelayConvention::Sojourn ? c.wait + c.service : c.wait);
  }
  return out;
}

}  // namespace qcl
