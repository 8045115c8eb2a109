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

#include "qcl/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

#include "qcl/capacity.hpp"
#include "qcl/commands.hpp"
#include "qcl/config.hpp"
#include "qcl/error.hpp"
#include "qcl/numerics.hpp"
#include "qcl/rng.hpp"
#include "qcl/simulation.hpp"

namespace qcl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

// Seed for point i of criterion c, decorrelated from other criteria.
std::uint64_t point_seed(const ValidationOptions& o, int c, std::size_t i) {
  return splitmix64(o.seed ^ (static_cast<std::uint64_t>(c) << 40)) + i;
}

QueueChannelSpec erasure_spec(double lambda, ServiceDistribution service, double kappa) {
  QueueChannelSpec s;
  s.arrival = ArrivalProcess(lambda);
  s.service = std::move(service);
  s.channel = ErasureChannel{2, DecoherenceModel::exponential(kappa)};
  return s;
}

std::vector<std::pair<std::string, ServiceDistribution>> unit_mean_services() {
  return {{"Exponential(1)", ServiceDistribution::exponential(1.0)},
          {"Deterministic(1)", ServiceDistribution::deterministic(1.0)},
          {"Gamma(2,0.5)", ServiceDistribution::gamma(2.0, 0.5)}};
}

ServiceDistribution random_service(RandomSource& rng) {
  switch (rng.index(4)) {
    case 0:
      return ServiceDistribution::exponential(1.0);
    case 1:
      return ServiceDistribution::deterministic(1.0);
    case 2: {
      const double shape = 0.5 + 3.5 * rng.uniform();
      return ServiceDistribution::gamma(shape, 1.0 / shape);
    }
    default: {
      const double a = rng.uniform();
      return ServiceDistribution::uniform(a, 2.0 - a);
    }
  }
}

double log_uniform(RandomSource& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

std::vector<double> random_simplex(RandomSource& rng, int k) {
  std::vector<double> v(static_cast<std::size_t>(k));
  for (auto& x : v) x = rng.standard_exponential();
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= total;
  return v;
}

double binary_entropy_slope(double q) { return std::log2((1.0 - q) / q); }

// Std error of lambda (H(mean a) - H(mean b)) via the linearized paired
// series, batch means over the pairs.
EstimateWithError entropy_of_mean_difference(std::span<const double> a, std::span<const double> b,
                                             double lambda) {
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
  const double ga = binary_entropy_slope(ma);
  const double gb = binary_entropy_slope(mb);
  std::vector<double> lin(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) lin[i] = lambda * (ga * a[i] - gb * b[i]);
  auto e = batch_means(lin);
  e.value = lambda * (binary_entropy(ma) - binary_entropy(mb));
  return e;
}

std::vector<double> phi_series(std::span<const double> waits, double kappa) {
  std::vector<double> out(waits.size());
  for (std::size_t i = 0; i < waits.size(); ++i) out[i] = 0.5 * (1.0 - std::exp(-kappa * waits[i]));
  return out;
}

class Recorder {
 public:
  void add(std::string name, bool pass, std::string detail) {
    subs_.push_back({std::move(name), pass, std::move(detail)});
  }
  std::vector<SubCheck> take() { return std::move(subs_); }

 private:
  std::vector<SubCheck> subs_;
};

void criterion_mm1_erasure(const ValidationOptions& o, Recorder& r) {
  const auto formula = o.mm1_formula ? o.mm1_formula : [](double l, double k) {
    return mm1_capacity_closed_form(l, k).bits_per_sec;
  };
  std::size_t i = 0;
  for (double kappa : {0.1, 1.0}) {
    for (double lambda : {0.3, 0.5, 0.7}) {
      const auto t0 = Clock::now();
      const auto spec = erasure_spec(lambda, ServiceDistribution::exponential(1.0), kappa);
      const auto t = simulate_transmission(spec, o.n, point_seed(o, 1, i++));
      const auto est = estimate_erasure_capacity(t);
      const double secs = seconds_since(t0);
      const auto c = validate_formula(formula(lambda, kappa), est, o.tolerance_sigma);
      std::ostringstream d;
      d << "formula=" << fmt(c.formula) << " estimate=" << fmt(est.value)
        << " se=" << fmt(est.std_error) << " z=" << fmt(c.z) << " seconds=" << fmt(secs);
      r.add("kappa=" + fmt(kappa) + " lambda=" + fmt(lambda), c.pass && secs < 30.0, d.str());
    }
  }
}

void criterion_pk_transform(const ValidationOptions& o, Recorder& r) {
  std::size_t i = 0;
  for (const auto& [label, service] : unit_mean_services()) {
    for (double lambda : {0.3, 0.7}) {
      const auto waits = stationary_wait_samples(ArrivalProcess(lambda), service, o.n, std::nullopt,
                                                 DelayConvention::WaitingBeforeService,
                                                 point_seed(o, 2, i++));
      for (double kappa : {0.1, 1.0}) {
        const auto est = expectation_over_samples(
            [kappa](double w) { return std::exp(-kappa * w); }, waits.samples);
        const double exact = pk_wait_transform(lambda, service, kappa);
        const auto c = validate_formula(exact, est, o.tolerance_sigma);
        r.add(label + " lambda=" + fmt(lambda) + " kappa=" + fmt(kappa), c.pass,
              "transform=" + fmt(exact) + " estimate=" + fmt(est.value) + " se=" + fmt(est.std_error) +
                  " z=" + fmt(c.z));
      }
    }
  }
}

void criterion_optimal_rate(const ValidationOptions&, Recorder& r) {
  for (const auto& [label, service] : unit_mean_services()) {
    for (double kappa : {0.01, 0.1, 1.0}) {
      const auto closed = optimal_lambda_mg1(service, kappa);
      const double mu = service.rate();
      const auto gs = golden_section_extremize(
          [&](double l) { return l * pk_wait_transform(l, service, kappa); }, 0.0,
          mu * (1.0 - 1e-12), 1e-10, Extremum::Maximize);
      const double delta = std::abs(closed.lambda - gs.argument);
      r.add(label + " kappa=" + fmt(kappa), delta <= 1e-6,
            "closed=" + fmt(closed.lambda) + " golden=" + fmt(gs.argument) + " delta=" + fmt(delta));
    }
  }
  const auto exp1 = ServiceDistribution::exponential(1.0);
  for (const auto& [kappa, expected] : {std::pair{1.0, 0.585786}, std::pair{0.01, 0.909500}}) {
    const double got = optimal_lambda_mg1(exp1, kappa).lambda;
    const double delta = std::abs(got - expected);
    r.add("M/M/1 kappa=" + fmt(kappa) + " reference " + fmt(expected), delta <= 1e-6,
          "computed=" + fmt(got) + " delta=" + fmt(delta));
  }
}

void criterion_erasure_dominance(const ValidationOptions&, Recorder& r) {
  const auto det = ServiceDistribution::deterministic(1.0);
  const std::vector<std::pair<std::string, ServiceDistribution>> others = {
      {"Exponential(1)", ServiceDistribution::exponential(1.0)},
      {"Gamma(2,0.5)", ServiceDistribution::gamma(2.0, 0.5)},
      {"Uniform(0.5,1.5)", ServiceDistribution::uniform(0.5, 1.5)}};
  for (double kappa : {0.1, 1.0}) {
    for (int step = 1; step <= 9; ++step) {
      const double lambda = step / 10.0;
      const double c_det = erasure_capacity(erasure_spec(lambda, det, kappa)).bits_per_sec;
      bool ok = true;
      std::string detail = "det=" + fmt(c_det);
      for (const auto& [label, s] : others) {
        const double c = erasure_capacity(erasure_spec(lambda, s, kappa)).bits_per_sec;
        ok = ok && c_det > c;
        detail += " " + label + "=" + fmt(c);
      }
      r.add("kappa=" + fmt(kappa) + " lambda=" + fmt(lambda), ok, detail);
    }
  }
}

void criterion_bsc_dominance(const ValidationOptions& o, Recorder& r) {
  const auto det = ServiceDistribution::deterministic(1.0);
  const std::vector<std::pair<std::string, ServiceDistribution>> others = {
      {"Exponential(1)", ServiceDistribution::exponential(1.0)},
      {"Gamma(2,0.5)", ServiceDistribution::gamma(2.0, 0.5)},
      {"Uniform(0.5,1.5)", ServiceDistribution::uniform(0.5, 1.5)}};
  std::size_t i = 0;
  for (double kappa : {0.1, 1.0}) {
    for (int step = 1; step <= 9; ++step) {
      const double lambda = step / 10.0;
      // One seed per grid point: every service sees the same arrival stream.
      const std::uint64_t seed = point_seed(o, 5, i++);
      const auto wd = stationary_wait_samples(ArrivalProcess(lambda), det, o.n, std::nullopt,
                                              DelayConvention::WaitingBeforeService, seed);
      const auto phi_d = phi_series(wd.samples, kappa);
      bool ok = true;
      std::string detail;
      for (const auto& [label, s] : others) {
        const auto wa = stationary_wait_samples(ArrivalProcess(lambda), s, o.n, std::nullopt,
                                                DelayConvention::WaitingBeforeService, seed);
        const auto phi_a = phi_series(wa.samples, kappa);
        // C_det - C_alt = lambda (H(E phi_alt) - H(E phi_det)).
        const auto margin = entropy_of_mean_difference(phi_a, phi_d, lambda);
        const bool pass = margin.value > o.tolerance_sigma * margin.std_error;
        ok = ok && pass;
        detail += " " + label + ": margin=" + fmt(margin.value) + " se=" + fmt(margin.std_error);
      }
      r.add("kappa=" + fmt(kappa) + " lambda=" + fmt(lambda), ok, detail.substr(1));
    }
  }
}

void criterion_timing_ordering(const ValidationOptions& o, Recorder& r) {
  RandomSource rng(o.seed, 6);
  const std::size_t n = std::max<std::size_t>(o.n / 5, 1000);
  for (int k = 0; k < 20; ++k) {
    const auto service = random_service(rng);
    const double lambda = service.rate() * (0.05 + 0.9 * rng.uniform());
    const double kappa = log_uniform(rng, 0.05, 5.0);
    const auto waits = stationary_wait_samples(ArrivalProcess(lambda), service, n, std::nullopt,
                                               DelayConvention::WaitingBeforeService,
                                               point_seed(o, 6, static_cast<std::size_t>(k)));
    const auto flip = BitFlipModel::exponential(kappa);
    const double with = bsc_capacity_from_waits(flip, lambda, waits.samples, true).value;
    const double without = bsc_capacity_from_waits(flip, lambda, waits.samples, false).value;
    r.add("random spec " + std::to_string(k + 1), with >= without - 1e-12,
          service.name() + " lambda=" + fmt(lambda) + " kappa=" + fmt(kappa) + " csir=" + fmt(with) +
              " no_csir=" + fmt(without));
  }

  const auto det = ServiceDistribution::deterministic(1.0);
  std::size_t i = 100;
  for (double lambda : {0.01, 0.05}) {
    const double kappa = 1.0;
    const auto waits = stationary_wait_samples(ArrivalProcess(lambda), det, o.n, std::nullopt,
                                               DelayConvention::WaitingBeforeService,
                                               point_seed(o, 6, i++));
    const auto phi = phi_series(waits.samples, kappa);
    const double m = std::accumulate(phi.begin(), phi.end(), 0.0) / static_cast<double>(phi.size());
    const double g = binary_entropy_slope(m);
    // Paired series whose mean is (csir - no_csir) / lambda to first order.
    std::vector<double> gap(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) gap[j] = lambda * (g * phi[j] - binary_entropy(phi[j]));
    auto e = batch_means(gap);
    const auto flip = BitFlipModel::exponential(kappa);
    const double with = bsc_capacity_from_waits(flip, lambda, waits.samples, true).value;
    const double without = bsc_capacity_from_waits(flip, lambda, waits.samples, false).value;
    const double diff = with - without;
    r.add("Deterministic(1) lambda=" + fmt(lambda) + " equality", diff <= o.tolerance_sigma * e.std_error,
          "csir=" + fmt(with) + " no_csir=" + fmt(without) + " gap=" + fmt(diff) +
              " se=" + fmt(e.std_error));
  }
}

void criterion_bijective_sandwich(const ValidationOptions& o, Recorder& r) {
  RandomSource rng(o.seed, 7);
  const std::size_t n = std::max<std::size_t>(o.n / 5, 1000);
  const double sig = o.tolerance_sigma;
  for (int k = 0; k < 10; ++k) {
    const int m = 2 + static_cast<int>(rng.index(4));
    BijectionTable table = BijectionTable::cyclic(m);
    if (rng.index(2) == 1) {
      std::vector<std::string> alphabet;
      std::vector<std::vector<int>> rows;
      for (int x = 0; x < m; ++x) {
        alphabet.push_back("s" + std::to_string(x));
        std::vector<int> row(static_cast<std::size_t>(m));
        std::iota(row.begin(), row.end(), 0);
        for (int j = m - 1; j > 0; --j) {
          std::swap(row[static_cast<std::size_t>(j)],
                    row[rng.index(static_cast<std::uint64_t>(j) + 1)]);
        }
        rows.push_back(std::move(row));
      }
      table = BijectionTable(std::move(alphabet), std::move(rows));
    }
    const double kappa = log_uniform(rng, 0.05, 5.0);
    QueueChannelSpec spec;
    spec.service = random_service(rng);
    spec.arrival = ArrivalProcess(spec.mu() * (0.1 + 0.8 * rng.uniform()));
    spec.channel =
        RandomBijectiveChannel{table, NoiseLaw::decaying(random_simplex(rng, m), random_simplex(rng, m), kappa)};
    const double lambda = spec.lambda();

    const auto b = estimate_bijective_bounds(spec, n, std::nullopt, point_seed(o, 7, 2 * k));
    // Independent estimate of lambda (log|X| - H(E N(W))) from fresh delays.
    const auto& noise = std::get<RandomBijectiveChannel>(spec.channel).noise;
    const auto waits = stationary_wait_samples(spec.arrival, spec.service, n, std::nullopt,
                                               spec.convention, point_seed(o, 7, 2 * k + 1));
    const auto ent = noise_entropy_estimates(noise, waits.samples);
    const double averaged = lambda * (std::log2(m) - ent.entropy_of_mean_noise.value);
    const double averaged_se = lambda * ent.entropy_of_mean_noise.std_error;

    const double lower_slack = sig * std::hypot(b.lower.std_error, averaged_se);
    const double upper_slack = sig * std::hypot(b.upper.std_error, averaged_se);
    const bool lower_ok = b.lower.value <= averaged + lower_slack;
    const bool upper_ok = averaged <= b.upper.value + upper_slack;
    const bool csir_ok = b.upper.value <= b.csir_exact.value + sig * std::hypot(b.upper.std_error, b.csir_exact.std_error);
    std::ostringstream d;
    d << spec.service.name() << " |X|=" << m << " lambda=" << fmt(lambda) << " kappa=" << fmt(kappa)
      << " lower=" << fmt(b.lower.value) << " averaged_noise=" << fmt(averaged)
      << " upper=" << fmt(b.upper.value) << " csir=" << fmt(b.csir_exact.value);
    r.add("random bijective " + std::to_string(k + 1), lower_ok && upper_ok && csir_ok, d.str());
  }

  // XOR table with Bernoulli noise is the BSC.
  const double lambda = 0.5, kappa = 1.0;
  QueueChannelSpec bij;
  bij.arrival = ArrivalProcess(lambda);
  bij.channel = RandomBijectiveChannel{BijectionTable::binary_xor(), NoiseLaw::bernoulli_flip(kappa)};
  QueueChannelSpec bsc = bij;
  bsc.channel = BinarySymmetricChannel{BitFlipModel::exponential(kappa)};
  const auto b = estimate_bijective_bounds(bij, o.n, std::nullopt, point_seed(o, 7, 100));
  const auto t = simulate_transmission(bsc, o.n, point_seed(o, 7, 101));
  for (bool csir : {true, false}) {
    const auto ref = estimate_bsc_capacity(t, csir);
    const auto& mine = csir ? b.csir_exact : b.lower;
    const double se = std::hypot(ref.std_error, mine.std_error);
    const double diff = std::abs(ref.value - mine.value);
    r.add(std::string("xor/bernoulli vs bsc, ") + (csir ? "csir" : "no csir"), diff <= sig * se,
          "bijective=" + fmt(mine.value) + " bsc=" + fmt(ref.value) + " se=" + fmt(se));
  }
}

void criterion_curve_shape(const ValidationOptions&, Recorder& r) {
  nlohmann::json doc = {{"kappas", {0.01, 0.1, 1.0}},
                        {"grid", {{"start", 0.01}, {"stop", 0.99}, {"step", 0.01}}},
                        {"n", 0}};
  const auto sweep = run_sweep(parse_config(doc));
  std::ostringstream csv;
  write_sweep_csv(sweep, csv);

  // Read the rows back from the CSV text.
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  std::map<double, std::vector<std::pair<double, double>>> slices;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string l, k, c;
    std::getline(fields, l, ',');
    std::getline(fields, k, ',');
    std::getline(fields, c, ',');
    slices[std::stod(k)].emplace_back(std::stod(l), std::stod(c));
    ++rows;
  }
  r.add("row count", rows == 297, std::to_string(rows) + " rows");

  for (const auto& [kappa, pts] : slices) {
    std::size_t peak = 0;
    for (std::size_t j = 1; j < pts.size(); ++j) {
      if (pts[j].second > pts[peak].second) peak = j;
    }
    bool unimodal = true;
    for (std::size_t j = 1; j < pts.size(); ++j) {
      const bool rising = pts[j].second > pts[j - 1].second;
      if ((j <= peak) != rising) unimodal = false;
    }
    const double lambda_star = optimal_lambda_mg1(ServiceDistribution::exponential(1.0), kappa).lambda;
    const double offset = std::abs(pts[peak].first - lambda_star);
    r.add("kappa=" + fmt(kappa) + " unimodal", unimodal, "peak at lambda=" + fmt(pts[peak].first));
    r.add("kappa=" + fmt(kappa) + " argmax", offset <= 0.01 + 1e-12,
          "grid argmax=" + fmt(pts[peak].first) + " lambda*=" + fmt(lambda_star));
    if (kappa == 0.01) {
      const double ratio = pts.back().second / pts[peak].second;
      r.add("kappa=0.01 drop at lambda=0.99 below 25% of peak", ratio < 0.25,
            "capacity(0.99)=" + fmt(pts.back().second) + " peak=" + fmt(pts[peak].second) +
                " ratio=" + fmt(ratio));
    }
  }
}

template <class F>
void expect_unstable(Recorder& r, const std::string& name, double lambda, F&& f) {
  std::string detail = "no error raised";
  bool pass = false;
  try {
    f();
  } catch (const UnstableQueue& e) {
    pass = true;
    detail = e.what();
  } catch (const std::exception& e) {
    detail = std::string("wrong error: ") + e.what();
  }
  r.add(name + " lambda=" + fmt(lambda), pass, detail);
}

void criterion_trivial_limits(const ValidationOptions& o, Recorder& r) {
  const double kappa = 1e-6;
  std::size_t i = 0;
  for (double lambda : {0.3, 0.7}) {
    const auto spec = erasure_spec(lambda, ServiceDistribution::exponential(1.0), kappa);
    const double analytic = erasure_capacity(spec).bits_per_sec;
    r.add("analytic kappa=1e-6 lambda=" + fmt(lambda), std::abs(analytic - lambda) <= 1e-3,
          "capacity=" + fmt(analytic));
    const auto est = estimate_erasure_capacity(simulate_transmission(spec, o.n, point_seed(o, 9, i++)));
    r.add("simulated kappa=1e-6 lambda=" + fmt(lambda), std::abs(est.value - lambda) <= 1e-3,
          "estimate=" + fmt(est.value));
  }

  const auto exp1 = ServiceDistribution::exponential(1.0);
  for (double lambda : {1.0, 1.2}) {
    const auto erasure = erasure_spec(lambda, exp1, 1.0);
    QueueChannelSpec bsc = erasure;
    bsc.channel = BinarySymmetricChannel{BitFlipModel::exponential(1.0)};
    QueueChannelSpec bij = erasure;
    bij.channel = RandomBijectiveChannel{};
    const ArrivalProcess arrival(lambda);
    nlohmann::json doc = {{"lambda", lambda}, {"kappa", 1.0}, {"n", 10}};
    expect_unstable(r, "spec.validate", lambda, [&] { erasure.validate(); });
    expect_unstable(r, "mm1_capacity_closed_form", lambda, [&] { mm1_capacity_closed_form(lambda, 1.0); });
    expect_unstable(r, "pk_wait_transform", lambda, [&] { pk_wait_transform(lambda, exp1, 1.0); });
    expect_unstable(r, "delay_transform", lambda,
                    [&] { delay_transform(lambda, exp1, 1.0, DelayConvention::Sojourn); });
    expect_unstable(r, "erasure_capacity", lambda, [&] { erasure_capacity(erasure); });
    expect_unstable(r, "evaluate_capacity(erasure)", lambda, [&] { evaluate_capacity(erasure); });
    expect_unstable(r, "evaluate_capacity(bsc)", lambda, [&] { evaluate_capacity(bsc); });
    expect_unstable(r, "evaluate_capacity(bijective)", lambda, [&] { evaluate_capacity(bij); });
    expect_unstable(r, "stationary_wait_samples", lambda, [&] {
      stationary_wait_samples(arrival, exp1, 10, std::nullopt, DelayConvention::WaitingBeforeService, 1);
    });
    expect_unstable(r, "simulate_transmission", lambda, [&] { simulate_transmission(erasure, 10, 1); });
    expect_unstable(r, "estimate_expectation_over_pi", lambda, [&] {
      estimate_expectation_over_pi([](double) { return 1.0; }, erasure, 10, std::nullopt, 1);
    });
    expect_unstable(r, "estimate_bijective_bounds", lambda,
                    [&] { estimate_bijective_bounds(bij, 10, std::nullopt, 1); });
    expect_unstable(r, "run_capacity", lambda, [&] { run_capacity(parse_config(doc)); });
    expect_unstable(r, "run_simulate", lambda, [&] { run_simulate(parse_config(doc)); });
  }
}

void criterion_numerics(const ValidationOptions&, Recorder& r) {
  double worst = 0.0;
  for (double u : {0.1, 1.0, 10.0}) {
    for (double kappa : {0.1, 1.0, 10.0}) {
      const double q = quadrature_laplace([kappa](double x) { return -std::expm1(-kappa * x); }, u);
      const double exact = kappa / (u * (u + kappa));
      worst = std::max(worst, std::abs(q - exact));
    }
  }
  r.add("quadrature vs closed-form transform", worst <= 1e-8, "max abs error=" + fmt(worst));

  const auto mx = golden_section_extremize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0,
                                           1e-9, Extremum::Maximize);
  const auto mn = golden_section_extremize([](double x) { return 2.0 * (x - 0.7) * (x - 0.7) + 1.0; },
                                           -3.0, 5.0, 1e-9, Extremum::Minimize);
  const double err = std::max(std::abs(mx.argument - 0.3), std::abs(mn.argument - 0.7));
  r.add("golden-section on quadratics", err <= 1e-7, "max argument error=" + fmt(err));
}

void criterion_rate_discrepancy(const ValidationOptions& o, Recorder& r) {
  nlohmann::json doc = {{"lambda", 0.5},
                        {"kappa", 1.0},
                        {"n", o.n},
                        {"seed", point_seed(o, 11, 0)},
                        {"tolerance_sigma", o.tolerance_sigma}};
  const auto report = run_optimize(parse_config(doc));
  const bool both = report.contains("closed_form") && report.contains("general_laplace");
  r.add("both optimal rates reported", both, both ? "closed=" + fmt(report["closed_form"]["lambda_star"].get<double>()) +
                                                        " general=" + fmt(report["general_laplace"]["lambda_star"].get<double>())
                                                  : "missing candidate");
  const bool flagged = report.contains("discrepancy") && report["discrepancy"]["flagged"].get<bool>();
  r.add("discrepancy flagged", flagged,
        report.contains("discrepancy") ? "difference=" + fmt(report["discrepancy"]["abs_difference"].get<double>())
                                       : "no discrepancy entry");
  bool certified = false;
  std::string detail = "no simulation";
  if (report.contains("monte_carlo")) {
    const auto& mc = report["monte_carlo"];
    certified = mc["closed_form_higher"].get<bool>();
    detail = "closed=" + fmt(mc["closed_form"]["value"].get<double>()) +
             " general=" + fmt(mc["general_laplace"]["value"].get<double>()) +
             " difference=" + fmt(mc["difference"]["value"].get<double>()) +
             " se=" + fmt(mc["difference"]["std_error"].get<double>());
  }
  r.add("simulated capacity higher at the closed-form rate", certified, detail);
}

struct CriterionInfo {
  int number;
  const char* name;
  void (*run)(const ValidationOptions&, Recorder&);
};

constexpr CriterionInfo kCriteria[] = {
    {1, "mm1-erasure-capacity-vs-simulation", criterion_mm1_erasure},
    {2, "wait-transform-vs-simulation", criterion_pk_transform},
    {3, "optimal-rate-closed-form-vs-search", criterion_optimal_rate},
    {4, "deterministic-service-erasure-dominance", criterion_erasure_dominance},
    {5, "deterministic-service-bsc-dominance", criterion_bsc_dominance},
    {6, "timing-knowledge-ordering", criterion_timing_ordering},
    {7, "bijective-bound-sandwich", criterion_bijective_sandwich},
    {8, "capacity-curve-shape", criterion_curve_shape},
    {9, "trivial-limits-and-instability", criterion_trivial_limits},
    {10, "numerics-gates", criterion_numerics},
    {11, "optimal-rate-discrepancy-surfaced", criterion_rate_discrepancy},
};

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "all") return Suite::All;
  if (name == "erasure") return Suite::Erasure;
  if (name == "bsc") return Suite::Bsc;
  if (name == "bijective") return Suite::Bijective;
  if (name == "service-optimality") return Suite::ServiceOptimality;
  return std::nullopt;
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::All:
      return "all";
    case Suite::Erasure:
      return "erasure";
    case Suite::Bsc:
      return "bsc";
    case Suite::Bijective:
      return "bijective";
    case Suite::ServiceOptimality:
      return "service-optimality";
  }
  return "all";
}

std::vector<int> suite_criteria(Suite suite) {
  switch (suite) {
    case Suite::All:
      return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    case Suite::Erasure:
      return {1, 2, 3, 8, 9, 10, 11};
    case Suite::Bsc:
      return {6};
    case Suite::Bijective:
      return {7};
    case Suite::ServiceOptimality:
      return {4, 5};
  }
  return {};
}

CheckResult run_criterion(int criterion, const ValidationOptions& options) {
  const auto it = std::find_if(std::begin(kCriteria), std::end(kCriteria),
                               [&](const CriterionInfo& c) { return c.number == criterion; });
  if (it == std::end(kCriteria)) throw InvalidArgument("no criterion " + std::to_string(criterion));
  CheckResult result;
  result.criterion = it->number;
  result.name = it->name;
  Recorder rec;
  const auto t0 = Clock::now();
  try {
    it->run(options, rec);
  } catch (const std::exception& e) {
    rec.add("completed without error", false, e.what());
  }
  result.seconds = seconds_since(t0);
  result.subchecks = rec.take();
  result.pass = !result.subchecks.empty() &&
                std::all_of(result.subchecks.begin(), result.subchecks.end(),
                            [](const SubCheck& s) { return s.pass; });
  return result;
}

std::vector<CheckResult> run_validation(Suite suite, const ValidationOptions& options) {
  std::vector<std::future<CheckResult>> pending;
  for (int c : suite_criteria(suite)) {
    pending.push_back(std::async(std::launch::async, [c, &options] { return run_criterion(c, options); }));
  }
  std::vector<CheckResult> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace qcl
