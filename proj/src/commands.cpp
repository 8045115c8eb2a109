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

#include "qcl/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "qcl/error.hpp"
#include "qcl/numerics.hpp"
#include "qcl/rng.hpp"

namespace qcl {

namespace {

using nlohmann::json;

json estimate_json(const EstimateWithError& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n", e.n}};
}

json capacity_json(const CapacityResult& r) {
  json out = {{"bits_per_sec", r.bits_per_sec}, {"method", to_string(r.method)}};
  if (r.upper_bound) out["upper_bound"] = *r.upper_bound;
  json diag = json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  out["diagnostics"] = diag;
  out["notes"] = r.notes;
  return out;
}

bool is_exponential(const ServiceDistribution& s) {
  return std::holds_alternative<ServiceDistribution::Exponential>(s.kind());
}

QueueChannelSpec with_lambda(QueueChannelSpec spec, double lambda) {
  spec.arrival = ArrivalProcess(lambda);
  return spec;
}

// Analytic capacity, or ConfigError when the spec has no Monte-Carlo-free
// route.
CapacityResult analytic_capacity(const QueueChannelSpec& spec) {
  MonteCarloBudget none;
  none.n = 0;
  try {
    return evaluate_capacity(spec, none);
  } catch (const UnstableQueue&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("no analytic capacity for this configuration: ") + e.what());
  }
}

EstimateWithError transcript_estimate(const Transcript& t) {
  if (std::holds_alternative<BinarySymmetricChannel>(t.spec.channel)) {
    return estimate_bsc_capacity(t, t.spec.receiver_knows_timing);
  }
  return estimate_erasure_capacity(t);
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  if (workers > 0) work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json run_capacity(const ExperimentConfig& config) {
  const auto result = evaluate_capacity(config.spec, config.budget());
  json out = capacity_json(result);
  out["channel"] = channel_name(config.spec.channel);
  out["lambda"] = config.spec.lambda();
  out["mu"] = config.spec.mu();
  out["service"] = config.spec.service.name();
  out["delay_convention"] = to_string(config.spec.convention);
  return out;
}

json run_optimize(const ExperimentConfig& config) {
  const auto* erasure = std::get_if<ErasureChannel>(&config.spec.channel);
  if (!erasure) throw ConfigError("optimize supports the erasure channel only");
  const auto& spec = config.spec;
  const double mu = spec.mu();
  const double log_x = std::log2(static_cast<double>(erasure->alphabet_size));
  const auto kappa = erasure->erasure.kappa();

  json out = {{"service", spec.service.name()},
              {"mu", mu},
              {"decoherence", erasure->erasure.family()},
              {"delay_convention", to_string(spec.convention)}};

  std::optional<double> closed_lambda;
  std::optional<double> general_lambda;

  if (kappa && *kappa > 0.0) {
    const auto opt = optimal_lambda_mg1(spec.service, *kappa);
    closed_lambda = opt.lambda;
    const auto at = erasure_capacity(with_lambda(spec, opt.lambda), config.budget());
    out["closed_form"] = {{"lambda_star", opt.lambda},
                          {"alpha", opt.alpha},
                          {"capacity", at.bits_per_sec},
                          {"method", to_string(at.method)}};
    const auto objective = [&](double l) {
      return l * delay_transform(l, spec.service, *kappa, spec.convention);
    };
    const auto gs = golden_section_extremize(objective, 0.0, mu * (1.0 - 1e-12), 1e-10,
                                             Extremum::Maximize);
    out["golden_section"] = {{"lambda_star", gs.argument}, {"capacity", log_x * gs.value}};
  }

  if (is_exponential(spec.service)) {
    // Rescale time by mu so the general formula sees a unit-rate server:
    // p'(x) = p(x / mu) has transform mu p~(mu u).
    const DecoherenceModel& p = erasure->erasure;
    const auto g = optimal_lambda_general([&](double u) { return mu * p.laplace(mu * u); });
    general_lambda = mu * g.lambda;
    out["general_laplace"] = {{"lambda_star", mu * g.lambda},
                              {"implied_capacity", mu * log_x * g.implied_capacity},
                              {"at_boundary", g.at_boundary},
                              {"degenerate", g.degenerate},
                              {"method", to_string(g.method)},
                              {"caveat", g.caveat}};
  }

  if (!closed_lambda && !general_lambda) {
    if (config.n == 0) throw ConfigError("optimizing this configuration needs n > 0");
    // Common random numbers across lambda keep the objective smooth enough
    // for golden-section search.
    MonteCarloBudget budget = config.budget();
    const auto objective = [&](double l) {
      return erasure_capacity(with_lambda(spec, l), budget).bits_per_sec;
    };
    const auto gs = golden_section_extremize(objective, 1e-6 * mu, mu * (1.0 - 1e-3), 1e-4,
                                             Extremum::Maximize);
    out["lambda_star"] = gs.argument;
    out["capacity"] = gs.value;
    out["method"] = to_string(CapacityMethod::MonteCarlo);
    return out;
  }

  const double primary = closed_lambda ? *closed_lambda : *general_lambda;
  out["lambda_star"] = primary;
  out["capacity"] = closed_lambda ? out["closed_form"]["capacity"]
                                  : out["general_laplace"]["implied_capacity"];
  out["method"] = closed_lambda ? out["closed_form"]["method"] : out["general_laplace"]["method"];

  if (closed_lambda && general_lambda) {
    const double delta = std::abs(*closed_lambda - *general_lambda);
    out["discrepancy"] = {{"abs_difference", delta}, {"flagged", delta > 1e-6}};
  }

  if (closed_lambda && general_lambda && config.n > 0) {
    // Paired delays under common random numbers: both candidate rates drive
    // the same interarrival and service streams.
    const auto waits_closed = stationary_wait_samples(ArrivalProcess(*closed_lambda), spec.service,
                                                      config.n, config.burn_in, spec.convention,
                                                      config.seed);
    const auto waits_general = stationary_wait_samples(ArrivalProcess(*general_lambda), spec.service,
                                                       config.n, config.burn_in, spec.convention,
                                                       config.seed);
    const DecoherenceModel& p = erasure->erasure;
    std::vector<double> a(config.n), b(config.n), diff(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      a[i] = *closed_lambda * log_x * (1.0 - p.probability(waits_closed.samples[i]));
      b[i] = *general_lambda * log_x * (1.0 - p.probability(waits_general.samples[i]));
      diff[i] = a[i] - b[i];
    }
    const auto ea = batch_means(a);
    const auto eb = batch_means(b);
    const auto ed = batch_means(diff);
    const bool certified = ed.value > config.tolerance_sigma * ed.std_error;
    out["monte_carlo"] = {{"closed_form", estimate_json(ea)},
                          {"general_laplace", estimate_json(eb)},
                          {"difference", estimate_json(ed)},
                          {"tolerance_sigma", config.tolerance_sigma},
                          {"closed_form_higher", certified}};
  }
  return out;
}

SweepOutput run_sweep(const ExperimentConfig& config) {
  SweepOutput out;
  std::vector<double> kappas = config.kappas.empty() ? std::vector<double>{config.kappa} : config.kappas;
  std::vector<double> grid = config.document.contains("grid") ? config.lambda_grid
                                                              : std::vector<double>{config.spec.lambda()};
  const double mu = config.spec.mu();
  std::vector<double> kept;
  for (double l : grid) {
    if (l > 0.0 && l < mu) {
      kept.push_back(l);
    } else {
      out.warnings.push_back("lambda=" + format_double(l) + " outside (0, mu=" + format_double(mu) +
                             "); dropped");
    }
  }

  struct Point {
    double lambda, kappa;
  };
  std::vector<Point> points;
  for (double k : kappas) {
    for (double l : kept) points.push_back({l, k});
  }

  // Validate the configuration once up front so errors are not per-row.
  std::vector<QueueChannelSpec> specs;
  specs.reserve(points.size());
  for (const auto& pt : points) {
    json doc = config.document;
    doc["lambda"] = pt.lambda;
    doc["kappa"] = pt.kappa;
    specs.push_back(parse_config(doc).spec);
  }

  out.rows.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    SweepRow row;
    row.lambda = points[i].lambda;
    row.kappa = points[i].kappa;
    row.capacity_analytic = analytic_capacity(specs[i]).bits_per_sec;
    if (config.n > 0) {
      const auto t = simulate_transmission(specs[i], config.n, splitmix64(config.seed + i),
                                           config.burn_in);
      const auto est = transcript_estimate(t);
      row.capacity_mc = est.value;
      row.mc_stderr = est.std_error;
    }
    out.rows[i] = row;
  });
  return out;
}

void write_sweep_csv(const SweepOutput& sweep, std::ostream& os) {
  os << "lambda,kappa,capacity_analytic,capacity_mc,mc_stderr\n";
  for (const auto& r : sweep.rows) {
    os << format_double(r.lambda) << ',' << format_double(r.kappa) << ','
       << format_double(r.capacity_analytic) << ',';
    if (r.capacity_mc) os << format_double(*r.capacity_mc);
    os << ',';
    if (r.mc_stderr) os << format_double(*r.mc_stderr);
    os << '\n';
  }
}

SimulateOutput run_simulate(const ExperimentConfig& config) {
  const auto& spec = config.spec;
  SimulateOutput out;
  out.transcript = simulate_transmission(spec, config.n, config.seed, config.burn_in);
  const auto& t = out.transcript;
  json s = {{"channel", channel_name(spec.channel)},
            {"lambda", spec.lambda()},
            {"mu", spec.mu()},
            {"service", spec.service.name()},
            {"delay_convention", to_string(spec.convention)},
            {"n", config.n},
            {"seed", config.seed},
            {"burn_in", t.burn_in}};
  if (config.n == 0) {
    s["estimate"] = nullptr;
    out.summary = s;
    return out;
  }

  std::optional<double> formula;
  std::optional<EstimateWithError> primary;
  if (std::holds_alternative<ErasureChannel>(spec.channel)) {
    primary = estimate_erasure_capacity(t);
    s["estimate"] = estimate_json(*primary);
    s["estimate_from_waits"] = estimate_json(estimate_erasure_capacity_from_waits(t));
  } else if (std::holds_alternative<BinarySymmetricChannel>(spec.channel)) {
    const auto csir = estimate_bsc_capacity(t, true);
    const auto no_csir = estimate_bsc_capacity(t, false);
    primary = spec.receiver_knows_timing ? csir : no_csir;
    s["estimate"] = estimate_json(*primary);
    s["csir"] = estimate_json(csir);
    s["no_csir"] = estimate_json(no_csir);
  } else {
    const auto& channel = std::get<RandomBijectiveChannel>(spec.channel);
    std::vector<double> waits(t.records.size());
    std::transform(t.records.begin(), t.records.end(), waits.begin(),
                   [](const TranscriptRecord& r) { return r.w; });
    const auto b = bijective_bounds_from_waits(channel, spec.lambda(), waits, config.buckets);
    primary = spec.receiver_knows_timing ? b.csir_exact : b.lower;
    s["estimate"] = estimate_json(*primary);
    s["csir_exact"] = estimate_json(b.csir_exact);
    s["lower"] = estimate_json(b.lower);
    s["upper"] = estimate_json(b.upper);
  }

  try {
    formula = analytic_capacity(spec).bits_per_sec;
  } catch (const ConfigError&) {
  }
  if (formula) {
    const auto check = validate_formula(*formula, *primary, config.tolerance_sigma);
    s["formula"] = *formula;
    s["z"] = std::isfinite(check.z) ? json(check.z) : json(nullptr);
    s["within_tolerance"] = check.pass;
  }
  out.summary = s;
  return out;
}

}  // namespace qcl
