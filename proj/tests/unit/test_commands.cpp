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
#include <sstream>

#include "oracles.hpp"
#include "qcl/commands.hpp"
#include "qcl/error.hpp"
#include "qcl/validation.hpp"

using namespace qcl;
using nlohmann::json;

TEST_CASE("capacity command") {
  const auto r = run_capacity(parse_config(json{{"lambda", 0.5}, {"kappa", 1.0}}));
  CHECK(r["method"] == "ClosedFormMM1");
  CHECK(r["bits_per_sec"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(r["diagnostics"].contains("alpha"));
  CHECK(r["diagnostics"].contains("E_p_W"));
  CHECK(run_capacity(parse_config(json{{"lambda", 0.0}}))["bits_per_sec"].get<double>() == 0.0);
  CHECK_THROWS_WITH_AS(run_capacity(parse_config(json{{"lambda", 1.2}})),
                       doctest::Contains("unstable: lambda >= mu"), UnstableQueue);
  const auto b = run_capacity(parse_config(json{{"channel", {{"kind", "bijective"}}}, {"n", 20000}}));
  CHECK(b["method"] == "Bound-Lower");
  CHECK(b.contains("upper_bound"));
}

TEST_CASE("optimize command") {
  const auto mm1 = run_optimize(parse_config(json{{"kappa", 1.0}, {"n", 0}}));
  CHECK(std::abs(mm1["lambda_star"].get<double>() - 0.585786) <= 1e-6);
  CHECK(mm1["general_laplace"]["lambda_star"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(mm1["discrepancy"]["flagged"].get<bool>());
  CHECK_FALSE(mm1.contains("monte_carlo"));

  const auto md1 = run_optimize(
      parse_config(json{{"kappa", 1.0}, {"n", 0}, {"service", {{"kind", "deterministic"}, {"value", 1.0}}}}));
  CHECK(std::abs(md1["lambda_star"].get<double>() - 0.622459) <= 1e-6);
  CHECK(md1["method"] == "PKTransform");
  CHECK_FALSE(md1.contains("general_laplace"));

  // Only the general route applies to a deadline with exponential service.
  const auto dl = run_optimize(parse_config(json{{"n", 0}, {"decoherence", {{"family", "deadline"}, {"deadline", 1.0}}}}));
  CHECK(dl["method"] == "GeneralLaplace");
  CHECK_FALSE(dl.contains("discrepancy"));

  CHECK_THROWS_AS(run_optimize(parse_config(json{{"channel", {{"kind", "bsc"}}}})), ConfigError);
}

TEST_CASE("optimize certifies the closed-form rate by simulation") {
  const auto r = run_optimize(parse_config(json{{"kappa", 1.0}, {"n", 200000}, {"seed", 3}}));
  REQUIRE(r.contains("monte_carlo"));
  CHECK(r["monte_carlo"]["closed_form_higher"].get<bool>());
}

TEST_CASE("sweep command") {
  const auto full = run_sweep(parse_config(
      json{{"kappas", {0.01, 0.1, 1.0}}, {"grid", {{"start", 0.01}, {"stop", 0.99}, {"step", 0.01}}}, {"n", 0}}));
  CHECK(full.rows.size() == 297);
  CHECK(full.warnings.empty());
  CHECK(full.rows[0].kappa == 0.01);
  CHECK(full.rows[99].kappa == 0.1);
  CHECK(full.rows[200].capacity_analytic == doctest::Approx(oracle::mm1_erasure(full.rows[200].lambda, 1.0)));
  CHECK_FALSE(full.rows[0].capacity_mc.has_value());

  std::ostringstream empty;
  write_sweep_csv(run_sweep(parse_config(json{{"grid", json::array()}})), empty);
  CHECK(empty.str() == "lambda,kappa,capacity_analytic,capacity_mc,mc_stderr\n");

  const auto single = run_sweep(parse_config(json{{"grid", {0.5}}, {"n", 0}}));
  REQUIRE(single.rows.size() == 1);
  std::ostringstream line;
  write_sweep_csv(single, line);
  CHECK(line.str().find("\n0.5,1,0.3333333333333333,,\n") != std::string::npos);

  const auto trimmed = run_sweep(parse_config(json{{"grid", {0.0, 0.5, 1.0, 1.5}}, {"n", 0}}));
  CHECK(trimmed.rows.size() == 1);
  CHECK(trimmed.warnings.size() == 3);
}

TEST_CASE("sweep with Monte Carlo columns is reproducible") {
  const auto cfg = parse_config(json{{"grid", {0.3, 0.6}}, {"kappas", {1.0}}, {"n", 20000}, {"seed", 5}});
  std::ostringstream a, b;
  write_sweep_csv(run_sweep(cfg), a);
  write_sweep_csv(run_sweep(cfg), b);
  CHECK(a.str() == b.str());
  const auto rows = run_sweep(cfg).rows;
  for (const auto& r : rows) {
    REQUIRE(r.capacity_mc.has_value());
    CHECK(std::abs(*r.capacity_mc - r.capacity_analytic) < 4 * *r.mc_stderr);
  }
}

TEST_CASE("sweep needs an analytic route") {
  CHECK_THROWS_AS(run_sweep(parse_config(json{{"channel", {{"kind", "bijective"}}}, {"n", 0}})), ConfigError);
}

TEST_CASE("simulate command") {
  const auto out = run_simulate(parse_config(json{{"n", 200000}, {"seed", 9}}));
  CHECK(out.transcript.records.size() == 200000);
  CHECK(out.summary["formula"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(out.summary["within_tolerance"].get<bool>());
  const auto empty = run_simulate(parse_config(json{{"n", 0}}));
  CHECK(empty.transcript.records.empty());
  CHECK(empty.summary["estimate"].is_null());
  const auto bsc = run_simulate(parse_config(json{{"n", 1000}, {"channel", {{"kind", "bsc"}}}}));
  CHECK(bsc.summary.contains("csir"));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("suite names") {
  CHECK(parse_suite("service-optimality") == Suite::ServiceOptimality);
  CHECK_FALSE(parse_suite("everything").has_value());
  CHECK(suite_criteria(Suite::All).size() == 11);
}

TEST_CASE("validation has power against a wrong capacity formula") {
  ValidationOptions opts;
  opts.n = 200000;
  opts.seed = 3;
  const auto good = run_criterion(1, opts);
  CHECK(good.pass);
  // alpha enters with the wrong sign.
  opts.mm1_formula = [](double l, double k) { return l * (1.0 - l) / (1.0 + l / (1.0 + k)); };
  const auto bad = run_criterion(1, opts);
  CHECK_FALSE(bad.pass);
  CHECK(bad.name == "mm1-erasure-capacity-vs-simulation");
}

TEST_CASE("fast criteria pass") {
  for (int c : {4, 10}) CHECK(run_criterion(c).pass);
  CHECK_THROWS_AS(run_criterion(12), InvalidArgument);
}
