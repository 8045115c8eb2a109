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
#include <limits>

#include "qcl/error.hpp"
#include "qcl/numerics.hpp"

using namespace qcl;

TEST_CASE("golden section finds quadratic extrema") {
  const auto mx = golden_section_extremize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0,
                                           1e-10, Extremum::Maximize);
  CHECK(std::abs(mx.argument - 0.3) <= 1e-7);
  CHECK(mx.converged);
  CHECK_FALSE(mx.at_boundary);
  CHECK(mx.hi - mx.lo <= 1e-10);
  const auto mn = golden_section_extremize([](double x) { return (x + 2.0) * (x + 2.0) + 3.0; }, -10.0, 10.0,
                                           1e-10, Extremum::Minimize);
  CHECK(std::abs(mn.argument + 2.0) <= 1e-7);
  CHECK(mn.value == doctest::Approx(3.0));
}

TEST_CASE("golden section reports boundary optima") {
  const auto r = golden_section_extremize([](double x) { return x; }, 0.0, 2.0, 1e-9, Extremum::Maximize);
  CHECK(r.argument == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.at_boundary);
}

TEST_CASE("golden section tie preference on flat objectives") {
  const auto flat = [](double) { return 1.0; };
  const auto lo = golden_section_extremize(flat, 0.0, 1.0, 1e-9, Extremum::Minimize, TiePreference::Lower);
  const auto hi = golden_section_extremize(flat, 0.0, 1.0, 1e-9, Extremum::Minimize, TiePreference::Upper);
  CHECK(lo.argument < 1e-8);
  CHECK(hi.argument > 1.0 - 1e-8);
}

TEST_CASE("golden section rejects bad input") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(golden_section_extremize(f, 1.0, 0.0, 1e-9, Extremum::Maximize), InvalidArgument);
  CHECK_THROWS_AS(golden_section_extremize(f, 0.0, 1.0, 0.0, Extremum::Maximize), InvalidArgument);
  const auto nan = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK_THROWS_AS(golden_section_extremize(nan, 0.0, 1.0, 1e-6, Extremum::Maximize), NumericalError);
}

TEST_CASE("Laplace quadrature against closed forms") {
  for (double u : {0.05, 0.1, 1.0, 10.0, 50.0}) {
    for (double kappa : {0.01, 0.1, 1.0, 10.0}) {
      const double q = quadrature_laplace([kappa](double x) { return -std::expm1(-kappa * x); }, u);
      CHECK(std::abs(q - kappa / (u * (u + kappa))) <= 1e-9);
    }
    CHECK(quadrature_laplace([](double) { return 0.3; }, u) == doctest::Approx(0.3 / u).epsilon(1e-12));
    CHECK(quadrature_laplace([](double) { return 0.0; }, u) == 0.0);
  }
}

TEST_CASE("Laplace quadrature failures are reported") {
  CHECK_THROWS_AS(quadrature_laplace([](double) { return 0.5; }, 0.0), InvalidArgument);
  CHECK_THROWS_AS(quadrature_laplace([](double) { return 2.0; }, 1.0), InvalidArgument);
  // A jump in p defeats the error target; the caller hears about it.
  const auto step = [](double x) { return x > 1.0 ? 1.0 : 0.0; };
  const auto r = quadrature_laplace_detailed(step, 1.0);
  CHECK_FALSE(r.converged);
  CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
  CHECK_THROWS_AS(quadrature_laplace(step, 1.0), NumericalError);
}
