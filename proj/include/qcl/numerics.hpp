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
#include <functional>

namespace qcl {

enum class Extremum { Maximize, Minimize };

// Which end of the bracket to move toward when the two probes compare equal
// (flat objective).
enum class TiePreference { Lower, Upper };

struct OptimizationResult {
  double argument = 0.0;  // argmax or argmin
  double value = 0.0;
  std::size_t iterations = 0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  bool converged = false;
  // Extremizer lies within tol of an end of the initial bracket.
  bool at_boundary = false;
};

// Golden-section search on [lo, hi] for a unimodal f. Stops once the bracket
// is no wider than tol. Throws NumericalError if f returns a non-finite value.
OptimizationResult golden_section_extremize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol, Extremum mode,
                                            TiePreference tie = TiePreference::Lower);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

inline constexpr double kQuadratureAbsTol = 1e-9;

// int_0^inf exp(-u x) p(x) dx for p bounded in [0,1], u > 0. The substitution
// x = -ln(t)/u maps the half-line onto (0,1]:
//   (1/u) int_0^1 p(-ln(t)/u) dt.
QuadratureResult quadrature_laplace_detailed(const std::function<double(double)>& p, double u);

// As above, throwing NumericalError (with the achieved error estimate) when
// the absolute error target kQuadratureAbsTol is missed.
double quadrature_laplace(const std::function<double(double)>& p, double u);

}  // namespace qcl
