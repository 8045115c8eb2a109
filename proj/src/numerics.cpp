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

#include "qcl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qcl/error.hpp"

namespace qcl {

namespace {

double checked(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os.precision(17);
    os << "objective is not finite at x=" << x << " (value " << y << ")";
    throw NumericalError(os.str());
  }
  return y;
}

}  // namespace

OptimizationResult golden_section_extremize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol, Extremum mode,
                                            TiePreference tie) {
  if (!(lo < hi)) throw InvalidArgument("golden section needs lo < hi");
  if (!(tol > 0.0)) throw InvalidArgument("golden section needs tol > 0");

  // Internally always maximize.
  const double sign = mode == Extremum::Maximize ? 1.0 : -1.0;
  const auto g = [&](double x) { return sign * checked(f, x); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);

  OptimizationResult r;
  const std::size_t max_iter = 400;
  while (b - a > tol && r.iterations < max_iter) {
    ++r.iterations;
    const double scale = std::max({1.0, std::abs(gc), std::abs(gd)});
    const bool flat = std::abs(gc - gd) <= 1e-15 * scale;
    const bool keep_left = flat ? tie == TiePreference::Lower : gc > gd;
    if (keep_left) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }

  r.lo = a;
  r.hi = b;
  r.converged = b - a <= tol;
  r.argument = 0.5 * (a + b);
  r.value = checked(f, r.argument);
  r.at_boundary = (r.argument - lo) <= tol || (hi - r.argument) <= tol;
  return r;
}

QuadratureResult quadrature_laplace_detailed(const std::function<double(double)>& p, double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw InvalidArgument("Laplace argument must be positive");

  const auto integrand = [&](double t) -> double {
    // tanh-sinh never samples the endpoints, so t stays in (0,1).
    const double x = -std::log(t) / u;
    const double v = p(x);
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream os;
      os << "p(x) must lie in [0,1], got " << v << " at x=" << x;
      throw InvalidArgument(os.str());
    }
    return v;
  };

  // p(-ln(t)/u) typically behaves like a power of t near 0 (1 - t^{kappa/u}
  // for the exponential family), which double-exponential quadrature handles.
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  QuadratureResult r;
  double error = 0.0;
  const double integral = integrator.integrate(integrand, 0.0, 1.0, 1e-13, &error);
  r.value = integral / u;
  r.error_estimate = error / u;
  r.converged = r.error_estimate <= kQuadratureAbsTol;
  return r;
}

double quadrature_laplace(const std::function<double(double)>& p, double u) {
  const auto r = quadrature_laplace_detailed(p, u);
  if (!r.converged) {
    std::ostringstream os;
    os << "Laplace quadrature did not converge at u=" << u << " (error estimate "
       << r.error_estimate << ")";
    throw NumericalError(os.str());
  }
  return r.value;
}

}  // namespace qcl
