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

#include <stdexcept>
#include <string>

namespace qcl {

// Base of every error thrown by the library. The C API maps each subclass to
// a distinct qcl_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or malformed model (negative rate, phi > 0.5, non-bijective
// table, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// lambda >= mu: the queue has no stationary regime.
class UnstableQueue : public Error {
 public:
  using Error::Error;
};

// Optimizer or quadrature failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcl
