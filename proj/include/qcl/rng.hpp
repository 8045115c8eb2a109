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

#include <cstdint>
#include <random>

namespace qcl {

// Seedable, splittable pseudorandom source.
//
// The engine is mt19937_64; each (seed, stream) pair is expanded through
// SplitMix64 so that sibling streams are decorrelated. Uniform and
// exponential variates are produced from raw 64-bit outputs so that they are
// identical across standard library implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream. Deterministic in (seed, stream path, id).
  RandomSource split(std::uint64_t id) const;

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Exp(1) draw.
  double standard_exponential();

  double gamma(double shape, double scale);

  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Named sub-streams used by the simulators. Keeping arrivals and services on
// separate streams gives common random numbers across service laws.
namespace streams {
inline constexpr std::uint64_t kInterarrival = 1;
inline constexpr std::uint64_t kService = 2;
inline constexpr std::uint64_t kInput = 3;
inline constexpr std::uint64_t kChannel = 4;
}  // namespace streams

}  // namespace qcl
