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
#include <set>
#include <vector>

#include "qcl/rng.hpp"

using qcl::RandomSource;

TEST_CASE("same seed and stream reproduce the same draws") {
  RandomSource a(42, 3), b(42, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams and seeds are distinct") {
  RandomSource a(42, 1), b(42, 2), c(43, 1);
  const auto x = a.next_u64();
  CHECK(x != b.next_u64());
  CHECK(x != c.next_u64());
}

TEST_CASE("split is deterministic and differs by id") {
  const RandomSource root(7);
  auto a = root.split(5), b = root.split(5), c = root.split(6);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
}

TEST_CASE("uniform lies in [0,1) with mean 1/2") {
  RandomSource r(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12/n) ~ 6.5e-4.
  CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("exponential and gamma moments") {
  RandomSource r(2);
  const int n = 200000;
  double e1 = 0.0, e2 = 0.0, g1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = r.standard_exponential();
    REQUIRE(e >= 0.0);
    e1 += e;
    e2 += e * e;
    g1 += r.gamma(2.0, 0.5);
  }
  CHECK(std::abs(e1 / n - 1.0) < 4.0 / std::sqrt(n));
  CHECK(std::abs(e2 / n - 2.0) < 4.0 * std::sqrt(20.0 / n));
  // Gamma(2, 0.5): mean 1, variance 0.5.
  CHECK(std::abs(g1 / n - 1.0) < 4.0 * std::sqrt(0.5 / n));
}

TEST_CASE("index covers its range uniformly") {
  RandomSource r(3);
  std::vector<int> counts(5, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const auto k = r.index(5);
    REQUIRE(k < 5);
    ++counts[k];
  }
  for (int c : counts) CHECK(std::abs(c - n / 5) < 4 * std::sqrt(n * 0.2 * 0.8));
  CHECK(r.index(1) == 0);
}

TEST_CASE("splitmix64 is a bijective-looking mixer") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(qcl::splitmix64(i));
  CHECK(seen.size() == 1000);
}
