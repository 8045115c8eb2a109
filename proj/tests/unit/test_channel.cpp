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
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qcl/channel.hpp"
#include "qcl/error.hpp"
#include "qcl/rng.hpp"

using namespace qcl;

TEST_CASE("decoherence families") {
  const auto e = DecoherenceModel::exponential(2.0);
  CHECK(e.probability(0.0) == 0.0);
  CHECK(e.probability(1.0) == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK(e.kappa() == 2.0);
  const auto c = DecoherenceModel::constant(0.25);
  CHECK(c.probability(123.0) == 0.25);
  CHECK_FALSE(c.kappa().has_value());
  const auto d = DecoherenceModel::deadline(1.5);
  CHECK(d.probability(1.5) == 0.0);
  CHECK(d.probability(1.6) == 1.0);
  CHECK_THROWS_AS(DecoherenceModel::exponential(-1.0), InvalidArgument);
  CHECK_THROWS_AS(DecoherenceModel::constant(1.5), InvalidArgument);
}

TEST_CASE("decoherence transforms agree with direct integration") {
  for (double u : {0.3, 1.0, 4.0}) {
    for (const auto& p : {DecoherenceModel::exponential(0.7), DecoherenceModel::constant(0.4)}) {
      const double ref = oracle::simpson([&](double x) { return std::exp(-u * x) * p.probability(x); }, 0.0,
                                         60.0 / u, 200000);
      CHECK(p.laplace(u) == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK(DecoherenceModel::deadline(2.0).laplace(u) == doctest::Approx(std::exp(-2.0 * u) / u));
  }
}

TEST_CASE("custom decoherence falls back to quadrature") {
  const auto p = DecoherenceModel::custom([](double x) { return x / (1.0 + x); });
  const double ref = oracle::simpson([](double x) { return std::exp(-x) * x / (1.0 + x); }, 0.0, 60.0, 200000);
  CHECK(p.laplace(1.0) == doctest::Approx(ref).epsilon(1e-9));
  const auto bad = DecoherenceModel::custom([](double) { return 1.5; });
  CHECK_THROWS_AS(bad.probability(1.0), InvalidArgument);
}

TEST_CASE("bit flip probability is checked against [0, 1/2]") {
  const auto f = BitFlipModel::exponential(1.0);
  CHECK(f.flip_probability(0.0) == 0.0);
  CHECK(f.flip_probability(1e9) == doctest::Approx(0.5));
  const auto bad = BitFlipModel::custom([](double) { return 0.6; });
  CHECK_THROWS_AS(bad.flip_probability(0.0), InvalidArgument);
}

TEST_CASE("entropies") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.11) == doctest::Approx(oracle::h2(0.11)).epsilon(1e-14));
  CHECK(std::abs(binary_entropy(0.11) - 0.4999160) <= 1e-6);
  CHECK_THROWS_AS(binary_entropy(-0.1), InvalidArgument);
  const std::vector<double> p = {0.5, 0.25, 0.25};
  CHECK(discrete_entropy(p) == doctest::Approx(1.5));
  const std::vector<double> bad = {0.5, 0.6};
  CHECK_THROWS_AS(discrete_entropy(bad), InvalidArgument);
}

TEST_CASE("bijection tables") {
  const auto x = BijectionTable::binary_xor();
  CHECK(x.apply(0, 1) == 1);
  CHECK(x.apply(1, 1) == 0);
  const auto c = BijectionTable::cyclic(5);
  CHECK(c.apply(3, 4) == 2);
  CHECK_THROWS_AS(BijectionTable({"a", "b"}, {{0, 0}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(BijectionTable({"a", "a"}, {{0, 1}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(BijectionTable({"a", "b"}, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(c.apply(5, 0), InvalidArgument);
}

TEST_CASE("bijection table from JSON") {
  std::ifstream in(QCL_TEST_DATA_DIR "/quaternary_table.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto t = BijectionTable::from_json(ss.str());
  CHECK(t.size() == 4);
  CHECK(t.alphabet()[2] == "c");
  CHECK(t.apply(1, 2) == 3);  // g(b, c) = d
  const auto ints = BijectionTable::from_json(R"({"alphabet":[0,1],"g":{"0":[0,1],"1":[1,0]}})");
  CHECK(ints.apply(1, 1) == 0);
  CHECK_THROWS_AS(BijectionTable::from_json(R"({"alphabet":[0,1],"g":{"0":[0,1],"1":[1,0]},"x":1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(BijectionTable::from_json(R"({"alphabet":[0,1],"g":{"0":[0,1],"1":[0,0]}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(BijectionTable::from_json("{"), InvalidArgument);
}

TEST_CASE("noise laws") {
  const auto b = NoiseLaw::bernoulli_flip(1.0);
  const auto d = b.distribution(2.0);
  const double phi = 0.5 * (1.0 - std::exp(-2.0));
  CHECK(d[1] == doctest::Approx(phi));
  CHECK(d[0] + d[1] == doctest::Approx(1.0));
  const auto mix = NoiseLaw::decaying({1.0, 0.0, 0.0}, {0.2, 0.3, 0.5}, 0.5);
  const auto m = mix.distribution(1.0);
  const double a = std::exp(-0.5);
  CHECK(m[0] == doctest::Approx(a + (1 - a) * 0.2));
  CHECK(m[2] == doctest::Approx((1 - a) * 0.5));
  CHECK_THROWS_AS(NoiseLaw::decaying({0.5, 0.6}, {0.5, 0.5}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(NoiseLaw::constant({0.5, 0.5, 0.5}), InvalidArgument);
}

TEST_CASE("channel application") {
  RandomSource rng(4);
  const ChannelKind erase = ErasureChannel{2, DecoherenceModel::constant(1.0)};
  const ChannelKind clean = ErasureChannel{2, DecoherenceModel::constant(0.0)};
  CHECK(apply_channel(erase, 1, 0.0, rng) == kErased);
  CHECK(apply_channel(clean, 1, 5.0, rng) == 1);
  const ChannelKind bsc = BinarySymmetricChannel{BitFlipModel::exponential(1.0)};
  CHECK(apply_channel(bsc, 1, 0.0, rng) == 1);
  int flips = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) flips += apply_channel(bsc, 0, 1e9, rng);
  CHECK(std::abs(flips - n / 2) < 4 * std::sqrt(n * 0.25));
  CHECK(channel_name(bsc) == "bsc");
  CHECK(alphabet_size(ChannelKind{ErasureChannel{4, DecoherenceModel::constant(0.0)}}) == 4);
  CHECK_THROWS_AS(validate_channel(ChannelKind{ErasureChannel{1, DecoherenceModel::constant(0.0)}}),
                  InvalidArgument);
  const ChannelKind mismatched =
      RandomBijectiveChannel{BijectionTable::cyclic(3), NoiseLaw::bernoulli_flip(1.0)};
  CHECK_THROWS_AS(validate_channel(mismatched), InvalidArgument);
}

TEST_CASE("categorical sampling frequencies") {
  RandomSource rng(8);
  const std::vector<double> p = {0.1, 0.6, 0.3};
  std::vector<int> c(3, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++c[static_cast<std::size_t>(sample_categorical(p, rng))];
  for (int k = 0; k < 3; ++k) CHECK(std::abs(c[k] - n * p[k]) < 4 * std::sqrt(n * p[k] * (1 - p[k])));
}
