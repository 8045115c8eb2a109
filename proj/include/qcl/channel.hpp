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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcl/rng.hpp"

namespace qcl {

// Output symbol for an erased input.
inline constexpr int kErased = -1;

// Erasure probability p(W) as a function of the delay.
class DecoherenceModel {
 public:
  using Function = std::function<double(double)>;

  // p(w) = 1 - exp(-kappa w). kappa = 0 is the noiseless channel.
  static DecoherenceModel exponential(double kappa);
  // p(w) = c for every w.
  static DecoherenceModel constant(double c);
  // p(w) = 1{w > d}: the symbol is useless once its deadline has passed.
  static DecoherenceModel deadline(double d);
  // Arbitrary p; laplace may be empty, in which case quadrature is used.
  static DecoherenceModel custom(Function p, Function laplace = {});

  double probability(double w) const;

  // p~(u) = int_0^inf exp(-u x) p(x) dx, closed form when known.
  double laplace(double u) const;
  bool has_closed_form_laplace() const { return static_cast<bool>(laplace_); }

  // Set only for the 1 - exp(-kappa w) family.
  std::optional<double> kappa() const { return kappa_; }
  const std::string& family() const { return family_; }

 private:
  DecoherenceModel(std::string family, Function p, Function laplace, std::optional<double> kappa);

  std::string family_;
  Function p_;
  Function laplace_;
  std::optional<double> kappa_;
};

// Bit-flip probability phi(W) in [0, 1/2]. Values outside that range are an
// error, never clamped.
class BitFlipModel {
 public:
  using Function = std::function<double(double)>;

  // phi(w) = (1 - exp(-kappa w)) / 2.
  static BitFlipModel exponential(double kappa);
  static BitFlipModel custom(Function phi);

  double flip_probability(double w) const;
  std::optional<double> kappa() const { return kappa_; }

 private:
  BitFlipModel(Function phi, std::optional<double> kappa);

  Function phi_;
  std::optional<double> kappa_;
};

// g(x, n) over a finite alphabet, with g(x, .) a permutation for every x.
// Symbols are indices into alphabet(); the noise alphabet has the same size.
class BijectionTable {
 public:
  BijectionTable(std::vector<std::string> alphabet, std::vector<std::vector<int>> rows);

  // {"alphabet": [...], "g": {"x": [outputs indexed by noise symbol]}}
  static BijectionTable from_json(const std::string& text);
  // Binary alphabet with g(x, n) = x xor n.
  static BijectionTable binary_xor();
  // Z_m with g(x, n) = (x + n) mod m.
  static BijectionTable cyclic(int m);

  int size() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int apply(int x, int noise) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::vector<int>> rows_;
};

// Noise law N(W) over the noise alphabet:
//   P(N = k | W = w) = e^{-kappa w} base[k] + (1 - e^{-kappa w}) target[k].
// With base = delta_0 and target = (1/2, 1/2) this is Bernoulli(phi(w)) with
// phi(w) = (1 - e^{-kappa w}) / 2. kappa = 0 gives the W-independent law base.
class NoiseLaw {
 public:
  using Function = std::function<std::vector<double>(double)>;

  static NoiseLaw decaying(std::vector<double> base, std::vector<double> target, double kappa);
  static NoiseLaw constant(std::vector<double> probs);
  static NoiseLaw bernoulli_flip(double kappa);
  static NoiseLaw custom(int size, Function dist);

  int size() const { return size_; }
  std::vector<double> distribution(double w) const;
  // Writes the distribution into out (size() entries) without allocating.
  void distribution(double w, std::span<double> out) const;

 private:
  NoiseLaw() = default;

  int size_ = 0;
  std::vector<double> base_;
  std::vector<double> target_;
  double kappa_ = 0.0;
  Function custom_;
};

struct ErasureChannel {
  int alphabet_size = 2;
  DecoherenceModel erasure = DecoherenceModel::exponential(0.0);
};

struct BinarySymmetricChannel {
  BitFlipModel flip = BitFlipModel::exponential(0.0);
};

struct RandomBijectiveChannel {
  BijectionTable table = BijectionTable::binary_xor();
  NoiseLaw noise = NoiseLaw::bernoulli_flip(0.0);
};

using ChannelKind = std::variant<ErasureChannel, BinarySymmetricChannel, RandomBijectiveChannel>;

// Throws InvalidArgument on malformed channels (alphabet size < 2, noise law
// size not matching the table).
void validate_channel(const ChannelKind& channel);

int alphabet_size(const ChannelKind& channel);
std::string channel_name(const ChannelKind& channel);

// Passes x through the channel for a symbol that saw delay w.
int apply_channel(const ChannelKind& channel, int x, double w, RandomSource& rng);

// Entropies are in bits; 0 log 0 = 0.
double binary_entropy(double q);
double discrete_entropy(std::span<const double> dist);

// Samples an index from a probability vector by inversion.
int sample_categorical(std::span<const double> dist, RandomSource& rng);

}  // namespace qcl
