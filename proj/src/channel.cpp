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

#include "qcl/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "overloaded.hpp"
#include "qcl/error.hpp"
#include "qcl/numerics.hpp"

namespace qcl {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << p;
    throw InvalidArgument(os.str());
  }
}

void require_simplex(std::span<const double> dist, const char* what) {
  if (dist.empty()) throw InvalidArgument(std::string(what) + ": empty distribution");
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument(std::string(what) + ": negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": entries sum to " << sum << ", expected 1";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

// ---- DecoherenceModel -------------------------------------------------------

DecoherenceModel::DecoherenceModel(std::string family, Function p, Function laplace,
                                   std::optional<double> kappa)
    : family_(std::move(family)), p_(std::move(p)), laplace_(std::move(laplace)), kappa_(kappa) {}

DecoherenceModel DecoherenceModel::exponential(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("decoherence rate kappa must be finite and nonnegative");
  }
  return DecoherenceModel(
      "exponential", [kappa](double w) { return -std::expm1(-kappa * w); },
      [kappa](double u) { return kappa / (u * (u + kappa)); }, kappa);
}

DecoherenceModel DecoherenceModel::constant(double c) {
  require_probability(c, "constant erasure probability");
  return DecoherenceModel(
      "constant", [c](double) { return c; }, [c](double u) { return c / u; }, std::nullopt);
}

DecoherenceModel DecoherenceModel::deadline(double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidArgument("deadline must be nonnegative");
  return DecoherenceModel(
      "deadline", [d](double w) { return w > d ? 1.0 : 0.0; },
      [d](double u) { return std::exp(-u * d) / u; }, std::nullopt);
}

DecoherenceModel DecoherenceModel::custom(Function p, Function laplace) {
  if (!p) throw InvalidArgument("custom decoherence model needs a probability function");
  return DecoherenceModel("custom", std::move(p), std::move(laplace), std::nullopt);
}

double DecoherenceModel::probability(double w) const {
  const double p = p_(w);
  require_probability(p, "erasure probability p(w)");
  return p;
}

double DecoherenceModel::laplace(double u) const {
  if (!(u > 0.0)) throw InvalidArgument("Laplace argument must be positive");
  if (laplace_) return laplace_(u);
  return quadrature_laplace([this](double x) { return probability(x); }, u);
}

// ---- BitFlipModel -----------------------------------------------------------

BitFlipModel::BitFlipModel(Function phi, std::optional<double> kappa)
    : phi_(std::move(phi)), kappa_(kappa) {}

BitFlipModel BitFlipModel::exponential(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("bit-flip rate kappa must be finite and nonnegative");
  }
  return BitFlipModel([kappa](double w) { return -0.5 * std::expm1(-kappa * w); }, kappa);
}

BitFlipModel BitFlipModel::custom(Function phi) {
  if (!phi) throw InvalidArgument("custom bit-flip model needs a function");
  return BitFlipModel(std::move(phi), std::nullopt);
}

double BitFlipModel::flip_probability(double w) const {
  const double phi = phi_(w);
  if (!(phi >= 0.0 && phi <= 0.5)) {
    std::ostringstream os;
    os << "bit-flip probability phi(w) must lie in [0,0.5], got " << phi << " at w=" << w;
    throw InvalidArgument(os.str());
  }
  return phi;
}

// ---- BijectionTable ---------------------------------------------------------

BijectionTable::BijectionTable(std::vector<std::string> alphabet,
                               std::vector<std::vector<int>> rows)
    : alphabet_(std::move(alphabet)), rows_(std::move(rows)) {
  const int m = size();
  if (m < 2) throw InvalidArgument("bijection table needs an alphabet of at least 2 symbols");
  {
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("bijection table alphabet has duplicate symbols");
    }
  }
  if (static_cast<int>(rows_.size()) != m) {
    throw InvalidArgument("bijection table needs one row per input symbol");
  }
  for (int x = 0; x < m; ++x) {
    const auto& row = rows_[x];
    std::vector<bool> seen(m, false);
    if (static_cast<int>(row.size()) != m) {
      throw InvalidArgument("row g(" + alphabet_[x] + ",.) has the wrong length");
    }
    for (int y : row) {
      if (y < 0 || y >= m || seen[y]) {
        throw InvalidArgument("row g(" + alphabet_[x] + ",.) is not a permutation of the alphabet");
      }
      seen[y] = true;
    }
  }
}

BijectionTable BijectionTable::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("bijection table: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("alphabet") || !doc.contains("g")) {
    throw InvalidArgument("bijection table must be an object with \"alphabet\" and \"g\"");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "alphabet" && key != "g") {
      throw InvalidArgument("bijection table: unknown key \"" + key + "\"");
    }
  }
  const auto label = [](const nlohmann::json& j) -> std::string {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.dump();
    throw InvalidArgument("bijection table symbols must be strings or integers");
  };

  const auto& alpha = doc["alphabet"];
  if (!alpha.is_array()) throw InvalidArgument("bijection table: \"alphabet\" must be an array");
  std::vector<std::string> alphabet;
  for (const auto& a : alpha) alphabet.push_back(label(a));

  const auto index_of = [&](const std::string& s) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw InvalidArgument("bijection table: unknown symbol \"" + s + "\"");
    return static_cast<int>(it - alphabet.begin());
  };

  const auto& g = doc["g"];
  if (!g.is_object()) throw InvalidArgument("bijection table: \"g\" must be an object");
  if (g.size() != alphabet.size()) {
    throw InvalidArgument("bijection table: \"g\" needs exactly one row per alphabet symbol");
  }
  std::vector<std::vector<int>> rows(alphabet.size());
  for (const auto& [key, row] : g.items()) {
    const int x = index_of(key);
    if (!row.is_array()) throw InvalidArgument("bijection table: row \"" + key + "\" must be an array");
    for (const auto& y : row) rows[x].push_back(index_of(label(y)));
  }
  return BijectionTable(std::move(alphabet), std::move(rows));
}

BijectionTable BijectionTable::binary_xor() { return cyclic(2); }

BijectionTable BijectionTable::cyclic(int m) {
  if (m < 2) throw InvalidArgument("cyclic table needs m >= 2");
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> rows(m);
  for (int x = 0; x < m; ++x) {
    alphabet.push_back(std::to_string(x));
    for (int n = 0; n < m; ++n) rows[x].push_back((x + n) % m);
  }
  return BijectionTable(std::move(alphabet), std::move(rows));
}

int BijectionTable::apply(int x, int noise) const {
  if (x < 0 || x >= size()) throw InvalidArgument("input symbol outside the alphabet");
  if (noise < 0 || noise >= size()) throw InvalidArgument("noise symbol outside the alphabet");
  return rows_[x][noise];
}

// ---- NoiseLaw ---------------------------------------------------------------

NoiseLaw NoiseLaw::decaying(std::vector<double> base, std::vector<double> target, double kappa) {
  require_simplex(base, "noise law base");
  require_simplex(target, "noise law target");
  if (base.size() != target.size()) throw InvalidArgument("noise law base/target size mismatch");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidArgument("noise law kappa must be >= 0");
  NoiseLaw law;
  law.size_ = static_cast<int>(base.size());
  law.base_ = std::move(base);
  law.target_ = std::move(target);
  law.kappa_ = kappa;
  return law;
}

NoiseLaw NoiseLaw::constant(std::vector<double> probs) {
  auto target = probs;
  return decaying(std::move(probs), std::move(target), 0.0);
}

NoiseLaw NoiseLaw::bernoulli_flip(double kappa) { return decaying({1.0, 0.0}, {0.5, 0.5}, kappa); }

NoiseLaw NoiseLaw::custom(int size, Function dist) {
  if (size < 2 || !dist) throw InvalidArgument("custom noise law needs size >= 2 and a function");
  NoiseLaw law;
  law.size_ = size;
  law.custom_ = std::move(dist);
  return law;
}

std::vector<double> NoiseLaw::distribution(double w) const {
  std::vector<double> out(size_);
  distribution(w, out);
  return out;
}

void NoiseLaw::distribution(double w, std::span<double> out) const {
  if (custom_) {
    auto d = custom_(w);
    if (static_cast<int>(d.size()) != size_) throw InvalidArgument("custom noise law returned wrong size");
    require_simplex(d, "custom noise law");
    std::copy(d.begin(), d.end(), out.begin());
    return;
  }
  const double keep = std::exp(-kappa_ * w);
  for (int k = 0; k < size_; ++k) out[k] = keep * base_[k] + (1.0 - keep) * target_[k];
}

// ---- channels ---------------------------------------------------------------


void validate_channel(const ChannelKind& channel) {
  std::visit(detail::overloaded{
                 [](const ErasureChannel& e) {
                   if (e.alphabet_size < 2) throw InvalidArgument("erasure alphabet size must be >= 2");
                 },
                 [](const BinarySymmetricChannel&) {},
                 [](const RandomBijectiveChannel& b) {
                   if (b.noise.size() != b.table.size()) {
                     throw InvalidArgument("noise alphabet size must match the bijection table");
                   }
                 },
             },
             channel);
}

int alphabet_size(const ChannelKind& channel) {
  return std::visit(detail::overloaded{
                        [](const ErasureChannel& e) { return e.alphabet_size; },
                        [](const BinarySymmetricChannel&) { return 2; },
                        [](const RandomBijectiveChannel& b) { return b.table.size(); },
                    },
                    channel);
}

std::string channel_name(const ChannelKind& channel) {
  return std::visit(detail::overloaded{
                        [](const ErasureChannel&) { return std::string("erasure"); },
                        [](const BinarySymmetricChannel&) { return std::string("bsc"); },
                        [](const RandomBijectiveChannel&) { return std::string("bijective"); },
                    },
                    channel);
}

int apply_channel(const ChannelKind& channel, int x, double w, RandomSource& rng) {
  if (x < 0 || x >= alphabet_size(channel)) throw InvalidArgument("input symbol outside the alphabet");
  if (!(w >= 0.0)) throw InvalidArgument("delay must be nonnegative");
  return std::visit(
      detail::overloaded{
          [&](const ErasureChannel& e) {
            return rng.uniform() < e.erasure.probability(w) ? kErased : x;
          },
          [&](const BinarySymmetricChannel& b) {
            return rng.uniform() < b.flip.flip_probability(w) ? 1 - x : x;
          },
          [&](const RandomBijectiveChannel& b) {
            thread_local std::vector<double> dist;
            dist.resize(b.noise.size());
            b.noise.distribution(w, dist);
            return b.table.apply(x, sample_categorical(dist, rng));
          },
      },
      channel);
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("binary_entropy needs q in [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double discrete_entropy(std::span<const double> dist) {
  require_simplex(dist, "discrete_entropy");
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

int sample_categorical(std::span<const double> dist, RandomSource& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    acc += dist[k];
    if (u < acc) return static_cast<int>(k);
  }
  // Rounding left u >= sum; fall back to the last symbol with mass.
  for (std::size_t k = dist.size(); k-- > 0;) {
    if (dist[k] > 0.0) return static_cast<int>(k);
  }
  return 0;
}

}  // namespace qcl
