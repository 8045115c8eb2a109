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

#include "qcl/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "qcl/error.hpp"

namespace qcl {

EstimateWithError batch_means(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n == 0) throw InvalidArgument("cannot estimate from an empty series");

  long double total = 0.0L;
  for (double v : series) total += v;
  EstimateWithError e;
  e.n = n;
  e.value = static_cast<double>(total / static_cast<long double>(n));

  const auto batch = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t batches = n / batch;
  if (batches < 2) {
    // Too short for batching; fall back to the i.i.d. standard error.
    if (n < 2) return e;
    long double ss = 0.0L;
    for (double v : series) ss += (v - e.value) * (v - e.value);
    e.std_error = static_cast<double>(std::sqrt(ss / (n - 1) / n));
    return e;
  }

  std::vector<double> means(batches);
  long double grand = 0.0L;
  for (std::size_t b = 0; b < batches; ++b) {
    long double acc = 0.0L;
    for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) acc += series[i];
    means[b] = static_cast<double>(acc / batch);
    grand += means[b];
  }
  const double centre = static_cast<double>(grand / batches);
  long double ss = 0.0L;
  for (double m : means) ss += (m - centre) * (m - centre);
  e.std_error = static_cast<double>(std::sqrt(ss / (batches - 1) / batches));
  return e;
}

Transcript simulate_transmission(const QueueChannelSpec& spec, std::size_t n, std::uint64_t seed,
                                 std::optional<std::size_t> burn_in) {
  spec.validate();
  Transcript t;
  t.spec = spec;
  t.seed = seed;
  t.burn_in = burn_in.value_or(default_burn_in(spec.arrival, spec.service));
  if (n == 0) return t;
  if (spec.lambda() == 0.0) throw InvalidArgument("cannot transmit symbols with arrival rate 0");

  const RandomSource root(seed);
  RandomSource inputs = root.split(streams::kInput);
  RandomSource noise = root.split(streams::kChannel);
  const auto m = static_cast<std::uint64_t>(alphabet_size(spec.channel));
  const bool sojourn = spec.convention == DelayConvention::Sojourn;

  QueuePath path(spec.arrival, spec.service, seed);
  for (std::size_t i = 0; i < t.burn_in; ++i) path.next();

  t.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = path.next();
    TranscriptRecord r;
    r.x = static_cast<int>(inputs.index(m));
    r.a = c.arrival;
    r.d = c.departure;
    r.s = c.service;
    r.w = sojourn ? c.wait + c.service : c.wait;
    r.y = apply_channel(spec.channel, r.x, r.w, noise);
    t.records.push_back(r);
  }
  return t;
}

namespace {

void put_double(std::ostream& os, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, res.ptr - buf);
}

void put_symbol(std::ostream& os, const ChannelKind& channel, int s) {
  if (s == kErased) {
    os << '?';
  } else if (const auto* b = std::get_if<RandomBijectiveChannel>(&channel)) {
    os << b->table.alphabet()[s];
  } else {
    os << s;
  }
}

double log2_alphabet(const QueueChannelSpec& spec) {
  return std::log2(static_cast<double>(alphabet_size(spec.channel)));
}

const ErasureChannel& erasure_of(const Transcript& t) {
  const auto* e = std::get_if<ErasureChannel>(&t.spec.channel);
  if (!e) throw InvalidArgument("transcript is not from an erasure channel");
  if (t.records.empty()) throw InvalidArgument("empty transcript");
  return *e;
}

EstimateWithError scaled(EstimateWithError e, double factor) {
  e.value *= factor;
  e.std_error *= std::abs(factor);
  return e;
}

// d/dq of the binary entropy, in bits.
double binary_entropy_slope(double q) { return std::log2((1.0 - q) / q); }

}  // namespace

void write_transcript_csv(const Transcript& transcript, std::ostream& os) {
  os << "index,x,a,d,s,w,y\n";
  std::size_t i = 0;
  for (const auto& r : transcript.records) {
    os << i++ << ',';
    put_symbol(os, transcript.spec.channel, r.x);
    os << ',';
    put_double(os, r.a);
    os << ',';
    put_double(os, r.d);
    os << ',';
    put_double(os, r.s);
    os << ',';
    put_double(os, r.w);
    os << ',';
    put_symbol(os, transcript.spec.channel, r.y);
    os << '\n';
  }
}

EstimateWithError estimate_erasure_capacity(const Transcript& transcript) {
  erasure_of(transcript);
  std::vector<double> kept;
  kept.reserve(transcript.records.size());
  for (const auto& r : transcript.records) kept.push_back(r.y == kErased ? 0.0 : 1.0);
  return scaled(batch_means(kept), transcript.spec.lambda() * log2_alphabet(transcript.spec));
}

EstimateWithError estimate_erasure_capacity_from_waits(const Transcript& transcript) {
  const auto& e = erasure_of(transcript);
  std::vector<double> keep;
  keep.reserve(transcript.records.size());
  for (const auto& r : transcript.records) keep.push_back(1.0 - e.erasure.probability(r.w));
  return scaled(batch_means(keep), transcript.spec.lambda() * log2_alphabet(transcript.spec));
}

EstimateWithError expectation_over_samples(const std::function<double(double)>& f,
                                           std::span<const double> waits) {
  std::vector<double> values;
  values.reserve(waits.size());
  for (double w : waits) values.push_back(f(w));
  return batch_means(values);
}

EstimateWithError estimate_expectation_over_pi(const std::function<double(double)>& f,
                                               const QueueChannelSpec& spec, std::size_t n,
                                               std::optional<std::size_t> burn_in,
                                               std::uint64_t seed) {
  spec.validate();
  const auto waits =
      stationary_wait_samples(spec.arrival, spec.service, n, burn_in, spec.convention, seed);
  return expectation_over_samples(f, waits.samples);
}

PhiExpectations phi_expectations(const BitFlipModel& flip, std::span<const double> waits) {
  std::vector<double> phi;
  std::vector<double> h;
  phi.reserve(waits.size());
  h.reserve(waits.size());
  for (double w : waits) {
    const double p = flip.flip_probability(w);
    phi.push_back(p);
    h.push_back(binary_entropy(p));
  }
  return PhiExpectations{batch_means(h), batch_means(phi)};
}

EstimateWithError bsc_capacity_from_waits(const BitFlipModel& flip, double lambda,
                                          std::span<const double> waits, bool csir) {
  const auto e = phi_expectations(flip, waits);
  EstimateWithError out;
  out.n = waits.size();
  if (csir) {
    out.value = lambda * (1.0 - e.mean_entropy_phi.value);
    out.std_error = lambda * e.mean_entropy_phi.std_error;
  } else {
    const double m = e.mean_phi.value;
    out.value = lambda * (1.0 - binary_entropy(m));
    out.std_error = e.mean_phi.std_error == 0.0
                        ? 0.0
                        : lambda * std::abs(binary_entropy_slope(m)) * e.mean_phi.std_error;
  }
  return out;
}

EstimateWithError estimate_bsc_capacity(const Transcript& transcript, bool csir) {
  const auto* b = std::get_if<BinarySymmetricChannel>(&transcript.spec.channel);
  if (!b) throw InvalidArgument("transcript is not from a binary symmetric channel");
  if (transcript.records.empty()) throw InvalidArgument("empty transcript");
  std::vector<double> waits;
  waits.reserve(transcript.records.size());
  for (const auto& r : transcript.records) waits.push_back(r.w);
  return bsc_capacity_from_waits(b->flip, transcript.spec.lambda(), waits, csir);
}

namespace {

double entropy_of_normalized(std::vector<double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  for (double& x : v) x /= sum;
  return discrete_entropy(v);
}

}  // namespace

NoiseEntropyEstimates noise_entropy_estimates(const NoiseLaw& noise, std::span<const double> waits,
                                              std::size_t buckets) {
  const std::size_t n = waits.size();
  if (n < 2) throw InvalidArgument("noise entropy estimates need at least two consecutive delays");
  if (buckets == 0) throw InvalidArgument("bucket count must be positive");
  const auto k = static_cast<std::size_t>(noise.size());

  NoiseEntropyEstimates out;
  std::vector<double> dist(k);
  std::vector<double> mean(k, 0.0);
  std::vector<double> per_sample(n);

  // E[H(N(W))] and the averaged law.
  for (std::size_t i = 0; i < n; ++i) {
    noise.distribution(waits[i], dist);
    per_sample[i] = discrete_entropy(dist);
    for (std::size_t j = 0; j < k; ++j) mean[j] += dist[j];
  }
  out.mean_noise_entropy = batch_means(per_sample);
  for (double& m : mean) m /= static_cast<double>(n);

  // H(mean law), delta-method error through the gradient -log2(mean).
  out.entropy_of_mean_noise.value = entropy_of_normalized(mean);
  out.entropy_of_mean_noise.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    noise.distribution(waits[i], dist);
    double l = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mean[j] > 0.0) l -= dist[j] * std::log2(mean[j]);
    }
    per_sample[i] = l;
  }
  out.entropy_of_mean_noise.std_error = batch_means(per_sample).std_error;

  // One-step kernel: bucket W_i by quantile, average N(W_{i+1}) per bucket.
  const std::size_t pairs = n - 1;
  std::vector<double> sorted(waits.begin(), waits.begin() + pairs);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (std::size_t b = 1; b < buckets; ++b) edges.push_back(sorted[b * pairs / buckets]);
  edges.push_back(sorted.back());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  // Bucket j holds edges[j-1] < w <= edges[j]; an atom (e.g. W = 0) gets its own bucket.
  const auto bucket_of = [&](double w) {
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), w) - edges.begin());
  };

  std::vector<std::vector<double>> kernel(edges.size(), std::vector<double>(k, 0.0));
  std::vector<std::size_t> counts(edges.size(), 0);
  std::vector<std::size_t> bucket_index(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t b = std::min(bucket_of(waits[i]), edges.size() - 1);
    bucket_index[i] = b;
    noise.distribution(waits[i + 1], dist);
    for (std::size_t j = 0; j < k; ++j) kernel[b][j] += dist[j];
    ++counts[b];
  }
  std::vector<double> kernel_entropy(edges.size(), 0.0);
  for (std::size_t b = 0; b < edges.size(); ++b) {
    if (counts[b] > 0) kernel_entropy[b] = entropy_of_normalized(kernel[b]);
  }
  per_sample.resize(pairs);
  for (std::size_t i = 0; i < pairs; ++i) per_sample[i] = kernel_entropy[bucket_index[i]];
  out.mean_entropy_of_kernel_noise = batch_means(per_sample);
  return out;
}

BijectiveEstimates bijective_bounds_from_waits(const RandomBijectiveChannel& channel, double lambda,
                                               std::span<const double> waits, std::size_t buckets) {
  const auto e = noise_entropy_estimates(channel.noise, waits, buckets);
  const double log_x = std::log2(static_cast<double>(channel.table.size()));
  const auto capacity = [&](const EstimateWithError& h) {
    return EstimateWithError{lambda * (log_x - h.value), lambda * h.std_error, h.n};
  };
  return BijectiveEstimates{capacity(e.entropy_of_mean_noise),
                            capacity(e.mean_entropy_of_kernel_noise),
                            capacity(e.mean_noise_entropy)};
}

BijectiveEstimates estimate_bijective_bounds(const QueueChannelSpec& spec, std::size_t n,
                                             std::optional<std::size_t> burn_in,
                                             std::uint64_t seed, std::size_t buckets) {
  spec.validate();
  const auto* c = std::get_if<RandomBijectiveChannel>(&spec.channel);
  if (!c) throw InvalidArgument("spec does not describe a random bijective channel");
  const auto waits =
      stationary_wait_samples(spec.arrival, spec.service, n, burn_in, spec.convention, seed);
  return bijective_bounds_from_waits(*c, spec.lambda(), waits.samples, buckets);
}

FormulaCheck validate_formula(double formula_value, const EstimateWithError& estimate,
                              double tolerance_sigma) {
  FormulaCheck c;
  c.formula = formula_value;
  c.estimate = estimate.value;
  c.std_error = estimate.std_error;
  c.tolerance_sigma = tolerance_sigma;
  const double diff = std::abs(estimate.value - formula_value);
  if (estimate.std_error == 0.0) {
    const double ulp_slack =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(formula_value), std::abs(estimate.value));
    c.pass = diff <= ulp_slack;
    c.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return c;
  }
  c.z = diff / estimate.std_error;
  c.pass = c.z <= tolerance_sigma;
  return c;
}

}  // namespace qcl
