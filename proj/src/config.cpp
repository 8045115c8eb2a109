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

#include "qcl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  return j;
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " needs \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::uint64_t count(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  throw ConfigError("\"" + key + "\" must be a nonnegative integer");
}

bool boolean(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError("\"" + key + "\" must be true or false");
  return v.get<bool>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ServiceDistribution parse_service(const json& j) {
  require_object(j, "service");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("service needs a \"kind\" string");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "exponential") {
    reject_unknown(j, {"kind", "rate"}, "service");
    return ServiceDistribution::exponential(number_or(j, "rate", 1.0, "service"));
  }
  if (kind == "deterministic") {
    reject_unknown(j, {"kind", "value"}, "service");
    return ServiceDistribution::deterministic(number_or(j, "value", 1.0, "service"));
  }
  if (kind == "gamma") {
    reject_unknown(j, {"kind", "shape", "scale"}, "service");
    return ServiceDistribution::gamma(number(j, "shape", "service"), number(j, "scale", "service"));
  }
  if (kind == "uniform") {
    reject_unknown(j, {"kind", "a", "b"}, "service");
    return ServiceDistribution::uniform(number(j, "a", "service"), number(j, "b", "service"));
  }
  if (kind == "empirical") {
    reject_unknown(j, {"kind", "samples"}, "service");
    if (!j.contains("samples")) throw ConfigError("empirical service needs \"samples\"");
    return ServiceDistribution::empirical(number_list(j["samples"], "service.samples"));
  }
  throw ConfigError("unknown service kind \"" + kind + "\"");
}

DecoherenceModel parse_decoherence(const json* j, double kappa) {
  if (!j) return DecoherenceModel::exponential(kappa);
  require_object(*j, "decoherence");
  const std::string family = j->value("family", std::string("exponential"));
  if (family == "exponential") {
    reject_unknown(*j, {"family"}, "decoherence");
    return DecoherenceModel::exponential(kappa);
  }
  if (family == "constant") {
    reject_unknown(*j, {"family", "value"}, "decoherence");
    return DecoherenceModel::constant(number(*j, "value", "decoherence"));
  }
  if (family == "deadline") {
    reject_unknown(*j, {"family", "deadline"}, "decoherence");
    return DecoherenceModel::deadline(number(*j, "deadline", "decoherence"));
  }
  throw ConfigError("unknown decoherence family \"" + family + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChannelKind parse_channel(const json* j, const json* decoherence, double kappa) {
  if (!j) {
    if (decoherence) return ErasureChannel{2, parse_decoherence(decoherence, kappa)};
    return ErasureChannel{2, DecoherenceModel::exponential(kappa)};
  }
  require_object(*j, "channel");
  const std::string kind = j->value("kind", std::string("erasure"));
  if (kind != "erasure" && decoherence) {
    throw ConfigError("\"decoherence\" only applies to the erasure channel");
  }
  if (kind == "erasure") {
    reject_unknown(*j, {"kind", "alphabet_size"}, "channel");
    const int m = j->contains("alphabet_size") ? static_cast<int>(count(*j, "alphabet_size")) : 2;
    return ErasureChannel{m, parse_decoherence(decoherence, kappa)};
  }
  if (kind == "bsc") {
    reject_unknown(*j, {"kind"}, "channel");
    return BinarySymmetricChannel{BitFlipModel::exponential(kappa)};
  }
  if (kind == "bijective") {
    reject_unknown(*j, {"kind", "table", "table_file", "noise"}, "channel");
    if (j->contains("table") && j->contains("table_file")) {
      throw ConfigError("channel takes either \"table\" or \"table_file\", not both");
    }
    BijectionTable table = BijectionTable::binary_xor();
    if (j->contains("table")) {
      table = BijectionTable::from_json((*j)["table"].dump());
    } else if (j->contains("table_file")) {
      if (!(*j)["table_file"].is_string()) throw ConfigError("channel.table_file must be a string");
      table = BijectionTable::from_json(read_file((*j)["table_file"].get<std::string>()));
    }
    const auto m = static_cast<std::size_t>(table.size());
    std::vector<double> base(m, 0.0);
    base[0] = 1.0;
    std::vector<double> target(m, 1.0 / static_cast<double>(m));
    if (j->contains("noise")) {
      const auto& noise = require_object((*j)["noise"], "channel.noise");
      reject_unknown(noise, {"base", "target"}, "channel.noise");
      if (noise.contains("base")) base = number_list(noise["base"], "channel.noise.base");
      if (noise.contains("target")) target = number_list(noise["target"], "channel.noise.target");
    }
    if (base.size() != m || target.size() != m) {
      throw ConfigError("noise base/target must have one entry per alphabet symbol");
    }
    return RandomBijectiveChannel{std::move(table), NoiseLaw::decaying(base, target, kappa)};
  }
  throw ConfigError("unknown channel kind \"" + kind + "\"");
}

}  // namespace

std::vector<double> lambda_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  std::vector<double> out;
  if (stop < start) return out;
  const auto points = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) {
    const double v = start + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

nlohmann::json parse_json_document(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown(doc,
                 {"lambda", "kappa", "service", "channel", "decoherence", "delay_convention",
                  "receiver_knows_timing", "assume_unpredictable", "n", "burn_in", "seed", "grid",
                  "kappas", "tolerance_sigma", "buckets", "out", "suite"},
                 "configuration");
  ExperimentConfig c;
  c.document = doc;
  try {
    c.kappa = number_or(doc, "kappa", 1.0, "configuration");
    const double lambda = number_or(doc, "lambda", 0.5, "configuration");
    c.spec.arrival = ArrivalProcess(lambda);
    if (doc.contains("service")) c.spec.service = parse_service(doc["service"]);
    c.spec.channel = parse_channel(doc.contains("channel") ? &doc["channel"] : nullptr,
                                   doc.contains("decoherence") ? &doc["decoherence"] : nullptr,
                                   c.kappa);
    validate_channel(c.spec.channel);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (doc.contains("delay_convention")) {
    const auto& v = doc["delay_convention"];
    const auto parsed = v.is_string() ? parse_delay_convention(v.get<std::string>()) : std::nullopt;
    if (!parsed) throw ConfigError("delay_convention must be \"waiting\" or \"sojourn\"");
    c.spec.convention = *parsed;
  }
  if (doc.contains("receiver_knows_timing")) c.spec.receiver_knows_timing = boolean(doc, "receiver_knows_timing");
  if (doc.contains("assume_unpredictable")) c.spec.assume_unpredictable = boolean(doc, "assume_unpredictable");
  if (doc.contains("n")) c.n = count(doc, "n");
  if (doc.contains("burn_in")) c.burn_in = count(doc, "burn_in");
  if (doc.contains("seed")) c.seed = count(doc, "seed");
  if (doc.contains("buckets")) {
    c.buckets = count(doc, "buckets");
    if (c.buckets == 0) throw ConfigError("\"buckets\" must be positive");
  }
  if (doc.contains("tolerance_sigma")) {
    c.tolerance_sigma = number(doc, "tolerance_sigma", "configuration");
    if (!(c.tolerance_sigma > 0.0)) throw ConfigError("tolerance_sigma must be positive");
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("\"out\" must be a string");
    c.out = doc["out"].get<std::string>();
  }
  if (doc.contains("suite")) {
    if (!doc["suite"].is_string()) throw ConfigError("\"suite\" must be a string");
    c.suite = doc["suite"].get<std::string>();
  }
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (g.is_array()) {
      c.lambda_grid = number_list(g, "grid");
    } else {
      require_object(g, "grid");
      reject_unknown(g, {"start", "stop", "step"}, "grid");
      c.lambda_grid = lambda_grid(number(g, "start", "grid"), number(g, "stop", "grid"),
                                  number(g, "step", "grid"));
    }
  }
  if (doc.contains("kappas")) {
    c.kappas = number_list(doc["kappas"], "kappas");
    for (double k : c.kappas) {
      if (!(k >= 0.0)) throw ConfigError("kappas must be nonnegative");
    }
  }
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) { return parse_config(parse_json_document(text)); }

}  // namespace qcl
