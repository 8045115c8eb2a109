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

#include "qcl/qcl.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcl/commands.hpp"
#include "qcl/config.hpp"
#include "qcl/error.hpp"
#include "qcl/validation.hpp"

struct qcl_config {
  nlohmann::json doc = nlohmann::json::object();
};

namespace {

thread_local std::string last_error;

class IoError : public qcl::Error {
 public:
  using qcl::Error::Error;
};

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
qcl_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const qcl::ConfigError& e) {
    last_error = e.what();
    return QCL_ERR_CONFIG;
  } catch (const qcl::UnstableQueue& e) {
    last_error = e.what();
    return QCL_ERR_UNSTABLE;
  } catch (const qcl::InvalidArgument& e) {
    last_error = e.what();
    return QCL_ERR_INVALID_ARGUMENT;
  } catch (const qcl::NumericalError& e) {
    last_error = e.what();
    return QCL_ERR_NUMERICAL;
  } catch (const IoError& e) {
    last_error = e.what();
    return QCL_ERR_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QCL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QCL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw qcl::InvalidArgument(std::string(what) + " must not be NULL");
}

qcl::ExperimentConfig parsed(const qcl_config* config) {
  require(config, "config");
  return qcl::parse_config(config->doc);
}

}  // namespace

extern "C" {

const char* qcl_version(void) { return "0.1.0"; }

const char* qcl_last_error(void) { return last_error.c_str(); }

void qcl_string_free(char* s) { std::free(s); }

qcl_status qcl_config_new(qcl_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qcl_config;
    return QCL_OK;
  });
}

qcl_status qcl_config_from_json(const char* text, qcl_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    auto doc = qcl::parse_json_document(text);
    if (!doc.is_object()) throw qcl::ConfigError("configuration must be a JSON object");
    *out = new qcl_config{std::move(doc)};
    return QCL_OK;
  });
}

qcl_status qcl_config_from_file(const char* path, qcl_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path);
    if (!in) throw qcl::ConfigError(std::string("cannot open config file \"") + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    auto doc = qcl::parse_json_document(ss.str());
    if (!doc.is_object()) throw qcl::ConfigError("configuration must be a JSON object");
    *out = new qcl_config{std::move(doc)};
    return QCL_OK;
  });
}

void qcl_config_free(qcl_config* config) { delete config; }

qcl_status qcl_config_set_number(qcl_config* config, const char* key, double value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    config->doc[key] = value;
    return QCL_OK;
  });
}

qcl_status qcl_config_set_uint(qcl_config* config, const char* key, uint64_t value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    config->doc[key] = value;
    return QCL_OK;
  });
}

qcl_status qcl_config_set_string(qcl_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->doc[key] = std::string(value);
    return QCL_OK;
  });
}

int qcl_config_has(const qcl_config* config, const char* key) {
  return config && key && config->doc.contains(key) ? 1 : 0;
}

qcl_status qcl_config_to_json(const qcl_config* config, char** out_json) {
  return guarded([&] {
    require(config, "config");
    require(out_json, "out_json");
    *out_json = dup_string(config->doc.dump());
    return QCL_OK;
  });
}

qcl_status qcl_config_validate(const qcl_config* config) {
  return guarded([&] {
    parsed(config);
    return QCL_OK;
  });
}

qcl_status qcl_capacity(const qcl_config* config, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = dup_string(qcl::run_capacity(parsed(config)).dump());
    return QCL_OK;
  });
}

qcl_status qcl_optimize(const qcl_config* config, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = dup_string(qcl::run_optimize(parsed(config)).dump());
    return QCL_OK;
  });
}

qcl_status qcl_sweep(const qcl_config* config, char** out_csv, char** out_json) {
  return guarded([&] {
    require(out_csv, "out_csv");
    const auto sweep = qcl::run_sweep(parsed(config));
    std::ostringstream csv;
    qcl::write_sweep_csv(sweep, csv);
    nlohmann::json summary = {{"rows", sweep.rows.size()}, {"warnings", sweep.warnings}};
    char* csv_out = dup_string(csv.str());
    if (out_json) {
      try {
        *out_json = dup_string(summary.dump());
      } catch (...) {
        std::free(csv_out);
        throw;
      }
    }
    *out_csv = csv_out;
    return QCL_OK;
  });
}

qcl_status qcl_simulate(const qcl_config* config, const char* transcript_path, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    const auto cfg = parsed(config);
    auto result = qcl::run_simulate(cfg);
    const std::string path = transcript_path ? transcript_path : cfg.out;
    if (!path.empty()) {
      std::ofstream os(path, std::ios::binary);
      if (!os) throw IoError("cannot write \"" + path + "\"");
      qcl::write_transcript_csv(result.transcript, os);
      os.close();
      if (!os) throw IoError("error writing \"" + path + "\"");
      result.summary["transcript"] = path;
    }
    *out_json = dup_string(result.summary.dump());
    return QCL_OK;
  });
}

qcl_status qcl_validate(const char* suite, const qcl_config* config, char** out_json) {
  return guarded([&] {
    require(suite, "suite");
    require(out_json, "out_json");
    const auto s = qcl::parse_suite(suite);
    if (!s) {
      throw qcl::ConfigError(std::string("unknown suite \"") + suite +
                             "\" (expected all, erasure, bsc, bijective, service-optimality)");
    }
    qcl::ValidationOptions opts;
    if (config) {
      const auto cfg = qcl::parse_config(config->doc);
      opts.seed = cfg.seed;
      if (config->doc.contains("n")) opts.n = cfg.n;
      opts.tolerance_sigma = cfg.tolerance_sigma;
    }
    if (opts.n == 0) throw qcl::ConfigError("validation needs n > 0");
    const auto results = qcl::run_validation(*s, opts);
    nlohmann::json report = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
      nlohmann::json subs = nlohmann::json::array();
      for (const auto& sub : r.subchecks) {
        subs.push_back({{"name", sub.name}, {"pass", sub.pass}, {"detail", sub.detail}});
      }
      report.push_back({{"criterion", r.criterion},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"checks", subs}});
      all = all && r.pass;
    }
    nlohmann::json out = {{"suite", qcl::to_string(*s)},
                          {"seed", opts.seed},
                          {"n", opts.n},
                          {"pass", all},
                          {"criteria", report}};
    *out_json = dup_string(out.dump());
    if (!all) {
      last_error = "validation failed";
      return QCL_ERR_VALIDATION;
    }
    return QCL_OK;
  });
}

qcl_status qcl_mm1_erasure_capacity(double lambda, double kappa, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qcl::mm1_capacity_closed_form(lambda, kappa).bits_per_sec;
    return QCL_OK;
  });
}

qcl_status qcl_optimal_lambda_mm1(double kappa, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qcl::optimal_lambda_mg1(qcl::ServiceDistribution::exponential(1.0), kappa).lambda;
    return QCL_OK;
  });
}

qcl_status qcl_binary_entropy(double q, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qcl::binary_entropy(q);
    return QCL_OK;
  });
}

}  // extern "C"
