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

// qcl: command-line front end over the C API.
//
//   qcl capacity|optimize|sweep|simulate|validate [--config FILE] [overrides]
//
// Exit codes: 0 success, 2 configuration or usage error, 3 unstable queue,
// 4 validation failure, 1 anything else.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcl/qcl.h"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::string out;
};

int exit_code(qcl_status s) {
  switch (s) {
    case QCL_OK:
      return 0;
    case QCL_ERR_CONFIG:
    case QCL_ERR_INVALID_ARGUMENT:
      return 2;
    case QCL_ERR_UNSTABLE:
      return 3;
    case QCL_ERR_VALIDATION:
      return 4;
    default:
      return 1;
  }
}

const char* status_name(qcl_status s) {
  switch (s) {
    case QCL_OK:
      return "ok";
    case QCL_ERR_CONFIG:
      return "config";
    case QCL_ERR_UNSTABLE:
      return "unstable";
    case QCL_ERR_VALIDATION:
      return "validation";
    case QCL_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case QCL_ERR_NUMERICAL:
      return "numerical";
    case QCL_ERR_IO:
      return "io";
    default:
      return "internal";
  }
}

int report_error(qcl_status s, const std::string& message) {
  nlohmann::json err = {{"error", status_name(s)}, {"message", message}, {"exit_code", exit_code(s)}};
  std::cerr << err.dump() << '\n';
  return exit_code(s);
}

int fail(qcl_status s) { return report_error(s, qcl_last_error()); }

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { qcl_string_free(p_); }
  char** out() { return &p_; }
  const char* get() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

class Config {
 public:
  Config() = default;
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
  ~Config() { qcl_config_free(p_); }
  qcl_config** out() { return &p_; }
  qcl_config* get() const { return p_; }

 private:
  qcl_config* p_ = nullptr;
};

// Seed precedence: --seed, then the config file, then QCL_SEED.
qcl_status load_config(const Overrides& o, Config& cfg, std::string& message) {
  qcl_status s = o.config_path.empty() ? qcl_config_new(cfg.out())
                                       : qcl_config_from_file(o.config_path.c_str(), cfg.out());
  if (s != QCL_OK) return s;
  if (o.lambda && (s = qcl_config_set_number(cfg.get(), "lambda", *o.lambda)) != QCL_OK) return s;
  if (o.kappa && (s = qcl_config_set_number(cfg.get(), "kappa", *o.kappa)) != QCL_OK) return s;
  if (o.n && (s = qcl_config_set_uint(cfg.get(), "n", *o.n)) != QCL_OK) return s;
  if (!o.out.empty() && (s = qcl_config_set_string(cfg.get(), "out", o.out.c_str())) != QCL_OK) return s;
  if (o.seed) {
    s = qcl_config_set_uint(cfg.get(), "seed", *o.seed);
  } else if (!qcl_config_has(cfg.get(), "seed")) {
    if (const char* env = std::getenv("QCL_SEED"); env && *env) {
      char* end = nullptr;
      errno = 0;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0' || errno != 0 || env[0] == '-') {
        message = "QCL_SEED must be a nonnegative integer";
        return QCL_ERR_CONFIG;
      }
      s = qcl_config_set_uint(cfg.get(), "seed", v);
    }
  }
  if (s != QCL_OK) return s;
  return qcl_config_validate(cfg.get());
}

int load_or_fail(const Overrides& o, Config& cfg) {
  std::string message;
  const qcl_status s = load_config(o, cfg, message);
  if (s == QCL_OK) return 0;
  return message.empty() ? fail(s) : report_error(s, message);
}

void add_overrides(CLI::App* cmd, Overrides& o, bool with_out) {
  cmd->add_option("--config", o.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  cmd->add_option("--lambda", o.lambda, "arrival rate");
  cmd->add_option("--kappa", o.kappa, "decoherence rate");
  cmd->add_option("--seed", o.seed, "random seed (default: config, then $QCL_SEED)");
  cmd->add_option("--n", o.n, "Monte Carlo sample count");
  if (with_out) cmd->add_option("--out", o.out, "output file");
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  os.close();
  if (!os) return report_error(QCL_ERR_IO, "cannot write \"" + path + "\"");
  return 0;
}

int cmd_json(const Overrides& o, qcl_status (*run)(const qcl_config*, char**)) {
  Config cfg;
  if (int rc = load_or_fail(o, cfg)) return rc;
  LibString json;
  const qcl_status s = run(cfg.get(), json.out());
  if (s != QCL_OK) return fail(s);
  std::cout << json.get() << '\n';
  return 0;
}

int cmd_sweep(const Overrides& o) {
  Config cfg;
  if (int rc = load_or_fail(o, cfg)) return rc;
  LibString csv, summary;
  const qcl_status s = qcl_sweep(cfg.get(), csv.out(), summary.out());
  if (s != QCL_OK) return fail(s);
  for (const auto& w : nlohmann::json::parse(summary.get())["warnings"]) {
    std::cerr << "warning: " << w.get<std::string>() << '\n';
  }
  std::string path = o.out;
  if (path.empty() && qcl_config_has(cfg.get(), "out")) {
    LibString doc;
    if (qcl_config_to_json(cfg.get(), doc.out()) == QCL_OK) {
      path = nlohmann::json::parse(doc.get())["out"].get<std::string>();
    }
  }
  return write_text(path, csv.get());
}

int cmd_simulate(const Overrides& o) {
  Config cfg;
  if (int rc = load_or_fail(o, cfg)) return rc;
  LibString json;
  const qcl_status s = qcl_simulate(cfg.get(), nullptr, json.out());
  if (s != QCL_OK) return fail(s);
  std::cout << json.get() << '\n';
  return 0;
}

int cmd_validate(const Overrides& o, const std::string& suite) {
  Config cfg;
  if (int rc = load_or_fail(o, cfg)) return rc;
  LibString json;
  const qcl_status s = qcl_validate(suite.c_str(), cfg.get(), json.out());
  if (s != QCL_OK && s != QCL_ERR_VALIDATION) return fail(s);
  const auto report = nlohmann::json::parse(json.get());
  for (const auto& c : report["criteria"]) {
    std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["criterion"].get<int>() << "  "
              << c["name"].get<std::string>() << "  (" << c["seconds"].get<double>() << " s)\n";
    for (const auto& sub : c["checks"]) {
      if (!sub["pass"].get<bool>()) {
        std::cout << "      failed: " << sub["name"].get<std::string>() << ": "
                  << sub["detail"].get<std::string>() << '\n';
      }
    }
  }
  std::cout << (report["pass"].get<bool>() ? "all checks passed" : "some checks failed") << '\n';
  if (!o.out.empty()) {
    if (int rc = write_text(o.out, report.dump(2) + "\n")) return rc;
  }
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity of queue-channels with waiting-time-dependent errors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qcl_version()));

  Overrides o;
  std::string suite = "all";
  auto* capacity = app.add_subcommand("capacity", "capacity of the configured queue-channel (JSON)");
  auto* optimize = app.add_subcommand("optimize", "capacity-maximizing arrival rate (JSON)");
  auto* sweep = app.add_subcommand("sweep", "capacity over a lambda grid and kappa list (CSV)");
  auto* simulate = app.add_subcommand("simulate", "simulate a transcript and estimate capacity");
  auto* validate = app.add_subcommand("validate", "run the validation suite");
  add_overrides(capacity, o, false);
  add_overrides(optimize, o, false);
  add_overrides(sweep, o, true);
  add_overrides(simulate, o, true);
  add_overrides(validate, o, true);
  validate->add_option("suite", suite, "all | erasure | bsc | bijective | service-optimality")
      ->check(CLI::IsMember({"all", "erasure", "bsc", "bijective", "service-optimality"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(QCL_ERR_CONFIG, e.what());
  }

  if (capacity->parsed()) return cmd_json(o, qcl_capacity);
  if (optimize->parsed()) return cmd_json(o, qcl_optimize);
  if (sweep->parsed()) return cmd_sweep(o);
  if (simulate->parsed()) return cmd_simulate(o);
  return cmd_validate(o, suite);
}
