// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <cmath>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>

#include "qgd/io.hpp"

namespace qgd::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void check_object(const json& j, const std::string& context) {
  if (!j.is_object()) {
    throw std::invalid_argument(context + " must be a JSON object");
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& context) {
  check_object(j, context);
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw std::invalid_argument("unknown key \"" + item.key() + "\" in " +
                                  context);
    }
  }
}

const json& require_key(const json& j, const std::string& key,
                        const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(context + " is missing required key \"" + key +
                                "\"");
  }
  return *it;
}

double finite_number(const json& j, const std::string& context) {
  if (!j.is_number()) {
    throw std::invalid_argument(context + " must be a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw std::invalid_argument(context + " must be finite");
  }
  return x;
}

cplx coeff_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(context + " must be a [re, im] pair");
  }
  return cplx(finite_number(j[0], context + "[0]"),
              finite_number(j[1], context + "[1]"));
}

PauliSum terms_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(context + " must be a non-empty array of terms");
  }
  PauliSum sum;
  bool first = true;
  size_t index = 0;
  for (const json& t : j) {
    const std::string term_ctx = context + "[" + std::to_string(index) + "]";
    check_keys(t, {"coeff", "pauli"}, term_ctx);
    const cplx coeff =
        coeff_from_json(require_key(t, "coeff", term_ctx), term_ctx + ".coeff");
    const json& pauli = require_key(t, "pauli", term_ctx);
    if (!pauli.is_string()) {
      throw std::invalid_argument(term_ctx + ".pauli must be a string");
    }
    const PauliSum term =
        PauliSum::single(coeff, PauliString(pauli.get<std::string>()));
    if (first) {
      sum = term;
      first = false;
    } else {
      sum += term;  // throws on a qubit-count mismatch
    }
    ++index;
  }
  return sum;
}

}  // namespace

LindbladModel model_from_json(const json& j) {
  check_keys(j, {"n_sites", "hamiltonian", "jumps"}, "model document");
  const json& sites = require_key(j, "n_sites", "model document");
  if (!sites.is_number_integer() || sites.get<int64_t>() < 1) {
    throw std::invalid_argument("n_sites must be a positive integer");
  }

  LindbladModel model;
  model.n_qubits = sites.get<int>();
  model.hamiltonian =
      terms_from_json(require_key(j, "hamiltonian", "model document"),
                      "hamiltonian");

  if (j.contains("jumps")) {
    const json& jumps = j.at("jumps");
    if (!jumps.is_array()) {
      throw std::invalid_argument("jumps must be an array");
    }
    size_t index = 0;
    for (const json& jump : jumps) {
      const std::string ctx = "jumps[" + std::to_string(index) + "]";
      check_keys(jump, {"rate", "terms"}, ctx);
      JumpOperator op;
      op.rate = finite_number(require_key(jump, "rate", ctx), ctx + ".rate");
      op.op = terms_from_json(require_key(jump, "terms", ctx), ctx + ".terms");
      model.jumps.push_back(std::move(op));
      ++index;
    }
  }

  model.validate();  // hermiticity, rates, site-count consistency
  model.hamiltonian.flag_hermitian();
  return model;
}

LindbladModel load_model(const std::string& path) {
  return model_from_json(json::parse(io::read_file(path)));
}

SystemDocument system_from_json(const json& j) {
  check_keys(j, {"a", "b", "form"}, "system document");
  SystemDocument doc;
  doc.a = terms_from_json(require_key(j, "a", "system document"), "a");

  const json& form = require_key(j, "form", "system document");
  if (!form.is_string()) {
    throw std::invalid_argument("form must be a string");
  }
  doc.form = form.get<std::string>();
  if (doc.form != "extended" && doc.form != "projector" &&
      doc.form != "matvec") {
    throw std::invalid_argument(
        "form must be one of \"extended\", \"projector\", \"matvec\"; got \"" +
        doc.form + "\"");
  }

  const int n = doc.a.n_qubits();
  const json& b = require_key(j, "b", "system document");
  if (b.is_string()) {
    doc.b_bits = b.get<std::string>();
    if (doc.b_bits.size() != static_cast<size_t>(n)) {
      throw std::invalid_argument("b bitstring length " +
                                  std::to_string(doc.b_bits.size()) +
                                  " does not match the " + std::to_string(n) +
                                  "-qubit operator");
    }
    uint64_t idx = 0;
    for (char c : doc.b_bits) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("b bitstring must contain only 0 and 1");
      }
      idx = (idx << 1) | static_cast<uint64_t>(c - '0');
    }
    doc.b_state = StateVector::basis(n, idx);
  } else if (b.is_array()) {
    const int64_t dim = int64_t{1} << n;
    if (static_cast<int64_t>(b.size()) != dim) {
      throw std::invalid_argument(
          "b amplitude array has " + std::to_string(b.size()) +
          " entries; the " + std::to_string(n) + "-qubit operator needs " +
          std::to_string(dim));
    }
    Vector amps(dim);
    for (int64_t i = 0; i < dim; ++i) {
      amps[i] = coeff_from_json(b[static_cast<size_t>(i)],
                                "b[" + std::to_string(i) + "]");
    }
    const double norm = amps.norm();
    if (!(norm > 1e-12)) {
      throw std::invalid_argument("b amplitude array is numerically zero");
    }
    amps /= norm;
    doc.b_state = from_eigen(amps, n);
  } else {
    throw std::invalid_argument(
        "b must be a bitstring or an array of [re, im] pairs");
  }
  return doc;
}

SystemDocument load_system(const std::string& path) {
  return system_from_json(json::parse(io::read_file(path)));
}

void RunConfig::validate() const {
  static const std::set<std::string> kTasks = {
      "ness", "linsolve", "matvec", "verify-lcu", "estimate", "baseline"};
  if (!kTasks.contains(task)) {
    throw std::invalid_argument("unknown task \"" + task + "\"");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) {
    throw std::invalid_argument("noise_amplitude must be non-negative");
  }
  if (!(divergence_factor > 1.0)) {
    throw std::invalid_argument("divergence_factor must exceed 1");
  }
  if (convention != "standard" && convention != "paper-literal") {
    throw std::invalid_argument(
        "convention must be \"standard\" or \"paper-literal\"");
  }
  if (protocol != "strategy1" && protocol != "strategy2") {
    throw std::invalid_argument(
        "protocol must be \"strategy1\" or \"strategy2\"");
  }
  if (zeta != "one" && zeta != "i") {
    throw std::invalid_argument("zeta must be \"one\" or \"i\"");
  }
  if (samples < 0) {
    throw std::invalid_argument("samples must be non-negative");
  }
  if (power_steps < 1) {
    throw std::invalid_argument("power_steps must be at least 1");
  }
  if (method != "dvqe" && method != "vqe") {
    throw std::invalid_argument("method must be \"dvqe\" or \"vqe\"");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  if (train_steps < 1) {
    throw std::invalid_argument("train_steps must be at least 1");
  }
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw std::invalid_argument("fd_step must be positive and finite");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("init_scale must be non-negative and finite");
  }
  if (layers < 1) {
    throw std::invalid_argument("layers must be at least 1");
  }

  const bool needs_model = task == "ness" || task == "verify-lcu" ||
                           task == "estimate" ||
                           (task == "baseline" && method == "dvqe");
  const bool needs_system = task == "linsolve" || task == "matvec" ||
                            (task == "baseline" && method == "vqe");
  if (needs_model && model.empty()) {
    throw std::invalid_argument("task \"" + task + "\" requires a model path");
  }
  if (needs_system && system.empty()) {
    throw std::invalid_argument("task \"" + task + "\" requires a system path");
  }
  if (task == "estimate" && observables.empty()) {
    throw std::invalid_argument("task \"estimate\" requires observables");
  }
}

RunConfig config_from_json(const json& j) {
  static const std::set<std::string> kAllowed = {
      "task",        "model",           "system",
      "gamma",       "max_steps",       "tolerance",
      "noise_amplitude", "divergence_factor", "seed",
      "convention",  "observables",     "protocol",
      "zeta",        "samples",         "power_steps",
      "method",      "eta",             "train_steps",
      "fd_step",     "init_scale",      "layers"};
  check_keys(j, kAllowed, "run config");

  RunConfig cfg;
  const json& task = require_key(j, "task", "run config");
  if (!task.is_string()) {
    throw std::invalid_argument("task must be a string");
  }
  cfg.task = task.get<std::string>();

  const auto get_string = [&j](const char* key, std::string& field) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) {
      throw std::invalid_argument(std::string(key) + " must be a string");
    }
    field = j.at(key).get<std::string>();
  };
  const auto get_double = [&j](const char* key, double& field) {
    if (!j.contains(key)) return;
    field = finite_number(j.at(key), key);
  };
  const auto get_int = [&j](const char* key, auto& field) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) {
      throw std::invalid_argument(std::string(key) + " must be an integer");
    }
    field = j.at(key).get<std::decay_t<decltype(field)>>();
  };

  get_string("model", cfg.model);
  get_string("system", cfg.system);
  get_double("gamma", cfg.gamma);
  get_int("max_steps", cfg.max_steps);
  get_double("tolerance", cfg.tolerance);
  get_double("noise_amplitude", cfg.noise_amplitude);
  get_double("divergence_factor", cfg.divergence_factor);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw std::invalid_argument("seed must be a non-negative integer");
    }
    if (j.at("seed").is_number_integer() && j.at("seed").get<int64_t>() < 0) {
      throw std::invalid_argument("seed must be a non-negative integer");
    }
    cfg.seed = j.at("seed").get<uint64_t>();
  }
  get_string("convention", cfg.convention);
  if (j.contains("observables")) {
    const json& obs = j.at("observables");
    if (!obs.is_array()) {
      throw std::invalid_argument("observables must be an array of strings");
    }
    for (const json& o : obs) {
      if (!o.is_string()) {
        throw std::invalid_argument("observables must be an array of strings");
      }
      cfg.observables.push_back(o.get<std::string>());
    }
  }
  get_string("protocol", cfg.protocol);
  get_string("zeta", cfg.zeta);
  get_int("samples", cfg.samples);
  get_int("power_steps", cfg.power_steps);
  get_string("method", cfg.method);
  get_double("eta", cfg.eta);
  get_int("train_steps", cfg.train_steps);
  get_double("fd_step", cfg.fd_step);
  get_double("init_scale", cfg.init_scale);
  get_int("layers", cfg.layers);

  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  json j;
  j["task"] = cfg.task;
  if (!cfg.model.empty()) j["model"] = cfg.model;
  if (!cfg.system.empty()) j["system"] = cfg.system;
  j["gamma"] = cfg.gamma;
  j["max_steps"] = cfg.max_steps;
  j["tolerance"] = cfg.tolerance;
  j["noise_amplitude"] = cfg.noise_amplitude;
  j["divergence_factor"] = cfg.divergence_factor;
  j["seed"] = cfg.seed;
  j["convention"] = cfg.convention;
  if (!cfg.observables.empty()) j["observables"] = cfg.observables;
  j["protocol"] = cfg.protocol;
  j["zeta"] = cfg.zeta;
  j["samples"] = cfg.samples;
  j["power_steps"] = cfg.power_steps;
  j["method"] = cfg.method;
  j["eta"] = cfg.eta;
  j["train_steps"] = cfg.train_steps;
  j["fd_step"] = cfg.fd_step;
  j["init_scale"] = cfg.init_scale;
  j["layers"] = cfg.layers;
  return j;
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg = config_from_json(nlohmann::json::parse(io::read_file(path)));
  // Model/system references resolve relative to the config's directory.
  const fs::path base = fs::path(path).parent_path();
  const auto resolve = [&base](std::string& ref, const char* what) {
    if (ref.empty()) return;
    fs::path p(ref);
    if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) {
      throw std::invalid_argument(std::string(what) + " file does not exist: " +
                                  p.string());
    }
    ref = p.string();
  };
  resolve(cfg.model, "model");
  resolve(cfg.system, "system");
  return cfg;
}

}  // namespace qgd::cli
