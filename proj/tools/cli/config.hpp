// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON documents driving the command-line runner: open-system model files,
// linear-system files, and the flat run configuration. Every parser is
// strict — an unknown key is an error, never a silently ignored typo.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgd/lindblad.hpp"
#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd::cli {

// Model document:
//   {
//     "n_sites": 2,
//     "hamiltonian": [ {"coeff": [re, im], "pauli": "ZZ"}, ... ],
//     "jumps": [ {"rate": 0.1, "terms": [ {"coeff": ..., "pauli": ...} ]} ]
//   }
// The result is validated: hermitian Hamiltonian, finite non-negative
// rates, matching site counts. std::invalid_argument on violations.
LindbladModel model_from_json(const nlohmann::json& j);
LindbladModel load_model(const std::string& path);

// System document:
//   {
//     "a": [ {"coeff": [re, im], "pauli": "ZZI"}, ... ],
//     "b": "000",             // basis bitstring, or
//     "b": [[re, im], ...],   // amplitude vector (normalized on load)
//     "form": "extended" | "projector" | "matvec"
//   }
struct SystemDocument {
  PauliSum a;
  std::string form;
  std::string b_bits;   // non-empty when the document used a bitstring
  StateVector b_state;  // always populated, unit normalized
};
SystemDocument system_from_json(const nlohmann::json& j);
SystemDocument load_system(const std::string& path);

// Flat run configuration shared by all subcommands; fields a task does not
// use keep their defaults and are ignored by it. Only `task` is required.
struct RunConfig {
  std::string task;    // ness|linsolve|matvec|verify-lcu|estimate|baseline
  std::string model;   // model-document path (ness, verify-lcu, estimate,
                       // baseline method "dvqe")
  std::string system;  // system-document path (linsolve, matvec, baseline
                       // method "vqe")

  // Descent parameters.
  double gamma = 0.5;
  int max_steps = 1000;
  double tolerance = 1e-3;
  double noise_amplitude = 0.0;
  double divergence_factor = 1e6;
  uint64_t seed = 0;
  std::string convention = "standard";  // or "paper-literal"

  // Observable table (ness) / estimation targets (estimate).
  std::vector<std::string> observables;

  // Estimation controls.
  std::string protocol = "strategy1";  // or "strategy2"
  std::string zeta = "one";            // or "i"
  long samples = 0;                    // 0: exact values only
  int power_steps = 3;                 // strategy2 / verify-lcu rounds

  // Baseline training controls.
  std::string method = "dvqe";  // or "vqe"
  double eta = 0.1;
  int train_steps = 500;
  double fd_step = 1e-3;
  double init_scale = 0.1;
  int layers = 2;  // vqe ansatz depth

  bool operator==(const RunConfig&) const = default;

  // Ranges plus task-specific requirements (e.g. `estimate` needs a model
  // and at least one observable). Throws std::invalid_argument; does not
  // touch the filesystem.
  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

// Parses and validates the file at `path`, then resolves the model/system
// references relative to the config file's directory and verifies they
// exist. std::runtime_error for unreadable files, std::invalid_argument
// for schema violations.
RunConfig load_config(const std::string& path);

}  // namespace qgd::cli
