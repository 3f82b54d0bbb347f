// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Task and preset execution: turns a validated configuration into descent
// runs, block-encoding verifications, estimator reports, or trainer
// traces, writing every artifact (CSV traces, JSON summaries, plot
// scripts) atomically under an output directory.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace qgd::cli {

inline constexpr int kExitOk = 0;            // run completed as intended
inline constexpr int kExitNotConverged = 2;  // finished without reaching target
inline constexpr int kExitInvalidInput = 3;  // config/document rejected
inline constexpr int kExitDiverged = 4;      // divergence flag raised

struct RunArtifacts {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // artifact paths, in write order
  nlohmann::json summary;          // the summary document (also on disk)
};

// Executes one configured task. Validation failures inside documents
// surface as exceptions (the command-line front end maps them to
// kExitInvalidInput); run outcomes are encoded in exit_code.
RunArtifacts run_task(const RunConfig& cfg, const std::string& out_dir);

// Executes one of the bundled presets {fig3a, fig3b, fig4}; the seed
// fixes noise draws and trainer initializations, making every CSV
// byte-reproducible. Throws std::invalid_argument for unknown ids.
RunArtifacts run_preset(const std::string& preset, const std::string& out_dir,
                        uint64_t seed);

}  // namespace qgd::cli
