// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Each subcommand reads a JSON run configuration
// (except `experiment`, which bundles its own parameters) and writes CSV
// traces plus a JSON summary under --out. Exit codes: 0 the run completed
// as intended, 2 it finished without reaching its target, 3 the input was
// invalid, 4 the descent diverged.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/config.hpp"
#include "cli/runner.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::string convention;
  uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* convention_opt = nullptr;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "run configuration (JSON)")
      ->required();
  flags.seed_opt =
      sub->add_option("--seed", flags.seed, "override the config's seed");
  sub->add_option("--out", flags.out_dir, "output directory (default: .)");
  flags.convention_opt =
      sub->add_option("--convention", flags.convention,
                      "vectorization convention override")
          ->check(CLI::IsMember({"standard", "paper-literal"}));
}

int report(const qgd::cli::RunArtifacts& art) {
  for (const std::string& file : art.files) {
    std::cout << "wrote " << file << "\n";
  }
  switch (art.exit_code) {
    case qgd::cli::kExitOk:
      std::cout << "status: ok\n";
      break;
    case qgd::cli::kExitNotConverged:
      std::cout << "status: not-converged\n";
      break;
    case qgd::cli::kExitDiverged:
      std::cout << "status: diverged\n";
      break;
    default:
      std::cout << "status: error\n";
      break;
  }
  return art.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qgdsim: gradient-descent solvers for open-system steady states and "
      "linear algebraic problems"};
  app.require_subcommand(1);

  const struct {
    const char* name;
    const char* help;
  } kTasks[] = {
      {"ness", "solve for the steady state of an open-system model"},
      {"linsolve", "solve A|x> = |b> through its ground-state encoding"},
      {"matvec", "prepare A|b>/||A|b>|| through its ground-state encoding"},
      {"verify-lcu", "check the block-encoded circuit against the descent map"},
      {"estimate", "estimate observables interferometrically"},
      {"baseline", "train a variational baseline on the same objective"},
  };

  CommonFlags flags[6];
  CLI::App* subs[6];
  for (int i = 0; i < 6; ++i) {
    subs[i] = app.add_subcommand(kTasks[i].name, kTasks[i].help);
    add_common_flags(subs[i], flags[i]);
  }

  std::string preset;
  std::string exp_out = ".";
  uint64_t exp_seed = 0;
  CLI::App* experiment =
      app.add_subcommand("experiment", "run a bundled preset end to end");
  experiment->add_option("preset", preset, "one of fig3a, fig3b, fig4")
      ->required()
      ->check(CLI::IsMember({"fig3a", "fig3b", "fig4"}));
  experiment->add_option("--seed", exp_seed, "seed for noise and trainers");
  experiment->add_option("--out", exp_out, "output directory (default: .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qgd::cli::kExitInvalidInput;
  }

  try {
    if (experiment->parsed()) {
      return report(qgd::cli::run_preset(preset, exp_out, exp_seed));
    }
    for (int i = 0; i < 6; ++i) {
      if (!subs[i]->parsed()) continue;
      qgd::cli::RunConfig cfg = qgd::cli::load_config(flags[i].config_path);
      if (cfg.task != kTasks[i].name) {
        throw std::invalid_argument("config task \"" + cfg.task +
                                    "\" does not match subcommand \"" +
                                    kTasks[i].name + "\"");
      }
      if (flags[i].seed_opt->count() > 0) cfg.seed = flags[i].seed;
      if (flags[i].convention_opt->count() > 0) {
        cfg.convention = flags[i].convention;
      }
      cfg.validate();
      return report(qgd::cli::run_task(cfg, flags[i].out_dir));
    }
    std::cerr << "error: no subcommand selected\n";
    return qgd::cli::kExitInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return qgd::cli::kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qgd::cli::kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qgd::cli::kExitInvalidInput;
  }
}
