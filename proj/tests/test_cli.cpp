// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Coverage for the file layer and the command-line stack: CSV/atomic-file
// utilities, strict JSON document parsing, the flat run configuration and
// its round trip, task execution artifacts, bundled presets, and the
// executable's argument handling.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/runner.hpp"
#include "qgd/baselines.hpp"
#include "qgd/estimation.hpp"
#include "qgd/io.hpp"
#include "qgd/lcu.hpp"
#include "qgd/lindblad.hpp"
#include "qgd/linsys.hpp"
#include "qgd/ness.hpp"
#include "qgd/qgd.hpp"
#include "qgd/state.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qgd;
using namespace qgd::cli;

namespace {

std::string repo_path(const std::string& rel) {
  return std::string(QGDSIM_REPO_DIR) + "/" + rel;
}

// Fresh per-case scratch directory under the system temp root.
std::string scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qgdsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

json parse(const char* text) { return json::parse(text); }

const char* kDampedQubitModel = R"({
  "n_sites": 1,
  "hamiltonian": [
    {"coeff": [0.5, 0.0], "pauli": "Z"},
    {"coeff": [0.3, 0.0], "pauli": "X"}
  ],
  "jumps": [
    {"rate": 0.2, "terms": [
      {"coeff": [0.5, 0.0], "pauli": "X"},
      {"coeff": [0.0, 0.5], "pauli": "Y"}
    ]}
  ]
})";

int run_binary(const std::string& args) {
  const std::string cmd =
      std::string("\"") + QGDSIM_BIN + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("file utilities") {
  TEST_CASE("format_double survives a strtod round trip") {
    const double values[] = {0.0,          1.0 / 3.0, 0.1,  -2.5e-8,
                             1e300,        -1e-300,   2.0,  12345.6789,
                             4.299133767877658};
    for (double x : values) {
      const std::string s = io::format_double(x);
      CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(2.0) == "2");
    CHECK(io::format_double(0.5) == "0.5");
  }

  TEST_CASE("trace_csv emits the exact schema with empty optionals") {
    std::vector<TraceRow> rows;
    rows.push_back({1, 0.5, 2.0, 0.25, -0.125});
    rows.push_back({2, 0.0625, 1.5, std::nullopt, std::nullopt});
    CHECK(io::trace_csv(rows) ==
          "s,objective,norm_constant,fidelity,noise_sample\n"
          "1,0.5,2,0.25,-0.125\n"
          "2,0.0625,1.5,,\n");
    CHECK(io::trace_csv({}) ==
          "s,objective,norm_constant,fidelity,noise_sample\n");
  }

  TEST_CASE("baseline_csv reuses the trace schema with empty tail columns") {
    BaselineTrace trace;
    trace.rows.push_back({1, 0.5});
    trace.rows.push_back({2, 0.25});
    CHECK(io::baseline_csv(trace) ==
          "s,objective,norm_constant,fidelity,noise_sample\n"
          "1,0.5,,,\n"
          "2,0.25,,,\n");
  }

  TEST_CASE("write_file_atomic creates directories and overwrites in place") {
    const std::string dir = scratch_dir("io_atomic");
    const std::string nested = dir + "/a/b/c.txt";
    io::write_file_atomic(nested, "one\n");
    CHECK(io::read_file(nested) == "one\n");
    io::write_file_atomic(nested, "two\n");
    CHECK(io::read_file(nested) == "two\n");
    CHECK_FALSE(fs::exists(nested + ".tmp"));
  }

  TEST_CASE("read_file reports unreadable paths") {
    CHECK_THROWS_AS(io::read_file("/nonexistent/q/file.txt"),
                    std::runtime_error);
  }
}

TEST_SUITE("model documents") {
  TEST_CASE("bundled two-site chain file equals the in-code construction") {
    const LindbladModel loaded = load_model(repo_path("configs/models/ising2.json"));
    const LindbladModel built =
        transverse_field_ising(2, 1.0, 1.0, {0.1, 0.1});
    CHECK(loaded.n_qubits == built.n_qubits);
    CHECK((to_dense(loaded.hamiltonian) - to_dense(built.hamiltonian))
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
    REQUIRE(loaded.jumps.size() == built.jumps.size());
    for (size_t k = 0; k < loaded.jumps.size(); ++k) {
      CHECK(loaded.jumps[k].rate == built.jumps[k].rate);
      CHECK((to_dense(loaded.jumps[k].op) - to_dense(built.jumps[k].op))
                .cwiseAbs()
                .maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
    }
    const Matrix gen_loaded =
        to_dense(vectorize(loaded, Convention::kStandard));
    const Matrix gen_built = to_dense(vectorize(built, Convention::kStandard));
    CHECK((gen_loaded - gen_built).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("single-site document parses to the expected operators") {
    const LindbladModel m = model_from_json(parse(kDampedQubitModel));
    CHECK(m.n_qubits == 1);
    REQUIRE(m.jumps.size() == 1);
    CHECK(m.jumps[0].rate == 0.2);
    // (X + iY)/2 is the |0><1| raising operator.
    const Matrix op = to_dense(m.jumps[0].op);
    CHECK(std::abs(op(0, 1) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(op(0, 0)) < 1e-15);
    CHECK(std::abs(op(1, 0)) < 1e-15);
    CHECK(std::abs(op(1, 1)) < 1e-15);
  }

  TEST_CASE("strict parsing rejects malformed model documents") {
    json good = parse(kDampedQubitModel);

    SUBCASE("unknown top-level key") {
      json j = good;
      j["extra"] = 1;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("unknown key inside a term") {
      json j = good;
      j["hamiltonian"][0]["weight"] = 2.0;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("unknown key inside a jump") {
      json j = good;
      j["jumps"][0]["label"] = "decay";
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("missing site count") {
      json j = good;
      j.erase("n_sites");
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("missing hamiltonian") {
      json j = good;
      j.erase("hamiltonian");
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("fractional site count") {
      json j = good;
      j["n_sites"] = 1.5;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("non-positive site count") {
      json j = good;
      j["n_sites"] = 0;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("non-hermitian hamiltonian") {
      json j = good;
      j["hamiltonian"] = parse(R"([{"coeff": [0.0, 1.0], "pauli": "X"}])");
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("negative jump rate") {
      json j = good;
      j["jumps"][0]["rate"] = -0.2;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("pauli length disagrees with the site count") {
      json j = good;
      j["hamiltonian"][0]["pauli"] = "ZZ";
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("coefficient must be a two-entry array") {
      json j = good;
      j["hamiltonian"][0]["coeff"] = 0.5;
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
      j["hamiltonian"][0]["coeff"] = json::array({0.5});
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("empty term list") {
      json j = good;
      j["hamiltonian"] = json::array();
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("jumps must be an array") {
      json j = good;
      j["jumps"] = "none";
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
    SUBCASE("non-finite coefficient") {
      json j = good;
      j["hamiltonian"][0]["coeff"][0] = "inf";
      CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    }
  }
}

TEST_SUITE("system documents") {
  const char* kSystem3q = R"({
    "a": [
      {"coeff": [0.9, 0.0], "pauli": "ZZI"},
      {"coeff": [0.3692, 0.0], "pauli": "IXI"},
      {"coeff": [0.1112, 0.0], "pauli": "XII"}
    ],
    "b": "000",
    "form": "extended"
  })";

  TEST_CASE("bitstring right-hand side maps to a basis state") {
    const SystemDocument doc = system_from_json(parse(kSystem3q));
    CHECK(doc.form == "extended");
    CHECK(doc.b_bits == "000");
    CHECK(doc.a.n_qubits() == 3);
    CHECK(doc.b_state.n_qubits() == 3);
    CHECK(std::abs(doc.b_state[0] - cplx(1.0, 0.0)) < 1e-15);
    for (uint64_t i = 1; i < 8; ++i) CHECK(std::abs(doc.b_state[i]) == 0.0);
  }

  TEST_CASE("bitstring indexing is most-significant-first") {
    json j = parse(kSystem3q);
    j["b"] = "011";
    const SystemDocument doc = system_from_json(j);
    CHECK(std::abs(doc.b_state[3] - cplx(1.0, 0.0)) < 1e-15);
  }

  TEST_CASE("amplitude right-hand side is normalized on load") {
    json j = parse(R"({
      "a": [{"coeff": [1.0, 0.0], "pauli": "X"}],
      "b": [[3.0, 0.0], [0.0, 4.0]],
      "form": "matvec"
    })");
    const SystemDocument doc = system_from_json(j);
    CHECK(doc.b_bits.empty());
    CHECK(doc.b_state.n_qubits() == 1);
    CHECK(std::abs(doc.b_state[0] - cplx(0.6, 0.0)) < 1e-15);
    CHECK(std::abs(doc.b_state[1] - cplx(0.0, 0.8)) < 1e-15);
  }

  TEST_CASE("strict parsing rejects malformed system documents") {
    SUBCASE("unknown key") {
      json j = parse(kSystem3q);
      j["rhs"] = "000";
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("unsupported form") {
      json j = parse(kSystem3q);
      j["form"] = "weird";
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("bitstring length mismatch") {
      json j = parse(kSystem3q);
      j["b"] = "00";
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("bitstring with foreign characters") {
      json j = parse(kSystem3q);
      j["b"] = "0x0";
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("amplitude vector of the wrong dimension") {
      json j = parse(kSystem3q);
      j["b"] = json::array({json::array({1.0, 0.0})});
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("zero amplitude vector") {
      json j = parse(R"({
        "a": [{"coeff": [1.0, 0.0], "pauli": "X"}],
        "b": [[0.0, 0.0], [0.0, 0.0]],
        "form": "matvec"
      })");
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("missing right-hand side") {
      json j = parse(kSystem3q);
      j.erase("b");
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
    SUBCASE("empty operator") {
      json j = parse(kSystem3q);
      j["a"] = json::array();
      CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
    }
  }
}

TEST_SUITE("run configuration") {
  TEST_CASE("defaults match the documented values") {
    const RunConfig cfg =
        config_from_json(parse(R"({"task": "ness", "model": "m.json"})"));
    CHECK(cfg.task == "ness");
    CHECK(cfg.model == "m.json");
    CHECK(cfg.system.empty());
    CHECK(cfg.gamma == 0.5);
    CHECK(cfg.max_steps == 1000);
    CHECK(cfg.tolerance == 1e-3);
    CHECK(cfg.noise_amplitude == 0.0);
    CHECK(cfg.divergence_factor == 1e6);
    CHECK(cfg.seed == 0);
    CHECK(cfg.convention == "standard");
    CHECK(cfg.observables.empty());
    CHECK(cfg.protocol == "strategy1");
    CHECK(cfg.zeta == "one");
    CHECK(cfg.samples == 0);
    CHECK(cfg.power_steps == 3);
    CHECK(cfg.method == "dvqe");
    CHECK(cfg.eta == 0.1);
    CHECK(cfg.train_steps == 500);
    CHECK(cfg.fd_step == 1e-3);
    CHECK(cfg.init_scale == 0.1);
    CHECK(cfg.layers == 2);
  }

  TEST_CASE("serialization round-trips the minimal configuration") {
    const RunConfig cfg = config_from_json(
        parse(R"({"task": "ness", "model": "models/ising2.json"})"));
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
  }

  TEST_CASE("serialization round-trips a fully customized configuration") {
    RunConfig cfg;
    cfg.task = "estimate";
    cfg.model = "m.json";
    cfg.system = "s.json";
    cfg.gamma = 0.25;
    cfg.max_steps = 77;
    cfg.tolerance = 1e-7;
    cfg.noise_amplitude = 0.02;
    cfg.divergence_factor = 1e3;
    cfg.seed = 42;
    cfg.convention = "paper-literal";
    cfg.observables = {"ZZ", "XI"};
    cfg.protocol = "strategy2";
    cfg.zeta = "i";
    cfg.samples = 123;
    cfg.power_steps = 5;
    cfg.method = "vqe";
    cfg.eta = 0.05;
    cfg.train_steps = 17;
    cfg.fd_step = 1e-4;
    cfg.init_scale = 0.3;
    cfg.layers = 3;
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
  }

  TEST_CASE("unknown keys and type errors are rejected") {
    CHECK_THROWS_WITH_AS(
        config_from_json(parse(R"({"task": "ness", "gamm": 0.2})")),
        "unknown key \"gamm\" in run config", std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(parse(R"({"task": 7})")),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(
            parse(R"({"task": "ness", "model": "m.json", "gamma": "x"})")),
        "gamma must be a number", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(
            parse(R"({"task": "ness", "model": "m.json", "max_steps": 2.5})")),
        "max_steps must be an integer", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(
            parse(R"({"task": "ness", "model": "m.json", "seed": -1})")),
        "seed must be a non-negative integer", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(
            parse(R"({"task": "ness", "model": "m.json", "observables": "ZZ"})")),
        "observables must be an array of strings", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(
            parse(R"({"task": "ness", "model": "m.json", "observables": [1]})")),
        "observables must be an array of strings", std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(parse(R"([1, 2, 3])")),
                    std::invalid_argument);
  }

  TEST_CASE("validation rejects every out-of-range field") {
    RunConfig base;
    base.task = "ness";
    base.model = "m.json";
    CHECK_NOTHROW(base.validate());

    auto reject = [&](auto&& mutate) {
      RunConfig cfg = base;
      mutate(cfg);
      CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    };
    reject([](RunConfig& c) { c.task = "frobnicate"; });
    reject([](RunConfig& c) { c.gamma = 0.0; });
    reject([](RunConfig& c) { c.gamma = -0.5; });
    reject([](RunConfig& c) { c.max_steps = 0; });
    reject([](RunConfig& c) { c.tolerance = 0.0; });
    reject([](RunConfig& c) { c.noise_amplitude = -0.1; });
    reject([](RunConfig& c) { c.divergence_factor = 1.0; });
    reject([](RunConfig& c) { c.convention = "weird"; });
    reject([](RunConfig& c) { c.protocol = "weird"; });
    reject([](RunConfig& c) { c.zeta = "weird"; });
    reject([](RunConfig& c) { c.samples = -1; });
    reject([](RunConfig& c) { c.power_steps = 0; });
    reject([](RunConfig& c) { c.method = "weird"; });
    reject([](RunConfig& c) { c.eta = 0.0; });
    reject([](RunConfig& c) { c.train_steps = 0; });
    reject([](RunConfig& c) { c.fd_step = 0.0; });
    reject([](RunConfig& c) { c.init_scale = -0.1; });
    reject([](RunConfig& c) { c.layers = 0; });
    reject([](RunConfig& c) { c.model.clear(); });  // ness needs a model
  }

  TEST_CASE("task-specific requirements are enforced") {
    // config_from_json validates before returning, so the missing
    // reference surfaces at parse time already.
    auto expect_invalid = [](const char* text) {
      CHECK_THROWS_AS(config_from_json(parse(text)), std::invalid_argument);
    };
    expect_invalid(R"({"task": "ness"})");
    expect_invalid(R"({"task": "linsolve"})");
    expect_invalid(R"({"task": "matvec"})");
    expect_invalid(R"({"task": "verify-lcu"})");
    expect_invalid(R"({"task": "estimate", "model": "m.json"})");
    expect_invalid(R"({"task": "baseline", "method": "dvqe"})");
    expect_invalid(
        R"({"task": "baseline", "method": "vqe", "model": "m.json"})");
  }

  TEST_CASE("load_config resolves references relative to the file") {
    const std::string dir = scratch_dir("cfg_resolve");
    fs::create_directories(dir + "/sub");
    io::write_file_atomic(dir + "/sub/m.json", kDampedQubitModel);
    io::write_file_atomic(dir + "/run.json",
                          R"({"task": "ness", "model": "sub/m.json"})");
    const RunConfig cfg = load_config(dir + "/run.json");
    CHECK(fs::path(cfg.model).is_absolute());
    CHECK(fs::exists(cfg.model));
    CHECK_NOTHROW(load_model(cfg.model));
  }

  TEST_CASE("load_config rejects missing files and dangling references") {
    CHECK_THROWS_AS(load_config("/nonexistent/run.json"), std::runtime_error);
    const std::string dir = scratch_dir("cfg_dangling");
    io::write_file_atomic(dir + "/run.json",
                          R"({"task": "ness", "model": "gone.json"})");
    CHECK_THROWS_AS(load_config(dir + "/run.json"), std::invalid_argument);
  }
}

TEST_SUITE("task execution") {
  TEST_CASE("steady-state task writes a converged trace and physical table") {
    RunConfig cfg;
    cfg.task = "ness";
    cfg.model = repo_path("configs/models/ising2.json");
    cfg.gamma = 0.1;
    cfg.max_steps = 500;
    cfg.tolerance = 2.5e-3;
    cfg.observables = {"ZI", "IZ", "XI"};
    const std::string dir = scratch_dir("task_ness");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    REQUIRE(art.files.size() == 2);
    CHECK(art.files[0] == dir + "/ness_trace.csv");
    CHECK(art.files[1] == dir + "/ness_summary.json");
    for (const std::string& f : art.files) CHECK(fs::exists(f));

    const json& s = art.summary;
    CHECK(s.at("task") == "ness");
    CHECK(s.at("converged") == true);
    CHECK(s.at("diverged") == false);
    CHECK(s.at("iterations").get<int>() == 337);
    CHECK(s.at("final_objective").get<double>() ==
          doctest::Approx(0.002496932588825263).epsilon(1e-10));
    CHECK(s.at("params").at("gamma").get<double>() == 0.1);
    CHECK(s.at("final_state").size() == 16);

    // One CSV data row per iteration, matching the summary exactly.
    const std::string csv = io::read_file(art.files[0]);
    CHECK(csv.rfind("s,objective,norm_constant,fidelity,noise_sample\n", 0) ==
          0);
    const long rows = std::count(csv.begin(), csv.end(), '\n') - 1;
    CHECK(rows == 337);

    // The observable table holds physical single-operator expectations:
    // real within [-1, 1], and the two symmetric sites agree.
    const json& table = s.at("observables");
    REQUIRE(table.size() == 3);
    for (const auto& [name, value] : table.items()) {
      CHECK(std::abs(value[0].get<double>()) <= 1.0 + 1e-9);
      CHECK(std::abs(value[1].get<double>()) < 1e-9);
    }
    CHECK(table.at("ZI")[0].get<double>() ==
          doctest::Approx(table.at("IZ")[0].get<double>()).epsilon(1e-9));
  }

  TEST_CASE("linear-system task reports residual consistent with objective") {
    RunConfig cfg;
    cfg.task = "linsolve";
    cfg.system = repo_path("configs/systems/linsolve3q.json");
    cfg.gamma = 0.3;
    cfg.max_steps = 100;
    cfg.tolerance = 1e-8;
    const std::string dir = scratch_dir("task_linsolve");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& s = art.summary;
    CHECK(s.at("converged") == true);
    const double f = s.at("final_objective").get<double>();
    const double residual = s.at("residual").get<double>();
    CHECK(residual ==
          doctest::Approx(std::sqrt(std::max(0.0, f))).epsilon(1e-12));
    CHECK(residual < kResidualTolerance);
    CHECK(s.at("fidelity").get<double>() > 0.999);
    CHECK(s.at("solution").is_array());
    CHECK(s.at("solution").size() == 8);  // three-qubit solution register
  }

  TEST_CASE("matvec task reproduces the dense product direction") {
    RunConfig cfg;
    cfg.task = "matvec";
    cfg.system = repo_path("configs/systems/matvec2q.json");
    cfg.gamma = 0.4;
    cfg.max_steps = 200;
    cfg.tolerance = 1e-10;
    const std::string dir = scratch_dir("task_matvec");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& s = art.summary;
    CHECK(s.at("converged") == true);
    CHECK(s.at("fidelity").get<double>() > 1.0 - 1e-8);

    const SystemDocument doc =
        load_system(repo_path("configs/systems/matvec2q.json"));
    CHECK(s.at("norm_constant").get<double>() ==
          doctest::Approx(norm_constant(doc.a, doc.b_state)).epsilon(1e-12));

    // The reported product state matches the dense A b direction up to a
    // global phase.
    Vector product = to_dense(doc.a) * to_eigen(doc.b_state);
    product /= product.norm();
    const json& amps = s.at("product_state");
    REQUIRE(amps.size() == 4);
    cplx overlap = 0.0;
    for (int i = 0; i < 4; ++i) {
      const cplx a(amps[i][0].get<double>(), amps[i][1].get<double>());
      overlap += std::conj(product(i)) * a;
    }
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("block-encoding verification emits the exact report schema") {
    RunConfig cfg;
    cfg.task = "verify-lcu";
    cfg.model = repo_path("configs/models/ising2.json");
    cfg.gamma = 0.5;
    cfg.power_steps = 3;
    const std::string dir = scratch_dir("task_lcu");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json report = json::parse(io::read_file(dir + "/verify_lcu_report.json"));
    std::set<std::string> keys;
    for (const auto& [k, v] : report.items()) keys.insert(k);
    CHECK(keys == std::set<std::string>{"M", "m_tilde", "N_D",
                                        "per_step_probability", "P_suc",
                                        "theta", "L", "bound",
                                        "max_state_error"});

    // Values agree with a direct verification of the same operator.
    const LindbladModel model = load_model(cfg.model);
    const PauliSum hh =
        liouvillian_square(vectorize(model, Convention::kStandard));
    const GradientOperator g = build_gradient_operator(hh, cfg.gamma);
    const LcuVerification ver = verify_lcu(g, StateVector::plus(4), 3);
    CHECK(report.at("M").get<long>() == ver.resources.term_count);
    CHECK(report.at("m_tilde").get<int>() == ver.resources.ancilla_qubits);
    CHECK(report.at("N_D").get<double>() ==
          doctest::Approx(ver.resources.coefficient_norm).epsilon(1e-15));
    CHECK(report.at("per_step_probability").size() == 3);
    CHECK(report.at("P_suc").get<double>() ==
          doctest::Approx(ver.success_prob).epsilon(1e-15));
    CHECK(report.at("theta").get<double>() ==
          doctest::Approx(ver.amplification.theta).epsilon(1e-15));
    CHECK(report.at("L").get<long>() == ver.amplification.rounds);
    CHECK(report.at("bound").get<double>() ==
          doctest::Approx(ver.amplification.measurement_bound).epsilon(1e-15));
    CHECK(report.at("max_state_error").get<double>() <= 1e-8);
  }

  TEST_CASE("exact interferometric estimation matches direct expectations") {
    RunConfig cfg;
    cfg.task = "estimate";
    cfg.model = repo_path("configs/models/damped_qubit.json");
    cfg.gamma = 0.5;
    cfg.max_steps = 2000;
    cfg.tolerance = 1e-9;
    cfg.observables = {"Z", "X"};
    const std::string dir = scratch_dir("task_estimate1");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& s = art.summary;
    const json& records = s.at("estimators");
    REQUIRE(records.size() == 8);  // 2 observables x 2 zeta x (num + den)
    const std::set<std::string> expected_keys{
        "observable", "protocol", "zeta", "exact", "estimate", "R", "seed",
        "error"};
    for (const json& r : records) {
      std::set<std::string> keys;
      for (const auto& [k, v] : r.items()) keys.insert(k);
      CHECK(keys == expected_keys);
      CHECK(r.at("R").get<long>() == 0);
      CHECK(r.at("error").get<double>() == 0.0);  // exact mode
      const std::string protocol = r.at("protocol").get<std::string>();
      CHECK((protocol == "strategy1" || protocol == "hadamard-denominator"));
    }
    for (const char* name : {"Z", "X"}) {
      const json& entry = s.at("values").at(name);
      CHECK(entry.at("value")[0].get<double>() ==
            doctest::Approx(entry.at("reference")[0].get<double>())
                .epsilon(1e-10));
      CHECK(entry.at("value")[1].get<double>() ==
            doctest::Approx(entry.at("reference")[1].get<double>())
                .epsilon(1e-10));
    }
  }

  TEST_CASE("sampled estimation is seed-deterministic") {
    RunConfig cfg;
    cfg.task = "estimate";
    cfg.model = repo_path("configs/models/damped_qubit.json");
    cfg.gamma = 0.5;
    cfg.max_steps = 2000;
    cfg.tolerance = 1e-9;
    cfg.observables = {"Z"};
    cfg.samples = 4000;
    cfg.seed = 5;
    const RunArtifacts a = run_task(cfg, scratch_dir("task_estimate_s1"));
    const RunArtifacts b = run_task(cfg, scratch_dir("task_estimate_s2"));
    CHECK(a.summary.at("estimators") == b.summary.at("estimators"));
    for (const json& r : a.summary.at("estimators")) {
      CHECK(r.at("R").get<long>() == 4000);
      CHECK(std::isfinite(r.at("estimate").get<double>()));
    }

    cfg.seed = 6;
    const RunArtifacts c = run_task(cfg, scratch_dir("task_estimate_s3"));
    CHECK(a.summary.at("estimators") != c.summary.at("estimators"));
  }

  TEST_CASE("pipeline-output estimation assembles both quadrature reads") {
    RunConfig cfg;
    cfg.task = "estimate";
    cfg.model = repo_path("configs/models/damped_qubit.json");
    cfg.gamma = 0.5;
    cfg.protocol = "strategy2";
    cfg.power_steps = 3;
    cfg.observables = {"Z"};
    const std::string dir = scratch_dir("task_estimate2");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& records = art.summary.at("estimators");
    REQUIRE(records.size() == 4);  // identity denominator + one observable
    CHECK(records[0].at("protocol") == "strategy2-denominator");
    CHECK(records[0].at("observable") == "I");
    CHECK(records[2].at("protocol") == "strategy2");

    // The assembled ratio is a genuine expectation: it matches the direct
    // value on the equally deep normalized power iterate.
    const json& entry = art.summary.at("values").at("Z");
    CHECK(entry.at("value")[0].get<double>() ==
          doctest::Approx(entry.at("reference")[0].get<double>())
              .epsilon(1e-10));
    CHECK(entry.at("value")[1].get<double>() ==
          doctest::Approx(entry.at("reference")[1].get<double>())
              .epsilon(1e-10));

    // The recorded denominator equals the direct identity read.
    const LindbladModel model = load_model(cfg.model);
    const PauliSum hh =
        liouvillian_square(vectorize(model, Convention::kStandard));
    const GradientOperator g = build_gradient_operator(hh, cfg.gamma);
    const StateVector psi =
        algorithm_output_state(g, StateVector::plus(2), cfg.power_steps);
    const long padded = long{1} << g.ancilla_qubits;
    PauliSum identity = PauliSum::identity(1);
    identity.flag_hermitian();
    const EstimatorOutput den = strategy2_expectation(
        identity, psi, cfg.power_steps, g.coeff_norm_sq, padded, Zeta::kOne);
    CHECK(entry.at("denominator")[0].get<double>() ==
          doctest::Approx(den.exact).epsilon(1e-15));
  }

  TEST_CASE("mixer-purifier baseline run reproduces the seeded trainer") {
    RunConfig cfg;
    cfg.task = "baseline";
    cfg.model = repo_path("configs/models/ising2.json");
    cfg.method = "dvqe";
    cfg.eta = 0.1;
    cfg.train_steps = 40;
    cfg.fd_step = 1e-3;
    cfg.init_scale = 0.1;
    cfg.seed = 3;
    const std::string dir = scratch_dir("task_dvqe");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& s = art.summary;
    CHECK(s.at("method") == "dvqe");
    CHECK(s.at("final_params").size() == 18);
    CHECK(s.at("best_loss").get<double>() <= s.at("initial_loss").get<double>());

    const std::string csv = io::read_file(dir + "/baseline_trace.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') - 1 == 40);

    // Re-running the trainer with the same seed reproduces the summary.
    const LindbladModel model = transverse_field_ising(2, 1.0, 1.0, {0.1, 0.1});
    const PauliSum hh =
        liouvillian_square(vectorize(model, Convention::kStandard));
    const StateVector init = StateVector::plus(4);
    TrainOptions opts;
    opts.eta = 0.1;
    opts.steps = 40;
    opts.fd_step = 1e-3;
    opts.init_scale = 0.1;
    opts.seed = 3;
    const BaselineTrace trace = variational_train(
        [&](const std::vector<double>& theta) {
          return dvqe_loss(hh, init, theta);
        },
        18, opts);
    CHECK(s.at("best_loss").get<double>() ==
          doctest::Approx(trace.best_loss).epsilon(1e-15));
    CHECK(s.at("best_step").get<int>() == trace.best_step);
    CHECK(io::baseline_csv(trace) == csv);
  }

  TEST_CASE("eigensolver baseline run trains the layered ansatz") {
    RunConfig cfg;
    cfg.task = "baseline";
    cfg.system = repo_path("configs/systems/linsolve3q.json");
    cfg.method = "vqe";
    cfg.eta = 0.2;
    cfg.train_steps = 30;
    cfg.layers = 2;
    cfg.seed = 1;
    const std::string dir = scratch_dir("task_vqe");
    const RunArtifacts art = run_task(cfg, dir);

    CHECK(art.exit_code == kExitOk);
    const json& s = art.summary;
    CHECK(s.at("method") == "vqe");
    // Extended-form system on three qubits trains a four-qubit register:
    // 4 qubits x 2 layers x 1 rotation each.
    CHECK(s.at("final_params").size() == 8);
    CHECK(s.at("best_loss").get<double>() <= s.at("initial_loss").get<double>());
    const std::string csv = io::read_file(dir + "/baseline_trace.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') - 1 == 30);
  }

  TEST_CASE("form mismatches between task and system are rejected") {
    RunConfig cfg;
    cfg.task = "linsolve";
    cfg.system = repo_path("configs/systems/matvec2q.json");
    CHECK_THROWS_AS(run_task(cfg, scratch_dir("task_mismatch1")),
                    std::invalid_argument);
    cfg.task = "matvec";
    cfg.system = repo_path("configs/systems/linsolve3q.json");
    CHECK_THROWS_AS(run_task(cfg, scratch_dir("task_mismatch2")),
                    std::invalid_argument);
  }
}

TEST_SUITE("presets") {
  TEST_CASE("benchmark comparison preset meets its target and reruns "
            "byte-identically") {
    const std::string dir1 = scratch_dir("preset_fig4_a");
    const RunArtifacts a = run_preset("fig4", dir1, 7);
    CHECK(a.exit_code == kExitOk);
    CHECK(a.summary.at("objective_target_met") == true);

    std::set<std::string> names;
    for (const std::string& f : a.files) names.insert(fs::path(f).filename());
    CHECK(names == std::set<std::string>{"fig4_qgd.csv", "fig4_vqe.csv",
                                         "fig4.gp", "fig4_summary.json"});

    const std::string qgd_csv = io::read_file(dir1 + "/fig4_qgd.csv");
    const std::string vqe_csv = io::read_file(dir1 + "/fig4_vqe.csv");
    CHECK(std::count(vqe_csv.begin(), vqe_csv.end(), '\n') - 1 == 200);
    // The descent reaches the pinned objective target within its budget.
    const size_t last_line = qgd_csv.rfind('\n', qgd_csv.size() - 2);
    const std::string last_row = qgd_csv.substr(last_line + 1);
    const size_t c1 = last_row.find(',');
    const double last_objective =
        std::strtod(last_row.c_str() + c1 + 1, nullptr);
    CHECK(last_objective <= 1e-6);

    const std::string dir2 = scratch_dir("preset_fig4_b");
    run_preset("fig4", dir2, 7);
    CHECK(io::read_file(dir2 + "/fig4_qgd.csv") == qgd_csv);
    CHECK(io::read_file(dir2 + "/fig4_vqe.csv") == vqe_csv);

    const std::string dir3 = scratch_dir("preset_fig4_c");
    run_preset("fig4", dir3, 8);
    CHECK(io::read_file(dir3 + "/fig4_qgd.csv") == qgd_csv);  // no draws used
    CHECK(io::read_file(dir3 + "/fig4_vqe.csv") != vqe_csv);  // seeded init
  }

  TEST_CASE("step-size sweep preset flags only the oversized probe") {
    const std::string dir = scratch_dir("preset_fig3b");
    const RunArtifacts art = run_preset("fig3b", dir, 7);
    CHECK(art.exit_code == kExitOk);
    CHECK(art.summary.at("divergence_probe_diverged") == true);
    CHECK(art.summary.at("runs").size() == 6);

    std::set<std::string> names;
    for (const std::string& f : art.files) names.insert(fs::path(f).filename());
    CHECK(names ==
          std::set<std::string>{"fig3b_gamma0.1.csv", "fig3b_gamma0.3.csv",
                                "fig3b_gamma0.5.csv", "fig3b_gamma1.csv",
                                "fig3b_gamma1.7.csv", "fig3b_gamma2.csv",
                                "fig3b.gp", "fig3b_summary.json"});

    // Only the smallest step size sits inside the contraction window, and
    // its full 500-step trace ends below the documented plateau band.
    const std::string csv = io::read_file(dir + "/fig3b_gamma0.1.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') - 1 == 500);
    const size_t last_line = csv.rfind('\n', csv.size() - 2);
    const size_t c1 = csv.find(',', last_line + 1);
    CHECK(std::strtod(csv.c_str() + c1 + 1, nullptr) < 3e-3);
  }

  TEST_CASE("unknown preset identifiers are rejected") {
    CHECK_THROWS_AS(run_preset("nope", scratch_dir("preset_bad"), 0),
                    std::invalid_argument);
  }
}

TEST_SUITE("command line") {
  TEST_CASE("argument errors exit with the invalid-input code") {
    CHECK(run_binary("definitely-not-a-subcommand") == 3);
    CHECK(run_binary("ness") == 3);  // --config is required
    CHECK(run_binary("ness --config /nonexistent/run.json") == 3);
    CHECK(run_binary("experiment nope") == 3);
  }

  TEST_CASE("subcommand must match the configured task") {
    const std::string dir = scratch_dir("cli_mismatch");
    fs::create_directories(dir + "/models");
    io::write_file_atomic(dir + "/models/m.json", kDampedQubitModel);
    io::write_file_atomic(
        dir + "/run.json",
        R"({"task": "ness", "model": "models/m.json", "gamma": 0.1})");
    CHECK(run_binary("linsolve --config " + dir + "/run.json") == 3);
  }

  TEST_CASE("a healthy configured run completes end to end") {
    const std::string dir = scratch_dir("cli_ok");
    fs::create_directories(dir + "/models");
    io::write_file_atomic(dir + "/models/m.json", kDampedQubitModel);
    io::write_file_atomic(dir + "/run.json", R"({
      "task": "ness",
      "model": "models/m.json",
      "gamma": 0.2,
      "max_steps": 2000,
      "tolerance": 1e-6,
      "observables": ["Z"]
    })");
    CHECK(run_binary("ness --config " + dir + "/run.json --out " + dir +
                     "/out") == 0);
    CHECK(fs::exists(dir + "/out/ness_trace.csv"));
    const json s = json::parse(io::read_file(dir + "/out/ness_summary.json"));
    CHECK(s.at("converged") == true);

    // A seed override shows up in the summary echo.
    CHECK(run_binary("ness --config " + dir + "/run.json --out " + dir +
                     "/out2 --seed 11") == 0);
    const json s2 = json::parse(io::read_file(dir + "/out2/ness_summary.json"));
    CHECK(s2.at("seed").get<uint64_t>() == 11);
  }
}
