// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "qgd/dense.hpp"
#include "qgd/lindblad.hpp"
#include "qgd/qgd.hpp"
#include "qgd/state.hpp"

using qgd::cplx;
using qgd::GradientOperator;
using qgd::PauliString;
using qgd::PauliSum;
using qgd::PauliTerm;
using qgd::QgdConfig;
using qgd::QgdResult;
using qgd::StateVector;

namespace {

PauliSum ising2_objective() {
  return qgd::liouvillian_square(
      qgd::vectorize(qgd::transverse_field_ising(2, 1.0, 1.0, {0.1, 0.1}),
                     qgd::Convention::kStandard));
}

// Random hermitian PSD operator B^+ B.
PauliSum random_psd(int n_qubits, std::mt19937_64& eng) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> ts;
  for (int t = 0; t < 4; ++t) {
    std::string s;
    for (int q = 0; q < n_qubits; ++q) {
      s.push_back(kLetters[eng() % 4]);
    }
    ts.push_back({cplx{static_cast<double>(eng() % 2000) / 1000.0 - 1.0,
                       static_cast<double>(eng() % 2000) / 1000.0 - 1.0},
                  PauliString(s)});
  }
  PauliSum b(n_qubits, std::move(ts));
  PauliSum psd = qgd::sum_multiply(qgd::sum_map(b, qgd::MapMode::kAdjoint), b);
  psd.flag_hermitian();
  return psd;
}

StateVector random_state(int n_qubits, std::mt19937_64& eng) {
  std::vector<cplx> amps(size_t{1} << n_qubits);
  for (cplx& c : amps) {
    c = cplx{static_cast<double>(eng() % 2000) / 1000.0 - 1.0,
             static_cast<double>(eng() % 2000) / 1000.0 - 1.0};
  }
  StateVector v = StateVector::from_amplitudes(n_qubits, std::move(amps));
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("gradient operator construction keeps the defining identity") {
  const PauliSum hh = ising2_objective();
  const double gamma = 0.5;
  GradientOperator g = qgd::build_gradient_operator(hh, gamma);
  CHECK(g.gamma == gamma);

  // step == I - 2*gamma*objective, checked as dense operators.
  oracle::Matrix expect =
      oracle::Matrix::Identity(16, 16) - 2.0 * gamma * qgd::to_dense(hh);
  CHECK((qgd::to_dense(g.step) - expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(g.term_count() == 64);
  CHECK(g.ancilla_qubits == 6);
  CHECK(g.coeff_norm_sq == doctest::Approx(1.809990625).epsilon(1e-9));

  CHECK_THROWS_AS(qgd::build_gradient_operator(hh, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qgd::build_gradient_operator(hh, -0.3), std::invalid_argument);
  PauliSum nonherm = PauliSum::single(cplx{0.0, 1.0}, PauliString("XX"));
  CHECK_THROWS_AS(qgd::build_gradient_operator(nonherm, 0.5), std::invalid_argument);

  // A single surviving term needs no ancilla.
  GradientOperator trivial =
      qgd::build_gradient_operator(PauliSum::single(cplx{0.25, 0.0}, PauliString("Z")).flag_hermitian(), 0.5);
  CHECK(trivial.term_count() == 2);  // I and Z
  CHECK(trivial.ancilla_qubits == 1);
}

TEST_CASE("descent steps match explicit dense arithmetic") {
  std::mt19937_64 eng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 2);
    PauliSum a = random_psd(n, eng);
    const double lmax = qgd::hermitian_eigenvalues(a).maxCoeff();
    const double gamma = 0.4 / std::max(lmax, 1e-6);
    GradientOperator g = qgd::build_gradient_operator(a, gamma);
    StateVector v = random_state(n, eng);
    const double noise = (trial % 3 == 0) ? 0.0 : 0.05 * (static_cast<double>(eng() % 100) - 50.0) / 50.0;

    auto [state, c] = qgd::qgd_step(g, v, noise);
    const Eigen::Index dim = Eigen::Index{1} << n;
    const oracle::Matrix d_eff = oracle::Matrix::Identity(dim, dim) * (1.0 + noise) -
                                 2.0 * gamma * qgd::to_dense(a);
    const Eigen::VectorXcd w = d_eff * qgd::to_eigen(v);
    CHECK(std::abs(c - w.squaredNorm()) < 1e-12 * std::max(1.0, w.squaredNorm()));
    CHECK((qgd::to_eigen(state) - w / w.norm()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a state in the kernel of the effective operator is rejected") {
  // objective = I, gamma = 0.5: the step operator vanishes identically.
  PauliSum id = PauliSum::identity(1);
  id.flag_hermitian();
  GradientOperator g = qgd::build_gradient_operator(id, 0.5);
  CHECK_THROWS_AS(qgd::qgd_step(g, StateVector::basis(1, 0), 0.0), std::runtime_error);
}

TEST_CASE("config validation") {
  QgdConfig c;
  CHECK_NOTHROW(c.validate());
  QgdConfig bad = c;
  bad.max_steps = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.noise_amplitude = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.divergence_factor = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  GradientOperator g = qgd::build_gradient_operator(ising2_objective(), 0.1);
  StateVector unnormalized(4);
  unnormalized[0] = cplx{0.5, 0.0};
  CHECK_THROWS_AS(qgd::qgd_run(g, unnormalized, c), std::invalid_argument);
}

TEST_CASE("chain model at gamma beyond the critical value climbs to the top mode") {
  // 1/lambda_max ~ 0.2326, so gamma = 0.5 drives the iterate toward the
  // largest eigenvalue instead of the kernel. Pinned objective values.
  const PauliSum hh = ising2_objective();
  GradientOperator g = qgd::build_gradient_operator(hh, 0.5);
  QgdConfig cfg;
  cfg.max_steps = 500;
  cfg.tolerance = 1e-9;

  const StateVector init = StateVector::plus(4);
  CHECK(qgd::expectation(hh, init).real() == doctest::Approx(0.13875).epsilon(1e-12));

  QgdResult r = qgd::qgd_run(g, init, cfg);
  REQUIRE(r.trace.size() == 500);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.diverged);  // bounded by lambda_max, never 1e6 * f(0)
  CHECK(r.steps_taken == 500);

  CHECK(r.trace[0].objective == doctest::Approx(1.0770320348741242).epsilon(1e-9));
  CHECK(r.trace[0].norm_constant == doctest::Approx(1.2684906250000001).epsilon(1e-12));
  CHECK(r.trace[1].objective == doctest::Approx(3.3656331549731799).epsilon(1e-9));
  CHECK(r.trace[4].objective == doctest::Approx(4.2874749488956256).epsilon(1e-9));
  CHECK(r.trace[9].objective == doctest::Approx(4.2887896894672046).epsilon(1e-9));
  CHECK(r.trace[49].objective == doctest::Approx(4.2918614490812645).epsilon(1e-9));
  CHECK(r.trace[99].objective == doctest::Approx(4.2948768090947942).epsilon(1e-9));
  CHECK(r.trace[499].objective == doctest::Approx(4.2991337678776578).epsilon(1e-9));
  CHECK(r.final_objective == r.trace.back().objective);

  // No noise requested: the noise column is absent and seeds are inert.
  CHECK_FALSE(r.trace[0].noise_sample.has_value());
  QgdConfig other_seed = cfg;
  other_seed.seed = 987654321;
  QgdResult r2 = qgd::qgd_run(g, init, other_seed);
  for (size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].objective == r2.trace[i].objective);
    CHECK(r.trace[i].norm_constant == r2.trace[i].norm_constant);
  }
}

TEST_CASE("chain model inside the convergent window descends monotonically") {
  const PauliSum hh = ising2_objective();
  GradientOperator g = qgd::build_gradient_operator(hh, 0.1);
  QgdConfig cfg;
  cfg.max_steps = 500;
  cfg.tolerance = 1e-9;  // keep iterating through s = 500

  QgdResult r = qgd::qgd_run(g, StateVector::plus(4), cfg);
  REQUIRE(r.trace.size() == 500);
  CHECK(r.trace[0].objective == doctest::Approx(0.013588598897101012).epsilon(1e-9));
  CHECK(r.trace[19].objective == doctest::Approx(0.0040447825382611442).epsilon(1e-9));
  CHECK(r.trace[45].objective == doctest::Approx(0.003845931782771587).epsilon(1e-9));
  CHECK(r.trace[499].objective == doctest::Approx(0.0020108450649235846).epsilon(1e-9));

  double prev = 0.13875;
  for (const auto& row : r.trace) {
    CHECK(row.objective <= prev + 1e-12);
    prev = row.objective;
  }
}

TEST_CASE("objective decreases monotonically for safely small gamma") {
  // Guaranteed regime: all eigenvalues of the step operator non-negative
  // (gamma <= 1/(2 lambda_max)); mass then flows monotonically downhill.
  std::mt19937_64 eng(307);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 2);
    PauliSum a = random_psd(n, eng);
    const double lmax = qgd::hermitian_eigenvalues(a).maxCoeff();
    if (lmax < 1e-9) {
      continue;
    }
    GradientOperator g = qgd::build_gradient_operator(a, 0.5 / lmax);
    QgdConfig cfg;
    cfg.max_steps = 60;
    cfg.tolerance = 1e-14;
    StateVector init = random_state(n, eng);
    QgdResult r = qgd::qgd_run(g, init, cfg);
    double prev = qgd::expectation(a, init).real();
    for (const auto& row : r.trace) {
      CHECK(row.objective <= prev + 1e-12);
      prev = row.objective;
    }
  }
}

TEST_CASE("iteration equals dense power iteration on the step operator") {
  std::mt19937_64 eng(401);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 2);
    PauliSum a = random_psd(n, eng);
    const double lmax = qgd::hermitian_eigenvalues(a).maxCoeff();
    const double gamma = 0.8 / std::max(lmax, 1e-6);
    GradientOperator g = qgd::build_gradient_operator(a, gamma);
    QgdConfig cfg;
    cfg.max_steps = 100;
    cfg.tolerance = 1e-300;  // run the full budget
    StateVector init = random_state(n, eng);
    QgdResult r = qgd::qgd_run(g, init, cfg);

    const Eigen::Index dim = Eigen::Index{1} << n;
    const oracle::Matrix da = qgd::to_dense(a);
    const oracle::Matrix d = oracle::Matrix::Identity(dim, dim) - 2.0 * gamma * da;
    Eigen::VectorXcd v = qgd::to_eigen(init);
    REQUIRE(r.trace.size() == 100);
    for (int s = 0; s < 100; ++s) {
      v = d * v;
      v /= v.norm();
      const double f = (v.adjoint() * da * v)(0).real();
      CHECK(std::abs(r.trace[static_cast<size_t>(s)].objective - f) < 1e-9);
    }
  }
}

TEST_CASE("noise traces are reproducible and seed sensitive") {
  GradientOperator g = qgd::build_gradient_operator(ising2_objective(), 0.1);
  QgdConfig cfg;
  cfg.max_steps = 50;
  cfg.tolerance = 1e-9;
  cfg.noise_amplitude = 0.05;
  cfg.seed = 42;

  const StateVector init = StateVector::plus(4);
  QgdResult a = qgd::qgd_run(g, init, cfg);
  QgdResult b = qgd::qgd_run(g, init, cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].objective == b.trace[i].objective);
    CHECK(a.trace[i].norm_constant == b.trace[i].norm_constant);
    REQUIRE(a.trace[i].noise_sample.has_value());
    CHECK(*a.trace[i].noise_sample == *b.trace[i].noise_sample);
  }

  QgdConfig other = cfg;
  other.seed = 43;
  QgdResult c = qgd::qgd_run(g, init, other);
  CHECK(*c.trace[0].noise_sample != *a.trace[0].noise_sample);
}

TEST_CASE("an initial state already at tolerance converges at step zero") {
  // Pure decay: |0><0| vectorizes to the first basis vector and sits in
  // the kernel of the squared generator.
  qgd::LindbladModel m;
  m.n_qubits = 1;
  m.hamiltonian = PauliSum(1);
  m.jumps.push_back({PauliSum(1, {{cplx{0.5, 0.0}, PauliString("X")},
                                  {cplx{0.0, 0.5}, PauliString("Y")}}),
                     1.0});
  const PauliSum hh = qgd::liouvillian_square(qgd::vectorize(m, qgd::Convention::kStandard));
  GradientOperator g = qgd::build_gradient_operator(hh, 0.2);
  QgdConfig cfg;
  const StateVector init = StateVector::basis(2, 0);
  QgdResult r = qgd::qgd_run(g, init, cfg);
  CHECK(r.converged);
  CHECK(r.steps_taken == 0);
  CHECK(r.trace.empty());
  CHECK(r.final_objective <= cfg.tolerance);
  for (uint64_t i = 0; i < init.dim(); ++i) {
    CHECK(r.final_state[i] == init[i]);
  }
}

TEST_CASE("divergence beyond the configured factor raises the flag, not an exception") {
  GradientOperator g = qgd::build_gradient_operator(ising2_objective(), 2.0);
  QgdConfig cfg;
  cfg.max_steps = 500;
  cfg.tolerance = 1e-9;
  cfg.divergence_factor = 10.0;  // f(0) = 0.13875, lambda_max / f(0) ~ 31
  QgdResult r = qgd::qgd_run(g, StateVector::plus(4), cfg);
  CHECK(r.diverged);
  CHECK_FALSE(r.converged);
  CHECK(r.steps_taken < 500);
  CHECK(r.trace.back().objective > 1.3875);
  CHECK(r.final_objective == r.trace.back().objective);
}

TEST_CASE("spectral analysis reports the convergence window") {
  const PauliSum hh = ising2_objective();
  qgd::SpectralSummary s = qgd::analyze_spectrum(hh, 0.5);
  REQUIRE(s.eigenvalues.size() == 16);
  CHECK(s.gamma_critical == doctest::Approx(0.2326040065890381).epsilon(1e-10));
  CHECK_FALSE(s.converging);
  CHECK_FALSE(s.degenerate_dominant);

  qgd::SpectralSummary t = qgd::analyze_spectrum(hh, 0.1);
  CHECK(t.converging);
  // contraction/eigenvalue correspondence: lambda_r == (1 - delta_r) / (2 gamma)
  for (size_t r = 0; r < t.eigenvalues.size(); ++r) {
    CHECK(std::abs(t.eigenvalues[r] - (1.0 - t.contractions[r]) / (2.0 * 0.1)) < 1e-10);
  }

  // Doubly degenerate kernel: projector objective (I+Z)/2 x I has two zero
  // eigenvalues, so the dominant contraction is tied.
  PauliSum proj(2, {{cplx{0.5, 0.0}, PauliString("II")}, {cplx{0.5, 0.0}, PauliString("ZI")}});
  proj.flag_hermitian();
  qgd::SpectralSummary d = qgd::analyze_spectrum(proj, 0.3);
  CHECK(d.degenerate_dominant);
}

TEST_CASE("geometric convergence envelope holds on random dissipative models") {
  std::mt19937_64 eng(509);
  int tested = 0;
  for (int trial = 0; trial < 8; ++trial) {
    // Random single-qubit open system.
    qgd::LindbladModel m;
    m.n_qubits = 1;
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<PauliTerm> ht;
    for (int t = 0; t < 2; ++t) {
      ht.push_back({cplx{static_cast<double>(eng() % 2000) / 1000.0 - 1.0, 0.0},
                    PauliString(std::string(1, kLetters[eng() % 4]))});
    }
    m.hamiltonian = PauliSum(1, std::move(ht));
    m.jumps.push_back({PauliSum(1, {{cplx{static_cast<double>(eng() % 1000) / 1000.0,
                                          static_cast<double>(eng() % 1000) / 1000.0},
                                     PauliString(std::string(1, kLetters[1 + eng() % 3]))}}),
                       0.25 + static_cast<double>(eng() % 750) / 1000.0});
    const PauliSum hh = qgd::liouvillian_square(qgd::vectorize(m, qgd::Convention::kStandard));
    if (hh.empty()) {
      continue;
    }
    auto [evals, evecs] = qgd::hermitian_eigensystem(hh);
    const double lmax = evals.maxCoeff();
    if (lmax < 1e-9) {
      continue;
    }
    const double gamma = 0.04 / lmax;
    qgd::SpectralSummary s = qgd::analyze_spectrum(hh, gamma);
    GradientOperator g = qgd::build_gradient_operator(hh, gamma);

    // Initial state with a recorded overlap on the dominant eigenvector
    // (redrawn when numerically orthogonal, where the bound is vacuous).
    StateVector init = random_state(2, eng);
    Eigen::VectorXcd phi1 = evecs.col(0);
    double tau1_sq = std::norm(phi1.dot(qgd::to_eigen(init)));
    int redraws = 0;
    while (tau1_sq < 1e-3 && redraws < 50) {
      init = random_state(2, eng);
      tau1_sq = std::norm(phi1.dot(qgd::to_eigen(init)));
      ++redraws;
    }
    if (tau1_sq < 1e-3) {
      continue;
    }

    QgdConfig cfg;
    cfg.max_steps = 200;
    cfg.tolerance = 1e-300;
    QgdResult r = qgd::qgd_run(g, init, cfg);
    REQUIRE(r.trace.size() == 200);
    const double floor = 1e-12 * (1.0 + lmax);  // round-off allowance
    for (int step = 1; step <= 200; ++step) {
      const double bound = qgd::convergence_bound(s, tau1_sq, step);
      CHECK(r.trace[static_cast<size_t>(step - 1)].objective - evals(0) <=
            bound + floor);
    }
    ++tested;
  }
  CHECK(tested >= 4);  // the draw filters must not hollow the test out

  // Domain errors.
  qgd::SpectralSummary s = qgd::analyze_spectrum(ising2_objective(), 0.1);
  CHECK_THROWS_AS(qgd::convergence_bound(s, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(qgd::convergence_bound(s, -0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(qgd::convergence_bound(s, 0.5, -1), std::invalid_argument);
  CHECK(qgd::convergence_bound(s, 1.0, 0) == doctest::Approx(0.0));
}
