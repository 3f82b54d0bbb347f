// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgd/circuits.hpp"
#include "qgd/dense.hpp"
#include "qgd/ness.hpp"
#include "qgd/rng.hpp"

namespace qgd {

namespace {

void check_normalized(const StateVector& v, const char* what) {
  if (std::abs(v.norm_sq() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + " must be unit normalized");
  }
}

// (|0>|a> + zeta|1>|b>)/sqrt(2).
StateVector flagged_superposition(const StateVector& a, const StateVector& b,
                                  Zeta zeta) {
  const double root_half = 1.0 / std::sqrt(2.0);
  StateVector out = tensor(StateVector::basis(1, 0), a);
  out *= cplx{root_half, 0.0};
  StateVector lower = tensor(StateVector::basis(1, 1), b);
  lower *= zeta_value(zeta) * root_half;
  out += lower;
  return out;
}

// Hermitian-flag and register preconditions shared by both strategies.
void check_site_observable(const PauliSum& m, int n_sites) {
  if (!m.is_hermitian_flagged()) {
    throw std::invalid_argument("observable must be flagged hermitian");
  }
  if (m.n_qubits() != n_sites) {
    throw std::invalid_argument("observable does not act on the site register");
  }
}

}  // namespace

cplx zeta_value(Zeta zeta) {
  return zeta == Zeta::kOne ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
}

SamplingPlan sample_plan(double epsilon_tilde, double delta) {
  if (!(epsilon_tilde > 0.0) || !std::isfinite(epsilon_tilde)) {
    throw std::invalid_argument("accuracy target must be positive");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("failure probability must lie in (0, 1)");
  }
  SamplingPlan plan;
  plan.epsilon_tilde = epsilon_tilde;
  plan.delta = delta;
  plan.samples = static_cast<long>(
      std::ceil(std::log(2.0 / delta) / (2.0 * epsilon_tilde * epsilon_tilde)));
  return plan;
}

EstimatorOutput hadamard_test(Zeta zeta, const StateVector& left,
                              const StateVector& right) {
  if (left.n_qubits() != right.n_qubits()) {
    throw std::invalid_argument("test states live on different registers");
  }
  const cplx z = zeta_value(zeta) * inner(left, right);
  const double exact = z.real();
  if (std::abs(exact) > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "inner product magnitude exceeds 1: unnormalized inputs");
  }
  EstimatorOutput out;
  out.estimate = exact;
  out.exact = exact;
  return out;
}

EstimatorOutput hadamard_test_sampled(Zeta zeta, const StateVector& left,
                                      const StateVector& right, long samples,
                                      uint64_t seed) {
  if (samples <= 0) {
    throw std::invalid_argument("sample count must be positive");
  }
  EstimatorOutput out = hadamard_test(zeta, left, right);
  const double p_plus = std::clamp((1.0 + out.exact) / 2.0, 0.0, 1.0);
  Rng rng(seed);
  long plus = 0;
  for (long r = 0; r < samples; ++r) {
    if (rng.uniform() < p_plus) {
      ++plus;
    }
  }
  out.estimate = 2.0 * static_cast<double>(plus) / static_cast<double>(samples) - 1.0;
  out.samples_used = samples;
  out.seed = seed;
  return out;
}

EstimatorOutput strategy1_expectation(const PauliSum& m,
                                      const StateVector& rho_state, Zeta zeta) {
  if (rho_state.n_qubits() % 2 != 0 || rho_state.n_qubits() == 0) {
    throw std::invalid_argument("encoded state needs an even, positive register");
  }
  const int n = rho_state.n_qubits() / 2;
  check_site_observable(m, n);
  check_normalized(rho_state, "encoded state");

  const StateVector phi =
      flagged_superposition(max_entangled_state(n), rho_state, zeta);
  PauliSum mm = sum_kron(PauliSum::single(cplx{1.0, 0.0}, PauliString("X")),
                         extend_right(m, n));
  EstimatorOutput out;
  out.exact = expectation(mm, phi).real();
  out.estimate = out.exact;
  return out;
}

EstimatorOutput strategy1_expectation_sampled(const PauliSum& m,
                                              const StateVector& rho_state,
                                              Zeta zeta, long samples,
                                              uint64_t seed) {
  if (samples <= 0) {
    throw std::invalid_argument("sample count must be positive");
  }
  EstimatorOutput out = strategy1_expectation(m, rho_state, zeta);

  const int n = rho_state.n_qubits() / 2;
  const StateVector phi =
      flagged_superposition(max_entangled_state(n), rho_state, zeta);
  PauliSum mm = sum_kron(PauliSum::single(cplx{1.0, 0.0}, PauliString("X")),
                         extend_right(m, n));
  mm.flag_hermitian();
  auto [eigenvalues, eigenvectors] = hermitian_eigensystem(mm);
  const Vector amps = eigenvectors.adjoint() * to_eigen(phi);
  std::vector<double> weights(static_cast<size_t>(amps.size()));
  for (Eigen::Index k = 0; k < amps.size(); ++k) {
    weights[static_cast<size_t>(k)] = std::norm(amps(k));
  }

  Rng rng(seed);
  double total = 0.0;
  for (long r = 0; r < samples; ++r) {
    total += eigenvalues(static_cast<Eigen::Index>(rng.categorical(weights)));
  }
  out.estimate = total / static_cast<double>(samples);
  out.samples_used = samples;
  out.seed = seed;
  return out;
}

EstimatorOutput strategy2_expectation(const PauliSum& m,
                                      const StateVector& psi_final, int steps,
                                      double coefficient_norm,
                                      long padded_terms, Zeta zeta) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be non-negative");
  }
  if (!(coefficient_norm > 0.0) || !std::isfinite(coefficient_norm)) {
    throw std::invalid_argument("coefficient norm must be positive");
  }
  const int n = m.n_qubits();
  const int ancilla = psi_final.n_qubits() - 2 * n;
  if (ancilla < 0) {
    throw std::invalid_argument(
        "pipeline state is smaller than the doubled site register");
  }
  check_site_observable(m, n);
  if (padded_terms != (long{1} << ancilla)) {
    throw std::invalid_argument(
        "padded term count does not match the ancilla register");
  }
  check_normalized(psi_final, "pipeline state");

  const StateVector reference =
      tensor(StateVector::basis(ancilla, 0), max_entangled_state(n));
  const StateVector phi = flagged_superposition(psi_final, reference, zeta);
  PauliSum mm =
      sum_kron(PauliSum::single(cplx{1.0, 0.0}, PauliString("X")),
               extend_left(extend_right(m, n), ancilla));
  const double raw = expectation(mm, phi).real();
  const double rescale = std::pow(
      coefficient_norm * static_cast<double>(padded_terms), steps / 2.0);
  EstimatorOutput out;
  out.exact = raw * rescale;
  out.estimate = out.exact;
  return out;
}

void AnsatzSpec::validate() const {
  if (qubits < 1) {
    throw std::invalid_argument("ansatz needs at least one qubit");
  }
  if (layers < 0) {
    throw std::invalid_argument("layer count must be non-negative");
  }
  if (rotations_per_qubit != 1 && rotations_per_qubit != 2) {
    throw std::invalid_argument("rotations per qubit must be 1 or 2");
  }
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("initialization scale must be non-negative");
  }
  if (patience < 1) {
    throw std::invalid_argument("patience must be positive");
  }
}

StateVector apply_preparation_ansatz(const AnsatzSpec& spec,
                                     const std::vector<double>& params) {
  spec.validate();
  if (params.size() != static_cast<size_t>(spec.parameter_count())) {
    throw std::invalid_argument("parameter vector does not match the ansatz");
  }
  StateVector state = StateVector::basis(spec.qubits, 0);
  const Eigen::Matrix4cd cnot = cnot_gate();
  size_t p = 0;
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int q = 0; q < spec.qubits; ++q) {
      const double ry_angle = params[p];
      if (spec.rotations_per_qubit == 2) {
        state = apply_1q_gate(rx_gate(params[p + 1]), q, state);
      }
      state = apply_1q_gate(ry_gate(ry_angle), q, state);
      p += static_cast<size_t>(spec.rotations_per_qubit);
    }
    for (int q = 0; q + 1 < spec.qubits; ++q) {
      state = apply_2q_gate(cnot, q, q + 1, state);
    }
  }
  return state;
}

double preparation_infidelity(const StateVector& target, const AnsatzSpec& spec,
                              const std::vector<double>& params) {
  const double overlap = overlap_sq(target, apply_preparation_ansatz(spec, params));
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

TrainResult train_preparation_unitary(const StateVector& target,
                                      const AnsatzSpec& spec, int max_steps,
                                      uint64_t seed) {
  spec.validate();
  if (max_steps < 1) {
    throw std::invalid_argument("training needs at least one step");
  }
  if (target.n_qubits() != spec.qubits) {
    throw std::invalid_argument("target does not match the ansatz register");
  }
  check_normalized(target, "target state");

  Rng rng(seed);
  std::vector<double> params(static_cast<size_t>(spec.parameter_count()));
  for (double& a : params) {
    a = spec.init_scale * rng.gaussian();
  }

  TrainResult result;
  result.params = params;
  result.final_infidelity = preparation_infidelity(target, spec, params);
  result.history.reserve(static_cast<size_t>(max_steps));

  int stall = 0;
  std::vector<double> grad(params.size());
  std::vector<double> probe = params;
  for (int step = 0; step < max_steps; ++step) {
    for (size_t i = 0; i < params.size(); ++i) {
      probe = params;
      probe[i] = params[i] + spec.fd_step;
      const double up = preparation_infidelity(target, spec, probe);
      probe[i] = params[i] - spec.fd_step;
      const double down = preparation_infidelity(target, spec, probe);
      grad[i] = (up - down) / (2.0 * spec.fd_step);
    }
    for (size_t i = 0; i < params.size(); ++i) {
      params[i] -= spec.learning_rate * grad[i];
    }
    const double f = preparation_infidelity(target, spec, params);
    result.history.push_back(f);
    if (f < result.final_infidelity) {
      result.final_infidelity = f;
      result.params = params;
      stall = 0;
    } else {
      ++stall;
      if (stall >= spec.patience) {
        result.stalled = true;
        break;
      }
    }
  }
  return result;
}

}  // namespace qgd
