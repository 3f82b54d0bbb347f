// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Measurement-level estimators for the encoded steady state: Hadamard-test
// inner products, the interferometric observable estimator on the doubled
// register (strategy 1), the direct estimator that reads the descent
// pipeline's unpostselected output (strategy 2), Hoeffding sample
// planning, and a variational approximation of the state-preparation
// unitary.
//
// Phase convention: every estimator reports the real part of the
// zeta-weighted quadratic form it measures. With zeta = i the Hadamard
// test and strategy 1 therefore return MINUS the imaginary part of
// <left|right> (resp. <I_N|M^|rho>) — assemble the complex value as
// (zeta=1 result) - i * (zeta=i result). Strategy 2 places zeta on the
// reference branch instead, which conjugates the roles and returns PLUS
// the imaginary part — assemble as (zeta=1) + i * (zeta=i).
//
// Sample planning: R = ceil(ln(2/delta) / (2 eps~^2)) draws make the
// empirical frequency of the +1 outcome eps~-accurate with confidence
// 1 - delta. The +-1 estimate 2 f - 1 is then (2 eps~)-accurate at the
// same confidence; on the +-1 scale the nominal eps~ itself is reached
// whenever the outcome distribution is far from uniform (all pipeline
// presets here are in that regime).

#pragma once

#include <cstdint>
#include <vector>

#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd {

enum class Zeta { kOne, kImag };

// 1 or i.
cplx zeta_value(Zeta zeta);

struct SamplingPlan {
  double epsilon_tilde = 0.0;
  double delta = 0.0;
  long samples = 0;  // R = ceil(ln(2/delta) / (2 epsilon~^2))
};

// Throws std::invalid_argument unless epsilon_tilde > 0 and 0 < delta < 1.
SamplingPlan sample_plan(double epsilon_tilde, double delta);

struct EstimatorOutput {
  double estimate = 0.0;  // sampled estimate, or the exact value in exact mode
  double exact = 0.0;     // ground truth from the dense quadratic form
  long samples_used = 0;  // 0 in exact mode
  uint64_t seed = 0;
};

// Re[zeta <left|right>], i.e. (zeta<l|r> + zeta*<r|l>)/2. Throws
// std::invalid_argument on a register mismatch or when the magnitude
// exceeds 1 + 1e-12 (unnormalized inputs).
EstimatorOutput hadamard_test(Zeta zeta, const StateVector& left,
                              const StateVector& right);

// The same quantity from `samples` Bernoulli draws with
// P(+1) = (1 + exact)/2; the estimate is 2 (count of +1)/R - 1.
EstimatorOutput hadamard_test_sampled(Zeta zeta, const StateVector& left,
                                      const StateVector& right, long samples,
                                      uint64_t seed);

// <phi0| X (x) (M (x) I) |phi0> for the interferometric state
// phi0 = (|0>|I_N> + zeta|1>|rho>)/sqrt(2) on 1 + 2n qubits: the real
// (zeta = 1) or negated imaginary (zeta = i) part of <I_N|(M (x) I)|rho>.
// M must be hermitian-flagged and act on the site register (half of
// rho_state's register); rho_state must be normalized.
EstimatorOutput strategy1_expectation(const PauliSum& m,
                                      const StateVector& rho_state, Zeta zeta);

// Sampled measurement of the same observable via its dense
// eigendecomposition: eigenvalues are drawn with their exact Born
// probabilities (statistically identical to the circuit, subject to the
// dense size limit on 1 + 2n qubits).
EstimatorOutput strategy1_expectation_sampled(const PauliSum& m,
                                              const StateVector& rho_state,
                                              Zeta zeta, long samples,
                                              uint64_t seed);

// Direct estimator on the unpostselected pipeline output psi_final
// (m~ + 2n qubits): measures X (x) I_M (x) (M (x) I) on
// (|0>|psi_final> + zeta|1>|0^m~>|I_N>)/sqrt(2) and rescales by
// (coefficient_norm * padded_terms)^{steps/2}, recovering the real
// (zeta = 1) or imaginary (zeta = i) part of <I_N|(M (x) I)|D^S rho0>
// exactly for noiseless pipelines. padded_terms must equal 2^m~ for the
// ancilla width implied by the registers; mismatches throw
// std::invalid_argument.
EstimatorOutput strategy2_expectation(const PauliSum& m,
                                      const StateVector& psi_final, int steps,
                                      double coefficient_norm,
                                      long padded_terms, Zeta zeta);

struct AnsatzSpec {
  int qubits = 1;
  int layers = 1;                // 0 is allowed: the empty (identity) ansatz
  int rotations_per_qubit = 2;   // 1: Ry; 2: Rx then Ry
  double fd_step = 1e-3;         // central finite-difference half-width
  double learning_rate = 0.1;
  double init_scale = 0.1;       // parameter initialization: scale * N(0,1)
  int patience = 25;             // stall window (steps without improvement)

  int parameter_count() const { return layers * qubits * rotations_per_qubit; }
  void validate() const;  // std::invalid_argument on violations
};

// U(params)|0...0>: per layer, each qubit receives Rx (second slot) then
// Ry (first slot) — rotations_per_qubit = 1 keeps only Ry — followed by a
// CNOT chain q -> q+1 (absent on a single qubit). Parameter layout is
// params[(layer * qubits + qubit) * rotations_per_qubit + slot].
StateVector apply_preparation_ansatz(const AnsatzSpec& spec,
                                     const std::vector<double>& params);

// 1 - |<target|U(params)|0...0>|^2, clamped into [0, 1]; invariant under a
// global phase of the target.
double preparation_infidelity(const StateVector& target, const AnsatzSpec& spec,
                              const std::vector<double>& params);

struct TrainResult {
  std::vector<double> params;     // best parameters seen
  double final_infidelity = 1.0;  // value at those parameters
  bool stalled = false;     // no improvement over a full patience window
  std::vector<double> history;    // infidelity after each update
};

// Gradient descent on the infidelity with central finite differences.
// target must be normalized on spec.qubits qubits; the seed fixes the
// parameter initialization only.
TrainResult train_preparation_unitary(const StateVector& target,
                                      const AnsatzSpec& spec, int max_steps,
                                      uint64_t seed);

}  // namespace qgd
