// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Normalized gradient-descent iteration for minimizing the quadratic form
// f(v) = <v| A |v> of a hermitian positive-semidefinite operator A over
// unit vectors. One step applies D = I - 2*gamma*A (a power iteration on
// D), optionally perturbed by a scalar noise sample, and renormalizes:
//
//   v_{s+1} = (D + xi_s I) v_s / sqrt(C_s),   C_s = ||(D + xi_s I) v_s||^2.
//
// The iteration converges to the minimal eigenspace of A exactly when
// gamma < 1 / lambda_max(A); analyze_spectrum() reports that threshold and
// convergence_bound() the geometric error envelope.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd {

struct QgdConfig {
  int max_steps = 1000;            // S_max >= 1
  double tolerance = 1e-3;         // stop once objective <= tolerance (> 0)
  double noise_amplitude = 0.0;    // v0 >= 0; per-step sample is v0 * N(0,1)
  uint64_t seed = 0;               // consumed only when noise_amplitude > 0
  double divergence_factor = 1e6;  // > 1; flag when f exceeds factor * f(init)

  void validate() const;  // std::invalid_argument on violations
};

struct GradientOperator {
  PauliSum step;       // I - 2*gamma*objective
  PauliSum objective;  // hermitian PSD operator A
  double gamma = 0.0;
  double coeff_norm_sq = 0.0;  // sum over terms of |coeff|^2 of `step`
  int ancilla_qubits = 0;      // ceil(log2(term count)); 0 for a single term

  size_t term_count() const { return step.size(); }
};

// gamma must be positive and finite; objective must be flagged hermitian.
GradientOperator build_gradient_operator(const PauliSum& objective, double gamma);

struct StepResult {
  StateVector state;     // unit normalized
  double norm_constant;  // C = ||(D + noise I) v||^2 before normalization
};

// One descent step. Throws std::runtime_error when the squared norm falls
// below 1e-300 (the input lies in the kernel of the effective operator).
StepResult qgd_step(const GradientOperator& g, const StateVector& v,
                    double noise = 0.0);

struct TraceRow {
  int step;               // 1-based
  double objective;       // f after this step
  double norm_constant;   // C of this step
  std::optional<double> fidelity;      // |<reference|state>|^2 when provided
  std::optional<double> noise_sample;  // present only when noise is active
};

struct QgdResult {
  std::vector<TraceRow> trace;  // empty when already converged at s = 0
  StateVector final_state;
  double final_objective = 0.0;
  bool converged = false;
  bool diverged = false;
  int steps_taken = 0;
};

// Runs the iteration from `init` (normalized on entry). If the objective
// at the initial state is already <= tolerance the result reports
// convergence at step 0 with the input state unchanged and an empty trace.
// Divergence (objective above divergence_factor * initial objective) sets
// the flag and stops; it is a reported outcome, not an exception.
QgdResult qgd_run(const GradientOperator& g, const StateVector& init,
                  const QgdConfig& config, const StateVector* reference = nullptr);

struct SpectralSummary {
  std::vector<double> eigenvalues;   // of the objective, ascending
  std::vector<double> contractions;  // delta_r = 1 - 2*gamma*lambda_r
  double gamma = 0.0;
  double gamma_critical = 0.0;  // 1 / lambda_max; infinity when lambda_max = 0
  bool converging = false;      // gamma < gamma_critical
  bool degenerate_dominant = false;  // top two |delta| within 1e-12
};

// Dense eigenanalysis of the objective (subject to the dense size limit).
SpectralSummary analyze_spectrum(const PauliSum& objective, double gamma);

// Geometric envelope for |f(S) - lambda_min| from the spectral data and
// the squared overlap tau1_sq of the initial state with the dominant
// eigenvector of D. Requires tau1_sq in (0, 1]; throws
// std::invalid_argument otherwise (a zero-overlap start never converges
// to the dominant eigenspace).
double convergence_bound(const SpectralSummary& s, double tau1_sq, int steps);

}  // namespace qgd
