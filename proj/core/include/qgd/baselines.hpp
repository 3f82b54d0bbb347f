// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Variational comparison methods run against the descent engine: the
// 18-parameter purified-register ansatz for dissipative steady-state
// search, a layered hardware-style eigensolver ansatz, and a plain
// finite-difference gradient-descent trainer shared by both.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qgd/dense.hpp"
#include "qgd/estimation.hpp"
#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd {

struct DvqeParams {
  std::vector<double> alpha;  // 6 mixer angles
  std::vector<double> beta;   // 12 purifier angles

  // Sizes must be exactly 6 and 12 (18 parameters in total).
  void validate() const;
  static DvqeParams from_flat(const std::vector<double>& theta);
  std::vector<double> to_flat() const;
};

// Dense 4x4 two-qubit sub-circuits; in both displays the rightmost printed
// factor is applied first:
//   mixer(a)    = [Ry(a1) x Ry(a2)] C1Ry(a3) [Ry(a4) x Ry(a5)] C1Ry(a6)
//   purifier(b) = [Ry(b1)Rx(b2) x Ry(b3)Rx(b4)] C1Z
//                 [Ry(b5)Rx(b6) x Ry(b7)Rx(b8)] C1Z
//                 [Ry(b9)Rx(b10) x Ry(b11)Rx(b12)]
// Controls sit on the first (more significant) qubit. Since Ry and C1Z are
// real, conjugating the purifier equals negating its Rx angles.
Matrix dvqe_mixer(const std::vector<double>& alpha);
Matrix dvqe_purifier(const std::vector<double>& beta);

// The purified-register ansatz on four qubits:
//   [purifier (x) purifier*] . CNOT(0->2) CNOT(1->3) . [mixer (x) I_4],
// applied to `init` (unit normalized, 4 qubits). The output stays
// normalized (the circuit is unitary).
StateVector dvqe_ansatz_state(const DvqeParams& params, const StateVector& init);

// <init| U(theta)^+ A U(theta) |init> for the flat 18-parameter vector.
// A must be hermitian-flagged on 4 qubits.
double dvqe_loss(const PauliSum& objective, const StateVector& init,
                 const std::vector<double>& theta);

// <psi(params)| A |psi(params)> for the layered preparation ansatz applied
// to |0...0>; A must be hermitian-flagged on spec.qubits qubits.
double ansatz_energy(const PauliSum& objective, const AnsatzSpec& spec,
                     const std::vector<double>& params);

using LossFunction = std::function<double(const std::vector<double>&)>;

// Central differences: g_i = (loss(p + h e_i) - loss(p - h e_i)) / (2h).
// Exact for quadratics. fd_step must be positive and finite.
std::vector<double> finite_difference_gradient(const LossFunction& loss,
                                               const std::vector<double>& params,
                                               double fd_step);

struct TrainOptions {
  double eta = 0.1;         // gradient-descent step size (> 0)
  int steps = 100;          // number of updates (>= 1)
  double fd_step = 1e-3;    // central-difference half-width (> 0)
  double init_scale = 0.1;  // seeded overload: params = scale * N(0,1)
  uint64_t seed = 0;        // seeded overload only

  void validate() const;  // std::invalid_argument on violations
};

struct BaselineRow {
  int step = 0;       // 1-based update counter
  double loss = 0.0;  // loss after this update
};

struct BaselineTrace {
  std::vector<double> initial_params;
  double initial_loss = 0.0;
  std::vector<BaselineRow> rows;     // one row per update, in order
  std::vector<double> final_params;  // after the last update
  double best_loss = 0.0;            // minimum over initial + all rows
  int best_step = 0;                 // 0 denotes the initial point
};

// Plain gradient descent on `loss` from an explicit starting point; the
// trace records the loss after every update. Throws std::runtime_error
// with the offending step in the message when the loss turns non-finite.
BaselineTrace variational_train(const LossFunction& loss,
                                std::vector<double> initial,
                                const TrainOptions& options);

// Same, with parameters initialized to init_scale * N(0,1) drawn from
// options.seed (the only use of the seed; training is deterministic).
BaselineTrace variational_train(const LossFunction& loss, size_t n_params,
                                const TrainOptions& options);

}  // namespace qgd
