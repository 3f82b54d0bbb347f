// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Gate-level simulation of the block-encoded descent step and its resource
// accounting. One round prepares the term-coefficient superposition with a
// real orthogonal matrix W (first column d/||d||), applies the
// ancilla-selected Pauli ladder, un-prepares with a Hadamard layer, and
// post-selects the all-zero ancilla branch:
//
//   branch = D|v> / sqrt(M_pad * N_D),  N_D = sum_m d_m^2,  M_pad = 2^m~,
//
// so one post-selected round reproduces one normalized descent step, with
// success probability ||D v||^2 / (N_D M_pad). Terms are padded with
// zero-coefficient identities up to the next power of two; the padded
// count is the M appearing in every probability and rescaling formula
// here, equal to the raw term count whenever that count is already a
// power of two.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgd/qgd.hpp"
#include "qgd/state.hpp"

namespace qgd {

// Real orthogonal completion of the unit vector d/||d||_2 as a first
// column, as a Householder reflection on the zero-padded coefficient list
// (identity when d is already e0 up to 1e-14). The returned matrix is
// M_pad x M_pad with M_pad = 2^ceil(log2(d.size())). Throws
// std::invalid_argument on an empty or all-zero list, a non-finite entry,
// or a padded register above 20 qubits.
Eigen::MatrixXd build_w(const std::vector<double>& d);

struct LcuBlockResult {
  StateVector postselected_state;   // |0^m~> branch, renormalized
  double block_probability = 0.0;   // squared norm of that branch
  StateVector full_register_state;  // m~ + work qubits, pre-measurement
};

// Simulates one round of the block circuit on `input` (normalized, on the
// work register of d.step). Throws std::invalid_argument when the input is
// not normalized or the ancilla register exceeds 20 qubits, and
// std::runtime_error when the post-selected branch is numerically zero.
LcuBlockResult lcu_block(const GradientOperator& d, const StateVector& input);

// ||D^S init||^2 / (N_D M_pad)^S, evaluated as the telescoped product of
// per-round probabilities (numerically stable for large S). S = 0 gives 1.
// Throws std::invalid_argument on negative S or an unnormalized init.
double success_probability(const GradientOperator& d, const StateVector& init,
                           int steps);

// The lumped S-round output on the m~ + work register: the |0^m~> ancilla
// branch carries D^S init / (N_D M_pad)^{S/2} exactly, and the remaining
// weight sits in the |10...0> ancilla configuration. Any placement of the
// failure weight yields identical ancilla-diagonal observables, which is
// all the direct estimator reads. S = 0 returns |0^m~> (x) init.
StateVector algorithm_output_state(const GradientOperator& d,
                                   const StateVector& input, int steps);

struct AmplificationPlan {
  double theta = 0.0;            // sin^2(theta) = p
  long rounds = 0;               // L = floor(pi / (4 theta))
  long measurement_bound = 1;    // 2L + 1
};

// Amplitude-amplification budget for success probability p in (0, 1].
// Throws std::invalid_argument outside that interval.
AmplificationPlan amplification_count(double p);

struct ResourceReport {
  long term_count = 0;            // M, canonical terms of the step operator
  int ancilla_qubits = 0;         // m~ = ceil(log2 M)
  long padded_terms = 1;          // 2^m~
  double coefficient_norm = 0.0;  // N_D
  long gate_estimate = 0;         // n_sites * M * m~^2, unit constants
  int qubit_count = 0;            // m~ + 2 n_sites
};

// Instantiates the order-of-magnitude counting formulas with unit
// constants (documented estimates, not compiled gate counts).
// n_sites must be positive.
ResourceReport complexity_report(const GradientOperator& d, int n_sites);

struct LcuVerification {
  ResourceReport resources;
  std::vector<double> per_step_probability;  // circuit-level, rounds 1..S
  double success_prob = 1.0;            // product of the per-round values
  double direct_success_prob = 1.0;     // matrix-free ||D^S v||^2/(N_D M)^S
  AmplificationPlan amplification;      // for success_prob
  double max_state_error = 0.0;  // max_s || circuit round s - descent step s ||_2
};

// Runs `steps` measured-and-reset circuit rounds from `input`, comparing
// each post-selected state against the algebraic descent step, and
// assembles the resource report (site count n = half the work register,
// rounded up). steps must be non-negative.
LcuVerification verify_lcu(const GradientOperator& d, const StateVector& input,
                           int steps);

}  // namespace qgd
