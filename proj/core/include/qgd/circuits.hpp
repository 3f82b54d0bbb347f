// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small gate-level simulation layer: dense one- and two-qubit gate
// application on a state vector, a dense matrix applied to the leading
// (most significant) qubits, and the ancilla-selected Pauli ladder used by
// the block-encoding circuit. Qubit 0 is the most significant bit of the
// amplitude index throughout, matching StateVector.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgd/dense.hpp"
#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd {

// exp(-i theta X / 2) = [[cos, -i sin], [-i sin, cos]] at theta/2.
Eigen::Matrix2cd rx_gate(double theta);
// exp(-i theta Y / 2) = [[cos, -sin], [sin, cos]] at theta/2.
Eigen::Matrix2cd ry_gate(double theta);
Eigen::Matrix2cd hadamard_gate();
// |0><0| x I + |1><1| x u; the control is the first (more significant)
// qubit of the two-qubit basis index.
Eigen::Matrix4cd controlled_gate(const Eigen::Matrix2cd& u);
Eigen::Matrix4cd cnot_gate();
Eigen::Matrix4cd cz_gate();

// Applies u on `qubit`. Throws std::invalid_argument on a bad index.
StateVector apply_1q_gate(const Eigen::Matrix2cd& u, int qubit,
                          const StateVector& v);

// Applies u on the ordered pair (q0, q1): the two-qubit basis index is
// 2*bit(q0) + bit(q1). Throws std::invalid_argument on bad or equal
// indices.
StateVector apply_2q_gate(const Eigen::Matrix4cd& u, int q0, int q1,
                          const StateVector& v);

// Applies a dense 2^k x 2^k matrix on qubits 0..k-1 (the most significant
// block of the index). k = 0 is the identity. Throws std::invalid_argument
// when u's size does not match k or k exceeds the register.
StateVector apply_top_register_matrix(const Matrix& u, int top_qubits,
                                      const StateVector& v);

// sum_m |m><m| (x) P_m on a register of ancilla_qubits + work qubits: the
// block of amplitudes whose ancilla value is m receives strings[m]; blocks
// with m >= strings.size() are left unchanged (identity padding). Every
// string must act on the work register. Throws std::invalid_argument on
// size mismatches or strings.size() > 2^ancilla_qubits.
StateVector apply_select_pauli(const std::vector<PauliString>& strings,
                               int ancilla_qubits, const StateVector& v);

}  // namespace qgd
