// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Markovian open-system models and their vectorization. A model is a
// hermitian Hamiltonian plus weighted jump operators; vectorize() maps the
// generator of
//
//   d rho/dt = -i [H, rho]
//              + sum_k (mu_k/2) (2 L_k rho L_k^+ - {L_k^+ L_k, rho})
//
// onto a 2n-qubit operator via |i><j| -> |i>|j> (row index on the left,
// i.e. the more significant register half). Two sign conventions for the
// coherent part are supported; they agree once squared, so steady-state
// results are convention independent.

#pragma once

#include <vector>

#include "qgd/pauli.hpp"

namespace qgd {

// Sign of the coherent part of the vectorized generator. kStandard carries
// -i(H x I - I x H^T); kPaperLiteral flips that sign, matching texts that
// write the commutator term with the opposite orientation. The dissipator
// is identical in both.
enum class Convention { kStandard, kPaperLiteral };

struct JumpOperator {
  PauliSum op;  // need not be hermitian
  double rate;  // mu_k >= 0
};

struct LindbladModel {
  int n_qubits = 0;
  PauliSum hamiltonian;             // hermitian (flagged on validation)
  std::vector<JumpOperator> jumps;  // may be empty

  // Verifies qubit counts, hermiticity of the Hamiltonian, and
  // non-negative finite rates. Throws std::invalid_argument on violations.
  void validate() const;
};

// The vectorized generator on 2 * n_qubits qubits. Generally
// non-hermitian; its adjoint-square is the hermitian PSD operator whose
// kernel holds the steady states.
PauliSum vectorize(const LindbladModel& model, Convention convention);

// adjoint(ell) * ell, canonicalized and flagged hermitian.
PauliSum liouvillian_square(const PauliSum& ell);

// Open transverse-field Ising chain:
//   H = (j/4) sum_i Z_i Z_{i+1} + (h/2) sum_i X_i
// with one raising jump |0><1| = (X + iY)/2 per site. decay_rates must
// carry one entry per site.
LindbladModel transverse_field_ising(int n_sites, double j, double h,
                                     const std::vector<double>& decay_rates);

}  // namespace qgd
