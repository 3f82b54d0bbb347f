// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Conversions between Pauli sums and dense Eigen matrices, plus the exact
// decomposition of an arbitrary 2^n x 2^n matrix into the Pauli basis.
// Dense work refuses registers above dense_limit() qubits; the limit is
// overridable through the QGDSIM_DENSE_LIMIT environment variable.

#pragma once

#include <Eigen/Dense>

#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace qgd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Throws std::length_error if n_qubits exceeds dense_limit().
void check_dense_size(int n_qubits);

Matrix to_dense(const PauliSum& op);
Matrix to_dense(const PauliString& s);

// Exact Pauli-basis coefficients of m: c_P = tr(P m) / 2^n. The result is
// canonical; coefficients below drop tolerance vanish. m must be square
// with dimension 2^n_qubits.
PauliSum decompose_dense(const Matrix& m, int n_qubits);

Vector to_eigen(const StateVector& v);
StateVector from_eigen(const Eigen::Ref<const Vector>& v, int n_qubits);

// Eigenvalues of a hermitian sum, ascending. Hermiticity of the dense
// matrix is verified to 1e-9 before solving; violations throw
// std::invalid_argument.
Eigen::VectorXd hermitian_eigenvalues(const PauliSum& op);

// Full eigensystem of a hermitian sum (ascending eigenvalues).
std::pair<Eigen::VectorXd, Matrix> hermitian_eigensystem(const PauliSum& op);

}  // namespace qgd
