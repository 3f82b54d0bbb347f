// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/dense.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qgd {

namespace {

// Row i of dense(P) has its single nonzero at column i ^ flip with value
// i^y * (-1)^popcount(col & phase); the same masks as the state kernel.
struct Masks {
  uint64_t flip = 0;
  uint64_t phase = 0;
  int y_count = 0;
};

Masks masks_of(const PauliString& s) {
  Masks m;
  const int n = s.n_qubits();
  for (int q = 0; q < n; ++q) {
    const uint64_t bit = uint64_t{1} << (n - 1 - q);
    switch (s.letter(q)) {
      case 'X':
        m.flip |= bit;
        break;
      case 'Y':
        m.flip |= bit;
        m.phase |= bit;
        ++m.y_count;
        break;
      case 'Z':
        m.phase |= bit;
        break;
      default:
        break;
    }
  }
  return m;
}

cplx i_power(int k) {
  switch (k & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

void check_dense_size(int n_qubits) {
  if (n_qubits > dense_limit()) {
    throw std::length_error("dense conversion refused: " + std::to_string(n_qubits) +
                            " qubits exceeds the dense limit of " +
                            std::to_string(dense_limit()) +
                            " (set QGDSIM_DENSE_LIMIT to override)");
  }
}

Matrix to_dense(const PauliString& s) {
  check_dense_size(s.n_qubits());
  const uint64_t dim = uint64_t{1} << s.n_qubits();
  const Masks m = masks_of(s);
  const cplx base = i_power(m.y_count);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (uint64_t col = 0; col < dim; ++col) {
    const bool neg = std::popcount(col & m.phase) & 1;
    out(static_cast<Eigen::Index>(col ^ m.flip), static_cast<Eigen::Index>(col)) =
        neg ? -base : base;
  }
  return out;
}

Matrix to_dense(const PauliSum& op) {
  check_dense_size(op.n_qubits());
  const uint64_t dim = uint64_t{1} << op.n_qubits();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const PauliTerm& t : op.terms()) {
    const Masks m = masks_of(t.string);
    const cplx base = t.coeff * i_power(m.y_count);
    for (uint64_t col = 0; col < dim; ++col) {
      const bool neg = std::popcount(col & m.phase) & 1;
      out(static_cast<Eigen::Index>(col ^ m.flip), static_cast<Eigen::Index>(col)) +=
          neg ? -base : base;
    }
  }
  return out;
}

PauliSum decompose_dense(const Matrix& m, int n_qubits) {
  check_dense_size(n_qubits);
  const uint64_t dim = uint64_t{1} << n_qubits;
  if (m.rows() != static_cast<Eigen::Index>(dim) ||
      m.cols() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("matrix dimension must be 2^n x 2^n");
  }
  std::vector<PauliTerm> terms;
  // Enumerate all 4^n strings by a base-4 counter over letters.
  std::string letters(static_cast<size_t>(n_qubits), 'I');
  const uint64_t total = uint64_t{1} << (2 * n_qubits);
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t c = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[static_cast<size_t>(q)] = kLetters[c & 3];
      c >>= 2;
    }
    PauliString s(letters);
    const Masks masks = masks_of(s);
    // tr(P m) = sum_col P(col^flip asRow? ) — P's nonzero in column col sits
    // at row col^flip, so tr(P m) = sum_col P(row,col) m(col,row) with
    // row = col ^ flip.
    cplx tr{0.0, 0.0};
    const cplx base = i_power(masks.y_count);
    for (uint64_t col = 0; col < dim; ++col) {
      const bool neg = std::popcount(col & masks.phase) & 1;
      const cplx p = neg ? -base : base;
      tr += p * m(static_cast<Eigen::Index>(col),
                  static_cast<Eigen::Index>(col ^ masks.flip));
    }
    const cplx coeff = tr / static_cast<double>(dim);
    if (std::abs(coeff) >= kDropTolerance) {
      terms.push_back({coeff, std::move(s)});
    }
  }
  return PauliSum(n_qubits, std::move(terms));
}

Vector to_eigen(const StateVector& v) {
  Vector out(static_cast<Eigen::Index>(v.dim()));
  for (uint64_t i = 0; i < v.dim(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v[i];
  }
  return out;
}

StateVector from_eigen(const Eigen::Ref<const Vector>& v, int n_qubits) {
  std::vector<cplx> amps(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    amps[static_cast<size_t>(i)] = v(i);
  }
  return StateVector::from_amplitudes(n_qubits, std::move(amps));
}

Eigen::VectorXd hermitian_eigenvalues(const PauliSum& op) {
  return hermitian_eigensystem(op).first;
}

std::pair<Eigen::VectorXd, Matrix> hermitian_eigensystem(const PauliSum& op) {
  const Matrix m = to_dense(op);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("eigensolve requested on a non-hermitian sum");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolve failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qgd
