// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense complex state vectors over n qubits and the kernels that apply
// Pauli sums to them without materializing matrices. Amplitude index bit
// n-1-q carries qubit q, so qubit 0 is the most significant bit.

#pragma once

#include <cstdint>
#include <vector>

#include "qgd/pauli.hpp"

namespace qgd {

class StateVector {
 public:
  StateVector() = default;
  // Zero vector on n qubits.
  explicit StateVector(int n_qubits);

  // |basis_index> computational basis state.
  static StateVector basis(int n_qubits, uint64_t basis_index);
  // Uniform superposition |+>^n.
  static StateVector plus(int n_qubits);
  static StateVector from_amplitudes(int n_qubits, std::vector<cplx> amps);

  int n_qubits() const { return n_qubits_; }
  uint64_t dim() const { return uint64_t{1} << n_qubits_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  cplx operator[](uint64_t i) const { return amps_[i]; }
  cplx& operator[](uint64_t i) { return amps_[i]; }

  double norm() const;
  double norm_sq() const;
  // Scales to unit norm; throws std::runtime_error below 1e-300.
  StateVector& normalize();

  StateVector& operator+=(const StateVector& rhs);
  StateVector& operator-=(const StateVector& rhs);
  StateVector& operator*=(cplx scalar);

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_;
};

// <a|b>, conjugating a.
cplx inner(const StateVector& a, const StateVector& b);

// op|v>. Throws std::invalid_argument on qubit-count mismatch.
StateVector apply(const PauliSum& op, const StateVector& v);

// Adds coeff * P |v> into out (the in-place kernel behind apply).
void accumulate_pauli(cplx coeff, const PauliString& s, const StateVector& v,
                      StateVector& out);

// <v| op |v>. Real part is the physical expectation for hermitian op;
// the full complex value is returned so callers can check residues.
cplx expectation(const PauliSum& op, const StateVector& v);

// |<a|b>|^2 for unit-normalized overlap diagnostics.
double overlap_sq(const StateVector& a, const StateVector& b);

// |a> tensor |b>, a on the left (more significant) factor.
StateVector tensor(const StateVector& a, const StateVector& b);

}  // namespace qgd
