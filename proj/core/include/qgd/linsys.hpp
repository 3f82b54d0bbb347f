// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Ground-state encodings of linear-algebra problems. A system A|x> = |b>
// becomes the kernel problem of a hermitian PSD Hamiltonian, solved with
// the descent engine; a matrix-vector product |y> = A|b>/||A|b>|| becomes
// the kernel of a rank-deficient projector. Two system encodings are
// supported:
//
//   extended:  H = (X x A)(I - (I+X)/2 x |b><b|)(X x A)   on n+1 qubits,
//              kernel spanned by |+> x x;
//   projector: H = A (I - |b><b|) A                        on n qubits,
//              kernel spanned by x  (A hermitian).
//
// Non-hermitian A must first pass through hermitian_embed.

#pragma once

#include <optional>
#include <string>

#include "qgd/pauli.hpp"
#include "qgd/qgd.hpp"
#include "qgd/state.hpp"

namespace qgd {

enum class SystemForm { kExtended, kProjector };

struct LinearSystem {
  PauliSum a;            // hermitian (embed first if the original is not)
  PauliSum b_projector;  // rank-1 projector |b><b| on the same register
  SystemForm form = SystemForm::kExtended;
  bool hermitian_input = true;  // false when `a` came from hermitian_embed

  // Checks qubit counts, hermiticity, and dense idempotency of the
  // projector to 1e-10. Throws std::invalid_argument on violations.
  void validate() const;
};

// |0><1| x A + |1><0| x A^+ on n+1 qubits, hermitian by construction.
// For hermitian A this collapses to X x A. Its spectrum is the plus/minus
// singular values of A.
PauliSum hermitian_embed(const PauliSum& a);

// Tensor product over the bitstring of (I+Z)/2 for '0' and (I-Z)/2 for
// '1'; 2^n terms, densely equal to |bits><bits|. Throws
// std::invalid_argument on an empty string or characters outside {0,1}.
PauliSum projector_from_basis_state(const std::string& bits);

// The encoding Hamiltonian for the chosen form; hermitian-flagged and
// positive semidefinite. Throws std::invalid_argument when `a` is not
// hermitian (embed first).
PauliSum build_linear_hamiltonian(const LinearSystem& sys);

// I - A|b><b|A^+ / ||A b||^2: a projector whose kernel is spanned by the
// normalized product A|b>. Throws std::invalid_argument when ||A b|| is
// numerically zero (the encoding is singular).
PauliSum build_matvec_hamiltonian(const PauliSum& a, const StateVector& b);

// The normalization constant ||A b||^2, evaluated as the full double sum
// over term pairs sum_{m,m'} conj(a_m) a_{m'} <b| P_m P_{m'} |b>.
// b must be unit normalized.
double norm_constant(const PauliSum& a, const StateVector& b);

// Default residual acceptance threshold. The report's residual equals
// sqrt(max(0, f_final)); convergence at tolerance eps therefore implies
// residual <= sqrt(eps), so choose eps <= kResidualTolerance^2 when the
// residual target matters.
inline constexpr double kResidualTolerance = 1e-4;

struct SolveReport {
  QgdResult run;
  double residual = 0.0;  // min over scale beta of ||A x - beta b||
  std::optional<double> fidelity_to_truth;
};

// Descent on the encoding Hamiltonian. The objective value at a state x
// equals min_beta ||A x - beta b||^2 exactly (projector form; for the
// extended form it is the same quantity of the extended encoding), so the
// reported residual is sqrt(max(0, f_final)). `truth`, when given, joins
// the run as the per-step fidelity reference and fills fidelity_to_truth.
SolveReport solve_system(const PauliSum& hamiltonian, double gamma,
                         const QgdConfig& config, const StateVector& init,
                         const StateVector* truth = nullptr);

// Reads the solution off the |+> ancilla branch of an extended-register
// state: x_j proportional to amp[j] + amp[j + 2^n], renormalized. Throws
// std::runtime_error when the branch is numerically zero.
StateVector solution_from_extended(const StateVector& state);

}  // namespace qgd
