// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Steady-state solving for open-system models. The model's generator is
// vectorized onto 2n qubits, squared into a hermitian PSD objective, and
// minimized with the descent engine; the unit-norm minimizer encodes the
// steady density matrix. Observables are evaluated directly on the doubled
// register via the maximally entangled reference state, so no explicit
// density-matrix reconstruction is needed (one is available for
// diagnostics).

#pragma once

#include <optional>

#include "qgd/dense.hpp"
#include "qgd/lindblad.hpp"
#include "qgd/qgd.hpp"
#include "qgd/state.hpp"

namespace qgd {

// (1/sqrt(2^n)) sum_i |i>|i> on 2n qubits.
StateVector max_entangled_state(int n_sites);

struct DensityDiagnostics {
  double hermiticity_deviation = 0.0;  // max |rho - rho^+| entrywise
  double min_eigenvalue = 0.0;         // of the hermitian part (rho + rho^+)/2
  double trace_norm = 0.0;             // |tr rho|
};

// Row-major reshape of a 2n-qubit amplitude vector into a 2^n x 2^n
// matrix: rho_ij = amplitude[i * 2^n + j]. Throws std::invalid_argument
// on an odd qubit count.
std::pair<Matrix, DensityDiagnostics> reshape_to_density(const StateVector& state);

// Inverse of reshape_to_density (exact, amplitude by amplitude).
StateVector density_to_state(const Matrix& rho);

// Exact tr(rho) of the encoded matrix: the sum of diagonal amplitudes.
// Equals sqrt(2^n) times the overlap with max_entangled_state.
cplx trace_of_density_encoding(const StateVector& state);

struct ObservableResult {
  cplx raw_numerator;    // <I_N| (M x I) |state>
  cplx raw_denominator;  // <I_N| state>
  cplx value;            // their ratio == tr(M rho) / tr(rho)
};

// Trace-ratio estimate of an n-qubit observable on a 2n-qubit encoded
// state. M must be hermitian-flagged. Invariant under rescaling of the
// state. Throws std::runtime_error when |denominator| < 1e-12 (the encoded
// matrix is numerically traceless) and std::invalid_argument on qubit or
// flag violations.
ObservableResult observable_expectation(const StateVector& state, const PauliSum& m);

struct NessResult {
  PauliSum generator;         // vectorized model
  PauliSum objective;         // adjoint-square of the generator
  GradientOperator grad;
  QgdResult run;
  cplx trace_of_rho;                  // of the final state, exact
  DensityDiagnostics diagnostics;     // of the final state
  double residual_norm = 0.0;         // ||generator |final>||
  std::optional<SpectralSummary> spectrum;  // when dense-feasible
  bool degenerate_dominant_warning = false;
};

// vectorize -> build_gradient_operator -> qgd_run, with the objective's
// dense kernel vector used as the fidelity reference when the register is
// small enough to eigensolve. A degenerate dominant contraction (e.g. a
// multi-dimensional steady space) sets the warning flag; it is not an
// error. init must be unit-normalized on 2n qubits.
NessResult solve_ness(const LindbladModel& model, double gamma,
                      const QgdConfig& config, const StateVector& init,
                      Convention convention = Convention::kStandard);

}  // namespace qgd
