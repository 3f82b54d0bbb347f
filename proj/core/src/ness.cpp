// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/ness.hpp"

#include <cmath>
#include <stdexcept>

namespace qgd {

StateVector max_entangled_state(int n_sites) {
  if (n_sites < 1) {
    throw std::invalid_argument("need at least one site");
  }
  StateVector v(2 * n_sites);
  const uint64_t half = uint64_t{1} << n_sites;
  const double a = 1.0 / std::sqrt(static_cast<double>(half));
  for (uint64_t i = 0; i < half; ++i) {
    v[i * half + i] = cplx{a, 0.0};
  }
  return v;
}

std::pair<Matrix, DensityDiagnostics> reshape_to_density(const StateVector& state) {
  if (state.n_qubits() % 2 != 0 || state.n_qubits() == 0) {
    throw std::invalid_argument("density reshaping needs an even, positive qubit count");
  }
  const int n = state.n_qubits() / 2;
  const uint64_t half = uint64_t{1} << n;
  Matrix rho(static_cast<Eigen::Index>(half), static_cast<Eigen::Index>(half));
  for (uint64_t i = 0; i < half; ++i) {
    for (uint64_t j = 0; j < half; ++j) {
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          state[i * half + j];
    }
  }
  DensityDiagnostics d;
  d.hermiticity_deviation = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Matrix sym = (rho + Matrix(rho.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  d.trace_norm = std::abs(rho.trace());
  return {std::move(rho), d};
}

StateVector density_to_state(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < rho.rows()) {
    ++n;
  }
  if ((Eigen::Index{1} << n) != rho.rows()) {
    throw std::invalid_argument("density matrix dimension must be a power of two");
  }
  StateVector v(2 * n);
  const uint64_t half = uint64_t{1} << n;
  for (uint64_t i = 0; i < half; ++i) {
    for (uint64_t j = 0; j < half; ++j) {
      v[i * half + j] = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return v;
}

cplx trace_of_density_encoding(const StateVector& state) {
  if (state.n_qubits() % 2 != 0 || state.n_qubits() == 0) {
    throw std::invalid_argument("trace extraction needs an even, positive qubit count");
  }
  const uint64_t half = uint64_t{1} << (state.n_qubits() / 2);
  cplx tr{0.0, 0.0};
  for (uint64_t i = 0; i < half; ++i) {
    tr += state[i * half + i];
  }
  return tr;
}

ObservableResult observable_expectation(const StateVector& state, const PauliSum& m) {
  if (state.n_qubits() % 2 != 0 || state.n_qubits() == 0) {
    throw std::invalid_argument("encoded states live on an even qubit count");
  }
  const int n = state.n_qubits() / 2;
  if (m.n_qubits() != n) {
    throw std::invalid_argument("observable must act on the single-copy register");
  }
  if (!m.is_hermitian_flagged()) {
    throw std::invalid_argument("observable must be hermitian-flagged");
  }
  const StateVector ref = max_entangled_state(n);
  ObservableResult r;
  r.raw_numerator = inner(ref, apply(extend_right(m, n), state));
  r.raw_denominator = inner(ref, state);
  if (std::abs(r.raw_denominator) < 1e-12) {
    throw std::runtime_error(
        "encoded state is numerically traceless: observable ratio undefined");
  }
  r.value = r.raw_numerator / r.raw_denominator;
  return r;
}

NessResult solve_ness(const LindbladModel& model, double gamma,
                      const QgdConfig& config, const StateVector& init,
                      Convention convention) {
  NessResult result;
  result.generator = vectorize(model, convention);
  result.objective = liouvillian_square(result.generator);
  result.grad = build_gradient_operator(result.objective, gamma);

  StateVector reference(init.n_qubits());
  bool have_reference = false;
  if (2 * model.n_qubits <= dense_limit()) {
    result.spectrum = analyze_spectrum(result.objective, gamma);
    result.degenerate_dominant_warning = result.spectrum->degenerate_dominant;
    auto [evals, evecs] = hermitian_eigensystem(result.objective);
    reference = from_eigen(evecs.col(0), init.n_qubits());
    have_reference = true;
  }

  result.run = qgd_run(result.grad, init, config,
                       have_reference ? &reference : nullptr);
  result.trace_of_rho = trace_of_density_encoding(result.run.final_state);
  result.diagnostics = reshape_to_density(result.run.final_state).second;
  result.residual_norm = apply(result.generator, result.run.final_state).norm();
  return result;
}

}  // namespace qgd
