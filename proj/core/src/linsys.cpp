// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/linsys.hpp"

#include <cmath>
#include <stdexcept>

#include "qgd/dense.hpp"

namespace qgd {

void LinearSystem::validate() const {
  if (a.n_qubits() != b_projector.n_qubits()) {
    throw std::invalid_argument("matrix and projector registers differ");
  }
  PauliSum p = b_projector;
  p.flag_hermitian();
  const Matrix dense_p = to_dense(p);
  if ((dense_p * dense_p - dense_p).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("b_projector is not idempotent");
  }
}

PauliSum hermitian_embed(const PauliSum& a) {
  PauliSum lower(1, {{cplx{0.5, 0.0}, PauliString("X")}, {cplx{0.0, 0.5}, PauliString("Y")}});
  PauliSum upper(1, {{cplx{0.5, 0.0}, PauliString("X")}, {cplx{0.0, -0.5}, PauliString("Y")}});
  PauliSum out = sum_kron(lower, a);
  out += sum_kron(upper, sum_map(a, MapMode::kAdjoint));
  out.flag_hermitian();
  return out;
}

PauliSum projector_from_basis_state(const std::string& bits) {
  if (bits.empty()) {
    throw std::invalid_argument("projector needs at least one bit");
  }
  PauliSum out = PauliSum::identity(0);
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring characters must be 0 or 1");
    }
    const double sign = c == '0' ? 0.5 : -0.5;
    PauliSum factor(1, {{cplx{0.5, 0.0}, PauliString("I")}, {cplx{sign, 0.0}, PauliString("Z")}});
    out = sum_kron(out, factor);
  }
  out.flag_hermitian();
  return out;
}

PauliSum build_linear_hamiltonian(const LinearSystem& sys) {
  sys.validate();
  if (!sys.a.is_hermitian_flagged()) {
    PauliSum check = sys.a;
    check.flag_hermitian();  // throws std::invalid_argument when violated
  }
  const int n = sys.a.n_qubits();
  if (sys.form == SystemForm::kProjector) {
    PauliSum inner = PauliSum::identity(n);
    inner -= sys.b_projector;
    PauliSum h = sum_multiply(sum_multiply(sys.a, inner), sys.a);
    h.flag_hermitian();
    return h;
  }
  // Extended form on n+1 qubits.
  const PauliSum xa = sum_kron(PauliSum::single(cplx{1.0, 0.0}, PauliString("X")), sys.a);
  PauliSum plus_half(1, {{cplx{0.5, 0.0}, PauliString("I")}, {cplx{0.5, 0.0}, PauliString("X")}});
  PauliSum inner = PauliSum::identity(n + 1);
  inner -= sum_kron(plus_half, sys.b_projector);
  PauliSum h = sum_multiply(sum_multiply(xa, inner), xa);
  h.flag_hermitian();
  return h;
}

PauliSum build_matvec_hamiltonian(const PauliSum& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("matrix and vector registers differ");
  }
  const StateVector ab = apply(a, b);
  const double n2 = ab.norm_sq();
  if (std::sqrt(n2) <= 1e-12) {
    throw std::invalid_argument(
        "A annihilates b: the matrix-vector encoding is singular");
  }
  check_dense_size(a.n_qubits());
  const Vector v = to_eigen(ab);
  const Matrix outer = v * v.adjoint() / n2;
  PauliSum h = PauliSum::identity(a.n_qubits());
  h -= decompose_dense(outer, a.n_qubits());
  h.flag_hermitian();
  return h;
}

double norm_constant(const PauliSum& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("matrix and vector registers differ");
  }
  if (std::abs(b.norm_sq() - 1.0) > 1e-9) {
    throw std::invalid_argument("b must be unit normalized");
  }
  cplx total{0.0, 0.0};
  for (const PauliTerm& tm : a.terms()) {
    for (const PauliTerm& tm2 : a.terms()) {
      auto [phase, prod] = pauli_multiply(tm.string, tm2.string);
      const cplx bra = inner(b, apply(PauliSum::single(phase, prod), b));
      total += std::conj(tm.coeff) * tm2.coeff * bra;
    }
  }
  return total.real();
}

SolveReport solve_system(const PauliSum& hamiltonian, double gamma,
                         const QgdConfig& config, const StateVector& init,
                         const StateVector* truth) {
  GradientOperator g = build_gradient_operator(hamiltonian, gamma);
  SolveReport report;
  report.run = qgd_run(g, init, config, truth);
  report.residual = std::sqrt(std::max(0.0, report.run.final_objective));
  if (truth != nullptr) {
    report.fidelity_to_truth = overlap_sq(*truth, report.run.final_state);
  }
  return report;
}

StateVector solution_from_extended(const StateVector& state) {
  if (state.n_qubits() < 2) {
    throw std::invalid_argument("extended states need an ancilla plus a work register");
  }
  const int n = state.n_qubits() - 1;
  const uint64_t half = uint64_t{1} << n;
  StateVector x(n);
  for (uint64_t j = 0; j < half; ++j) {
    x[j] = state[j] + state[half + j];
  }
  if (x.norm_sq() < 1e-300) {
    throw std::runtime_error("the plus-branch of the extended state is empty");
  }
  x.normalize();
  return x;
}

}  // namespace qgd
