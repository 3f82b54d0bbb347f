// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgd {

void LindbladModel::validate() const {
  if (n_qubits < 1) {
    throw std::invalid_argument("model needs at least one qubit");
  }
  if (hamiltonian.n_qubits() != n_qubits && !hamiltonian.empty()) {
    throw std::invalid_argument("Hamiltonian qubit count differs from model");
  }
  PauliSum h = hamiltonian;
  h.flag_hermitian();  // throws if any coefficient is meaningfully complex
  for (const JumpOperator& j : jumps) {
    if (j.op.n_qubits() != n_qubits) {
      throw std::invalid_argument("jump operator qubit count differs from model");
    }
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      throw std::invalid_argument("jump rates must be finite and non-negative");
    }
  }
}

PauliSum vectorize(const LindbladModel& model, Convention convention) {
  model.validate();
  const int n = model.n_qubits;
  const PauliSum id = PauliSum::identity(n);
  const cplx minus_i{0.0, -1.0};
  const double coherent_sign = convention == Convention::kStandard ? 1.0 : -1.0;

  PauliSum ell(2 * n);
  if (!model.hamiltonian.empty()) {
    // -i (H x I - I x H^T), optionally sign-flipped.
    PauliSum coherent = sum_kron(model.hamiltonian, id);
    coherent -= sum_kron(id, sum_map(model.hamiltonian, MapMode::kTranspose));
    ell += (coherent_sign * minus_i) * coherent;
  }
  for (const JumpOperator& j : model.jumps) {
    if (j.rate == 0.0 || j.op.empty()) {
      continue;
    }
    const PauliSum ldl = sum_multiply(sum_map(j.op, MapMode::kAdjoint), j.op);
    PauliSum dissipator = cplx{2.0, 0.0} * sum_kron(j.op, sum_map(j.op, MapMode::kConjugate));
    dissipator -= sum_kron(ldl, id);
    dissipator -= sum_kron(id, sum_map(ldl, MapMode::kTranspose));
    ell += cplx{j.rate / 2.0, 0.0} * dissipator;
  }
  return ell;
}

PauliSum liouvillian_square(const PauliSum& ell) {
  PauliSum hh = sum_multiply(sum_map(ell, MapMode::kAdjoint), ell);
  hh.flag_hermitian();
  return hh;
}

LindbladModel transverse_field_ising(int n_sites, double j, double h,
                                     const std::vector<double>& decay_rates) {
  if (n_sites < 1) {
    throw std::invalid_argument("chain needs at least one site");
  }
  if (decay_rates.size() != static_cast<size_t>(n_sites)) {
    throw std::invalid_argument("need exactly one decay rate per site");
  }
  LindbladModel model;
  model.n_qubits = n_sites;
  PauliSum ham(n_sites);
  for (int q = 0; q + 1 < n_sites; ++q) {
    std::string zz(static_cast<size_t>(n_sites), 'I');
    zz[static_cast<size_t>(q)] = 'Z';
    zz[static_cast<size_t>(q) + 1] = 'Z';
    ham += PauliSum::single(cplx{j / 4.0, 0.0}, PauliString(zz));
  }
  for (int q = 0; q < n_sites; ++q) {
    std::string x(static_cast<size_t>(n_sites), 'I');
    x[static_cast<size_t>(q)] = 'X';
    ham += PauliSum::single(cplx{h / 2.0, 0.0}, PauliString(x));
  }
  model.hamiltonian = ham.flag_hermitian();
  for (int q = 0; q < n_sites; ++q) {
    std::string x(static_cast<size_t>(n_sites), 'I');
    std::string y = x;
    x[static_cast<size_t>(q)] = 'X';
    y[static_cast<size_t>(q)] = 'Y';
    // |0><1| on site q.
    PauliSum raise = PauliSum::single(cplx{0.5, 0.0}, PauliString(x));
    raise += PauliSum::single(cplx{0.0, 0.5}, PauliString(y));
    model.jumps.push_back({raise, decay_rates[static_cast<size_t>(q)]});
  }
  return model;
}

}  // namespace qgd
