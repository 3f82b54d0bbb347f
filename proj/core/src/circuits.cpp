// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace qgd {

Eigen::Matrix2cd rx_gate(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd u;
  u << cplx{c, 0.0}, cplx{0.0, -s}, cplx{0.0, -s}, cplx{c, 0.0};
  return u;
}

Eigen::Matrix2cd ry_gate(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd u;
  u << cplx{c, 0.0}, cplx{-s, 0.0}, cplx{s, 0.0}, cplx{c, 0.0};
  return u;
}

Eigen::Matrix2cd hadamard_gate() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << cplx{r, 0.0}, cplx{r, 0.0}, cplx{r, 0.0}, cplx{-r, 0.0};
  return u;
}

Eigen::Matrix4cd controlled_gate(const Eigen::Matrix2cd& u) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Identity();
  c.block<2, 2>(2, 2) = u;
  return c;
}

Eigen::Matrix4cd cnot_gate() {
  Eigen::Matrix2cd x;
  x << cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0};
  return controlled_gate(x);
}

Eigen::Matrix4cd cz_gate() {
  Eigen::Matrix2cd z;
  z << cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{-1.0, 0.0};
  return controlled_gate(z);
}

StateVector apply_1q_gate(const Eigen::Matrix2cd& u, int qubit,
                          const StateVector& v) {
  const int n = v.n_qubits();
  if (qubit < 0 || qubit >= n) {
    throw std::invalid_argument("gate qubit index out of range");
  }
  const uint64_t mask = uint64_t{1} << (n - 1 - qubit);
  StateVector out(n);
  for (uint64_t i = 0; i < v.dim(); ++i) {
    if (i & mask) {
      continue;
    }
    const cplx a0 = v[i];
    const cplx a1 = v[i | mask];
    out[i] = u(0, 0) * a0 + u(0, 1) * a1;
    out[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return out;
}

StateVector apply_2q_gate(const Eigen::Matrix4cd& u, int q0, int q1,
                          const StateVector& v) {
  const int n = v.n_qubits();
  if (q0 < 0 || q0 >= n || q1 < 0 || q1 >= n || q0 == q1) {
    throw std::invalid_argument("gate qubit pair out of range or equal");
  }
  const uint64_t m0 = uint64_t{1} << (n - 1 - q0);
  const uint64_t m1 = uint64_t{1} << (n - 1 - q1);
  StateVector out(n);
  for (uint64_t i = 0; i < v.dim(); ++i) {
    if (i & (m0 | m1)) {
      continue;
    }
    const uint64_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
    for (int r = 0; r < 4; ++r) {
      cplx acc{0.0, 0.0};
      for (int c = 0; c < 4; ++c) {
        acc += u(r, c) * v[idx[c]];
      }
      out[idx[r]] = acc;
    }
  }
  return out;
}

StateVector apply_top_register_matrix(const Matrix& u, int top_qubits,
                                      const StateVector& v) {
  const int n = v.n_qubits();
  if (top_qubits < 0 || top_qubits > n) {
    throw std::invalid_argument("top register exceeds the state register");
  }
  const Eigen::Index blocks = Eigen::Index{1} << top_qubits;
  if (u.rows() != blocks || u.cols() != blocks) {
    throw std::invalid_argument("matrix size does not match the top register");
  }
  const uint64_t width = v.dim() >> top_qubits;
  StateVector out(n);
  for (Eigen::Index row = 0; row < blocks; ++row) {
    for (Eigen::Index col = 0; col < blocks; ++col) {
      const cplx w = u(row, col);
      if (w == cplx{0.0, 0.0}) {
        continue;
      }
      const uint64_t src = static_cast<uint64_t>(col) * width;
      const uint64_t dst = static_cast<uint64_t>(row) * width;
      for (uint64_t r = 0; r < width; ++r) {
        out[dst + r] += w * v[src + r];
      }
    }
  }
  return out;
}

StateVector apply_select_pauli(const std::vector<PauliString>& strings,
                               int ancilla_qubits, const StateVector& v) {
  const int n = v.n_qubits();
  if (ancilla_qubits < 0 || ancilla_qubits > n) {
    throw std::invalid_argument("ancilla register exceeds the state register");
  }
  const int work = n - ancilla_qubits;
  const uint64_t blocks = uint64_t{1} << ancilla_qubits;
  if (strings.size() > blocks) {
    throw std::invalid_argument("more selected strings than ancilla values");
  }
  const uint64_t width = uint64_t{1} << work;
  StateVector out = v;
  std::vector<cplx> slice(width);
  for (uint64_t m = 0; m < strings.size(); ++m) {
    if (strings[m].n_qubits() != work) {
      throw std::invalid_argument("selected string does not match the work register");
    }
    if (strings[m].is_identity()) {
      continue;
    }
    const uint64_t base = m * width;
    for (uint64_t r = 0; r < width; ++r) {
      slice[r] = v[base + r];
    }
    StateVector block = StateVector::from_amplitudes(work, slice);
    StateVector mapped = apply(PauliSum::single(cplx{1.0, 0.0}, strings[m]), block);
    for (uint64_t r = 0; r < width; ++r) {
      out[base + r] = mapped[r];
    }
  }
  return out;
}

}  // namespace qgd
