// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qgd {

namespace {

// Bit masks over amplitude indices for the X/Y/Z content of a string.
struct PauliMasks {
  uint64_t flip = 0;   // X or Y letters: bits toggled by the operator
  uint64_t phase = 0;  // Y or Z letters: bits contributing (-1)^popcount
  int y_count = 0;     // overall factor i^y_count
};

PauliMasks masks_of(const PauliString& s) {
  PauliMasks m;
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

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw std::invalid_argument("state vector qubit count out of range [0,30]");
  }
  amps_.assign(uint64_t{1} << n_qubits, cplx{0.0, 0.0});
}

StateVector StateVector::basis(int n_qubits, uint64_t basis_index) {
  StateVector v(n_qubits);
  if (basis_index >= v.dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  v.amps_[basis_index] = cplx{1.0, 0.0};
  return v;
}

StateVector StateVector::plus(int n_qubits) {
  StateVector v(n_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(v.dim()));
  for (cplx& c : v.amps_) {
    c = cplx{a, 0.0};
  }
  return v;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<cplx> amps) {
  StateVector v(n_qubits);
  if (amps.size() != v.dim()) {
    throw std::invalid_argument("amplitude count must equal 2^n");
  }
  v.amps_ = std::move(amps);
  return v;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& c : amps_) {
    s += std::norm(c);
  }
  return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

StateVector& StateVector::normalize() {
  const double n2 = norm_sq();
  if (n2 < 1e-300) {
    throw std::runtime_error("cannot normalize a numerically zero vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& c : amps_) {
    c *= inv;
  }
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& rhs) {
  if (n_qubits_ != rhs.n_qubits_) {
    throw std::invalid_argument("state addition requires equal qubit counts");
  }
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    amps_[i] += rhs.amps_[i];
  }
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& rhs) {
  if (n_qubits_ != rhs.n_qubits_) {
    throw std::invalid_argument("state subtraction requires equal qubit counts");
  }
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    amps_[i] -= rhs.amps_[i];
  }
  return *this;
}

StateVector& StateVector::operator*=(cplx scalar) {
  for (cplx& c : amps_) {
    c *= scalar;
  }
  return *this;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("inner product requires equal qubit counts");
  }
  cplx s{0.0, 0.0};
  const auto& av = a.amplitudes();
  const auto& bv = b.amplitudes();
  for (uint64_t i = 0; i < av.size(); ++i) {
    s += std::conj(av[i]) * bv[i];
  }
  return s;
}

void accumulate_pauli(cplx coeff, const PauliString& s, const StateVector& v,
                      StateVector& out) {
  if (s.n_qubits() != v.n_qubits() || out.n_qubits() != v.n_qubits()) {
    throw std::invalid_argument("Pauli application requires equal qubit counts");
  }
  const PauliMasks m = masks_of(s);
  const cplx base = coeff * i_power(m.y_count);
  const auto& in = v.amplitudes();
  auto& dst = out.amplitudes();
  const uint64_t dim = v.dim();
  for (uint64_t i = 0; i < dim; ++i) {
    const cplx a = in[i];
    if (a == cplx{0.0, 0.0}) {
      continue;
    }
    const bool neg = std::popcount(i & m.phase) & 1;
    dst[i ^ m.flip] += neg ? -base * a : base * a;
  }
}

StateVector apply(const PauliSum& op, const StateVector& v) {
  if (op.n_qubits() != v.n_qubits()) {
    throw std::invalid_argument("operator/state qubit counts differ");
  }
  StateVector out(v.n_qubits());
  for (const PauliTerm& t : op.terms()) {
    accumulate_pauli(t.coeff, t.string, v, out);
  }
  return out;
}

cplx expectation(const PauliSum& op, const StateVector& v) {
  return inner(v, apply(op, v));
}

double overlap_sq(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.n_qubits() + b.n_qubits());
  const uint64_t db = b.dim();
  for (uint64_t i = 0; i < a.dim(); ++i) {
    if (a[i] == cplx{0.0, 0.0}) {
      continue;
    }
    for (uint64_t j = 0; j < db; ++j) {
      out[i * db + j] = a[i] * b[j];
    }
  }
  return out;
}

}  // namespace qgd
