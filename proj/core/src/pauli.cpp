// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace qgd {

namespace {

constexpr cplx kI{0.0, 1.0};

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Single-qubit product table: (phase exponent of i, resulting letter).
// Row = left letter, column = right letter, order I,X,Y,Z.
struct LetterProduct {
  int phase_pow;  // product = i^phase_pow * letter
  char letter;
};

int letter_index(char c) {
  switch (c) {
    case 'I':
      return 0;
    case 'X':
      return 1;
    case 'Y':
      return 2;
    case 'Z':
      return 3;
    default:
      throw std::logic_error("corrupt Pauli letter");
  }
}

constexpr LetterProduct kTable[4][4] = {
    // I            X            Y            Z
    {{0, 'I'}, {0, 'X'}, {0, 'Y'}, {0, 'Z'}},   // I *
    {{0, 'X'}, {0, 'I'}, {1, 'Z'}, {3, 'Y'}},   // X *
    {{0, 'Y'}, {3, 'Z'}, {0, 'I'}, {1, 'X'}},   // Y *
    {{0, 'Z'}, {1, 'Y'}, {3, 'X'}, {0, 'I'}},   // Z *
};

cplx phase_from_pow(int pow4) {
  switch (pow4 & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return kI;
    case 2:
      return {-1.0, 0.0};
    default:
      return -kI;
  }
}

}  // namespace

int dense_limit() {
  static const int limit = [] {
    if (const char* env = std::getenv("QGDSIM_DENSE_LIMIT")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 1 && v <= 30) {
        return static_cast<int>(v);
      }
    }
    return 12;
  }();
  return limit;
}

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_) {
    if (!valid_letter(c)) {
      throw std::invalid_argument("Pauli letters must be one of I,X,Y,Z, got '" +
                                  std::string(1, c) + "'");
    }
  }
}

PauliString PauliString::identity(int n_qubits) {
  if (n_qubits < 0) {
    throw std::invalid_argument("negative qubit count");
  }
  return PauliString(std::string(static_cast<size_t>(n_qubits), 'I'));
}

bool PauliString::is_identity() const {
  return letters_.find_first_not_of('I') == std::string::npos;
}

std::pair<cplx, PauliString> pauli_multiply(const PauliString& a,
                                            const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli product requires equal qubit counts");
  }
  std::string out(a.letters());
  int phase_pow = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    const LetterProduct& p = kTable[letter_index(a.letter(q))][letter_index(b.letter(q))];
    phase_pow += p.phase_pow;
    out[static_cast<size_t>(q)] = p.letter;
  }
  return {phase_from_pow(phase_pow), PauliString(std::move(out))};
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  for (const PauliTerm& t : terms_) {
    if (t.string.n_qubits() != n_qubits_) {
      throw std::invalid_argument("term qubit count differs from sum qubit count");
    }
  }
  canonicalize();
}

PauliSum PauliSum::identity(int n_qubits) {
  return single({1.0, 0.0}, PauliString::identity(n_qubits));
}

PauliSum PauliSum::single(cplx coeff, const PauliString& s) {
  return PauliSum(s.n_qubits(), {{coeff, s}});
}

PauliSum& PauliSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (PauliTerm& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) {
    return std::abs(t.coeff) < kDropTolerance;
  });
  terms_ = std::move(merged);
  hermitian_ = false;
  return *this;
}

PauliSum& PauliSum::flag_hermitian() {
  for (PauliTerm& t : terms_) {
    if (std::abs(t.coeff.imag()) > kHermiticityTolerance) {
      throw std::invalid_argument(
          "sum is not hermitian: coefficient imaginary part exceeds tolerance");
    }
  }
  for (PauliTerm& t : terms_) {
    t.coeff = cplx{t.coeff.real(), 0.0};
  }
  hermitian_ = true;
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  if (n_qubits_ != rhs.n_qubits_) {
    if (terms_.empty() && n_qubits_ == 0) {
      n_qubits_ = rhs.n_qubits_;
    } else {
      throw std::invalid_argument("sum addition requires equal qubit counts");
    }
  }
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return canonicalize();
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) {
  PauliSum neg = rhs;
  neg *= cplx{-1.0, 0.0};
  return *this += neg;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (PauliTerm& t : terms_) {
    t.coeff *= scalar;
  }
  return canonicalize();
}

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("sum product requires equal qubit counts");
  }
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const PauliTerm& ta : a.terms()) {
    for (const PauliTerm& tb : b.terms()) {
      auto [phase, s] = pauli_multiply(ta.string, tb.string);
      out.push_back({ta.coeff * tb.coeff * phase, std::move(s)});
    }
  }
  return PauliSum(a.n_qubits(), std::move(out));
}

PauliSum sum_map(const PauliSum& a, MapMode mode) {
  std::vector<PauliTerm> out;
  out.reserve(a.size());
  for (const PauliTerm& t : a.terms()) {
    cplx c = t.coeff;
    if (mode == MapMode::kAdjoint || mode == MapMode::kConjugate) {
      c = std::conj(c);
    }
    if (mode == MapMode::kTranspose || mode == MapMode::kConjugate) {
      // Y^T = -Y and Y* = -Y; X,Z,I are real and symmetric.
      size_t y_count = static_cast<size_t>(
          std::count(t.string.letters().begin(), t.string.letters().end(), 'Y'));
      if (y_count & 1) {
        c = -c;
      }
    }
    out.push_back({c, t.string});
  }
  return PauliSum(a.n_qubits(), std::move(out));
}

PauliSum extend_right(const PauliSum& a, int n_extra) {
  if (n_extra < 0) {
    throw std::invalid_argument("negative extension");
  }
  std::vector<PauliTerm> out;
  out.reserve(a.size());
  const std::string pad(static_cast<size_t>(n_extra), 'I');
  for (const PauliTerm& t : a.terms()) {
    out.push_back({t.coeff, PauliString(t.string.letters() + pad)});
  }
  return PauliSum(a.n_qubits() + n_extra, std::move(out));
}

PauliSum extend_left(const PauliSum& a, int n_extra) {
  if (n_extra < 0) {
    throw std::invalid_argument("negative extension");
  }
  std::vector<PauliTerm> out;
  out.reserve(a.size());
  const std::string pad(static_cast<size_t>(n_extra), 'I');
  for (const PauliTerm& t : a.terms()) {
    out.push_back({t.coeff, PauliString(pad + t.string.letters())});
  }
  return PauliSum(a.n_qubits() + n_extra, std::move(out));
}

PauliSum sum_kron(const PauliSum& a, const PauliSum& b) {
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const PauliTerm& ta : a.terms()) {
    for (const PauliTerm& tb : b.terms()) {
      out.push_back(
          {ta.coeff * tb.coeff, PauliString(ta.string.letters() + tb.string.letters())});
    }
  }
  return PauliSum(a.n_qubits() + b.n_qubits(), std::move(out));
}

}  // namespace qgd
