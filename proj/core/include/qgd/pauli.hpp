// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Weighted sums of Pauli strings: the exact operator algebra every other
// component computes with. Strings are stored as letter sequences ("IXYZ"),
// qubit 0 is the leftmost tensor factor and the most significant bit of
// amplitude indices. Sums are kept canonical: terms sorted lexicographically
// by letters, duplicates merged, coefficients below drop_tolerance removed.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qgd {

using cplx = std::complex<double>;

// |coeff| below this is treated as zero during canonicalization.
inline constexpr double kDropTolerance = 1e-12;
// Max |Im(coeff)| a sum may carry and still be flagged hermitian.
inline constexpr double kHermiticityTolerance = 1e-10;

// Largest qubit count for which dense 2^n x 2^n conversion is permitted.
// Overridable via the QGDSIM_DENSE_LIMIT environment variable.
int dense_limit();

class PauliString {
 public:
  PauliString() = default;
  // letters: one of 'I','X','Y','Z' per qubit, leftmost = qubit 0.
  explicit PauliString(std::string letters);
  static PauliString identity(int n_qubits);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  char letter(int qubit) const { return letters_[static_cast<size_t>(qubit)]; }
  bool is_identity() const;

  // Ordering and equality are by letter sequence (lexicographic).
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::string letters_;
};

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

// (phase, product) with dense(a)*dense(b) == phase * dense(product).
// phase is one of {1, i, -1, -i}. Throws std::invalid_argument on a
// qubit-count mismatch.
std::pair<cplx, PauliString> pauli_multiply(const PauliString& a,
                                            const PauliString& b);

class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  static PauliSum identity(int n_qubits);
  // Single term c * P.
  static PauliSum single(cplx coeff, const PauliString& s);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // True once flag_hermitian() has verified all-real coefficients.
  bool is_hermitian_flagged() const { return hermitian_; }
  // Verifies max |Im(coeff)| < hermiticity_tolerance, strips the imaginary
  // residues, and sets the flag. Throws std::invalid_argument if any
  // coefficient's imaginary part exceeds the tolerance.
  PauliSum& flag_hermitian();

  // Sorted/merged/pruned form. All constructors and arithmetic already
  // return canonical sums; exposed for explicitness in call sites that
  // mutate coefficients.
  PauliSum& canonicalize();

  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum& operator-=(const PauliSum& rhs);
  PauliSum& operator*=(cplx scalar);

  friend PauliSum operator+(PauliSum lhs, const PauliSum& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend PauliSum operator-(PauliSum lhs, const PauliSum& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend PauliSum operator*(cplx scalar, PauliSum s) {
    s *= scalar;
    return s;
  }

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  bool hermitian_ = false;
};

// Canonical product equal, as a dense operator, to dense(a)*dense(b).
// Term count is at most |a|*|b| before merging.
PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);

enum class MapMode { kAdjoint, kTranspose, kConjugate };

// Adjoint conjugates coefficients only (Pauli strings are hermitian);
// transpose and conjugate additionally flip the sign once per Y letter.
PauliSum sum_map(const PauliSum& a, MapMode mode);

// a placed on the left factor of an enlarged register: each string gains
// n_extra trailing identity letters.
PauliSum extend_right(const PauliSum& a, int n_extra);
// Identity letters prepended instead.
PauliSum extend_left(const PauliSum& a, int n_extra);

// Tensor product: a on the left (more significant) factor, letters
// concatenated termwise.
PauliSum sum_kron(const PauliSum& a, const PauliSum& b);

}  // namespace qgd
