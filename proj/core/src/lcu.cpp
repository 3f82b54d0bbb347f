// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/lcu.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgd/circuits.hpp"

namespace qgd {

namespace {

constexpr int kMaxAncillaQubits = 20;

// The step operator's coefficients as a real list, in canonical term
// order. build_gradient_operator guarantees real coefficients; a residual
// imaginary part indicates a corrupted operator.
std::vector<double> real_coefficients(const GradientOperator& d) {
  std::vector<double> out;
  out.reserve(d.step.size());
  for (const PauliTerm& t : d.step.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-12) {
      throw std::logic_error("step operator has a complex coefficient");
    }
    out.push_back(t.coeff.real());
  }
  return out;
}

void check_normalized(const StateVector& v, const char* what) {
  if (std::abs(v.norm_sq() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + " must be unit normalized");
  }
}

}  // namespace

Eigen::MatrixXd build_w(const std::vector<double>& d) {
  if (d.empty()) {
    throw std::invalid_argument("coefficient list is empty");
  }
  double norm_sq = 0.0;
  for (double x : d) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("coefficient list has a non-finite entry");
    }
    norm_sq += x * x;
  }
  if (norm_sq <= 0.0) {
    throw std::invalid_argument("coefficient list is all zero");
  }
  int ancilla = 0;
  while ((size_t{1} << ancilla) < d.size()) {
    ++ancilla;
  }
  if (ancilla > kMaxAncillaQubits) {
    throw std::invalid_argument("padded ancilla register exceeds 20 qubits");
  }
  const Eigen::Index m_pad = Eigen::Index{1} << ancilla;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m_pad);
  for (size_t i = 0; i < d.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = d[i];
  }
  c /= std::sqrt(norm_sq);
  Eigen::VectorXd u = -c;
  u(0) += 1.0;  // e0 - c
  const double un = u.norm();
  if (un < 1e-14) {
    return Eigen::MatrixXd::Identity(m_pad, m_pad);
  }
  u /= un;
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(m_pad, m_pad);
  w.noalias() -= 2.0 * u * u.transpose();
  return w;
}

LcuBlockResult lcu_block(const GradientOperator& d, const StateVector& input) {
  check_normalized(input, "block input");
  const int ancilla = d.ancilla_qubits;
  if (ancilla > kMaxAncillaQubits) {
    throw std::invalid_argument("ancilla register exceeds 20 qubits");
  }
  if (input.n_qubits() != d.step.n_qubits()) {
    throw std::invalid_argument("input register does not match the step operator");
  }
  const std::vector<double> coeffs = real_coefficients(d);
  const Eigen::MatrixXd w = build_w(coeffs);

  // |0^m~> (x) input, then W, the selected Pauli ladder, and the Hadamard
  // layer.
  StateVector state = tensor(StateVector::basis(ancilla, 0), input);
  state = apply_top_register_matrix(w.cast<cplx>(), ancilla, state);
  std::vector<PauliString> strings;
  strings.reserve(d.step.size());
  for (const PauliTerm& t : d.step.terms()) {
    strings.push_back(t.string);
  }
  state = apply_select_pauli(strings, ancilla, state);
  const Eigen::Matrix2cd h = hadamard_gate();
  for (int q = 0; q < ancilla; ++q) {
    state = apply_1q_gate(h, q, state);
  }

  LcuBlockResult result;
  result.full_register_state = state;
  const uint64_t width = input.dim();
  StateVector branch(input.n_qubits());
  double prob = 0.0;
  for (uint64_t r = 0; r < width; ++r) {
    branch[r] = state[r];
    prob += std::norm(state[r]);
  }
  result.block_probability = prob;
  if (prob < 1e-300) {
    throw std::runtime_error(
        "the post-selected branch is numerically zero: the step operator "
        "annihilated the input");
  }
  branch *= cplx{1.0 / std::sqrt(prob), 0.0};
  result.postselected_state = std::move(branch);
  return result;
}

double success_probability(const GradientOperator& d, const StateVector& init,
                           int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be non-negative");
  }
  check_normalized(init, "initial state");
  const double denom =
      d.coeff_norm_sq * static_cast<double>(uint64_t{1} << d.ancilla_qubits);
  double prob = 1.0;
  StateVector sigma = init;
  for (int s = 0; s < steps; ++s) {
    StateVector w = apply(d.step, sigma);
    const double c = w.norm_sq();
    prob *= c / denom;
    if (c < 1e-300) {
      return 0.0;
    }
    w *= cplx{1.0 / std::sqrt(c), 0.0};
    sigma = std::move(w);
  }
  return prob;
}

StateVector algorithm_output_state(const GradientOperator& d,
                                   const StateVector& input, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be non-negative");
  }
  check_normalized(input, "initial state");
  const int ancilla = d.ancilla_qubits;
  if (ancilla > kMaxAncillaQubits) {
    throw std::invalid_argument("ancilla register exceeds 20 qubits");
  }
  const double denom =
      d.coeff_norm_sq * static_cast<double>(uint64_t{1} << ancilla);

  StateVector sigma = input;
  double amplitude = 1.0;  // ||D^s v|| / (N_D M_pad)^{s/2}, telescoped
  for (int s = 0; s < steps; ++s) {
    StateVector w = apply(d.step, sigma);
    const double c = w.norm_sq();
    if (c < 1e-300) {
      amplitude = 0.0;
      break;
    }
    amplitude *= std::sqrt(c / denom);
    w *= cplx{1.0 / std::sqrt(c), 0.0};
    sigma = std::move(w);
  }

  const int total = ancilla + input.n_qubits();
  StateVector out(total);
  const uint64_t width = input.dim();
  for (uint64_t r = 0; r < width; ++r) {
    out[r] = amplitude * sigma[r];
  }
  const double leftover = std::max(0.0, 1.0 - amplitude * amplitude);
  if (leftover > 0.0 && ancilla > 0) {
    // Failure weight on ancilla |10...0>; the work-register direction is
    // immaterial for ancilla-diagonal observables.
    const uint64_t base = (uint64_t{1} << (ancilla - 1)) * width;
    const double scale = std::sqrt(leftover);
    for (uint64_t r = 0; r < width; ++r) {
      out[base + r] = scale * sigma[r];
    }
  }
  return out;
}

AmplificationPlan amplification_count(double p) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("success probability must lie in (0, 1]");
  }
  AmplificationPlan plan;
  plan.theta = std::asin(std::sqrt(p));
  plan.rounds = static_cast<long>(std::floor(std::numbers::pi / (4.0 * plan.theta)));
  plan.measurement_bound = 2 * plan.rounds + 1;
  return plan;
}

ResourceReport complexity_report(const GradientOperator& d, int n_sites) {
  if (n_sites <= 0) {
    throw std::invalid_argument("site count must be positive");
  }
  ResourceReport report;
  report.term_count = static_cast<long>(d.term_count());
  report.ancilla_qubits = d.ancilla_qubits;
  report.padded_terms = long{1} << d.ancilla_qubits;
  report.coefficient_norm = d.coeff_norm_sq;
  report.gate_estimate = static_cast<long>(n_sites) * report.term_count *
                         static_cast<long>(d.ancilla_qubits) *
                         static_cast<long>(d.ancilla_qubits);
  report.qubit_count = d.ancilla_qubits + 2 * n_sites;
  return report;
}

LcuVerification verify_lcu(const GradientOperator& d, const StateVector& input,
                           int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be non-negative");
  }
  LcuVerification v;
  v.resources = complexity_report(d, (input.n_qubits() + 1) / 2);
  v.per_step_probability.reserve(static_cast<size_t>(steps));
  StateVector sigma = input;
  for (int s = 0; s < steps; ++s) {
    LcuBlockResult round = lcu_block(d, sigma);
    const StepResult algebra = qgd_step(d, sigma);
    StateVector diff = round.postselected_state;
    diff -= algebra.state;
    v.max_state_error = std::max(v.max_state_error, diff.norm());
    v.per_step_probability.push_back(round.block_probability);
    v.success_prob *= round.block_probability;
    sigma = round.postselected_state;
  }
  v.direct_success_prob = success_probability(d, input, steps);
  v.amplification = amplification_count(std::max(v.success_prob, 1e-300));
  return v;
}

}  // namespace qgd
