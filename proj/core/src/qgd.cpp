// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/qgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qgd/dense.hpp"
#include "qgd/rng.hpp"

namespace qgd {

void QgdConfig::validate() const {
  if (max_steps < 1) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  if (noise_amplitude < 0.0 || !std::isfinite(noise_amplitude)) {
    throw std::invalid_argument("noise amplitude must be finite and non-negative");
  }
  if (!(divergence_factor > 1.0)) {
    throw std::invalid_argument("divergence factor must exceed 1");
  }
}

GradientOperator build_gradient_operator(const PauliSum& objective, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
  GradientOperator g;
  g.objective = objective;
  g.objective.flag_hermitian();  // throws when the objective is not hermitian
  g.gamma = gamma;
  g.step = PauliSum::identity(objective.n_qubits());
  g.step -= cplx{2.0 * gamma, 0.0} * g.objective;
  for (const PauliTerm& t : g.step.terms()) {
    g.coeff_norm_sq += std::norm(t.coeff);
  }
  const size_t m = g.step.size();
  int bits = 0;
  while (m > (size_t{1} << bits)) {
    ++bits;
  }
  g.ancilla_qubits = bits;
  return g;
}

StepResult qgd_step(const GradientOperator& g, const StateVector& v, double noise) {
  StateVector out = apply(g.step, v);
  if (noise != 0.0) {
    StateVector shifted = v;
    shifted *= cplx{noise, 0.0};
    out += shifted;
  }
  const double c = out.norm_sq();
  if (c < 1e-300) {
    throw std::runtime_error(
        "descent step annihilated the state: the input lies in the kernel of "
        "the effective operator");
  }
  out *= cplx{1.0 / std::sqrt(c), 0.0};
  return {std::move(out), c};
}

QgdResult qgd_run(const GradientOperator& g, const StateVector& init,
                  const QgdConfig& config, const StateVector* reference) {
  config.validate();
  if (std::abs(init.norm_sq() - 1.0) > 1e-9) {
    throw std::invalid_argument("initial state must be unit normalized");
  }
  QgdResult result;
  result.final_state = init;

  const double f_init = expectation(g.objective, init).real();
  result.final_objective = f_init;
  if (f_init <= config.tolerance) {
    result.converged = true;
    return result;
  }

  Rng rng(config.seed);
  const bool noisy = config.noise_amplitude > 0.0;
  StateVector state = init;
  for (int s = 1; s <= config.max_steps; ++s) {
    TraceRow row;
    row.step = s;
    double noise = 0.0;
    if (noisy) {
      noise = config.noise_amplitude * rng.gaussian();
      row.noise_sample = noise;
    }
    StepResult sr = qgd_step(g, state, noise);
    state = std::move(sr.state);
    row.norm_constant = sr.norm_constant;
    row.objective = expectation(g.objective, state).real();
    if (reference != nullptr) {
      row.fidelity = overlap_sq(*reference, state);
    }
    result.trace.push_back(row);
    result.steps_taken = s;
    result.final_objective = row.objective;
    if (row.objective <= config.tolerance) {
      result.converged = true;
      break;
    }
    if (row.objective > config.divergence_factor * f_init) {
      result.diverged = true;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

SpectralSummary analyze_spectrum(const PauliSum& objective, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
  const Eigen::VectorXd evals = hermitian_eigenvalues(objective);
  SpectralSummary s;
  s.gamma = gamma;
  s.eigenvalues.assign(evals.data(), evals.data() + evals.size());
  s.contractions.reserve(s.eigenvalues.size());
  for (double lambda : s.eigenvalues) {
    s.contractions.push_back(1.0 - 2.0 * gamma * lambda);
  }
  const double lambda_max = s.eigenvalues.back();
  s.gamma_critical = lambda_max > 0.0 ? 1.0 / lambda_max
                                      : std::numeric_limits<double>::infinity();
  s.converging = gamma < s.gamma_critical;
  std::vector<double> mags;
  mags.reserve(s.contractions.size());
  for (double d : s.contractions) {
    mags.push_back(std::abs(d));
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  s.degenerate_dominant = mags.size() > 1 && mags[0] - mags[1] < 1e-12;
  return s;
}

double convergence_bound(const SpectralSummary& s, double tau1_sq, int steps) {
  if (!(tau1_sq > 0.0) || tau1_sq > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "initial overlap with the dominant eigenvector must lie in (0, 1]");
  }
  if (steps < 0) {
    throw std::invalid_argument("step count must be non-negative");
  }
  if (s.eigenvalues.size() < 2) {
    return 0.0;  // one-dimensional space: the iterate is already extremal
  }
  std::vector<double> mags;
  mags.reserve(s.contractions.size());
  for (double d : s.contractions) {
    mags.push_back(std::abs(d));
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  const double spread = s.eigenvalues.back() - s.eigenvalues.front();
  if (mags[0] <= 0.0) {
    return 0.0;  // the dominant mode is annihilated in one step
  }
  const double ratio = mags[1] / mags[0];
  return spread * (1.0 - std::min(tau1_sq, 1.0)) / tau1_sq *
         std::pow(ratio, 2.0 * steps);
}

}  // namespace qgd
