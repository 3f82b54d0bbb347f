// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/baselines.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "qgd/circuits.hpp"
#include "qgd/rng.hpp"

namespace qgd {

namespace {

void check_angles(const std::vector<double>& angles, size_t expected,
                  const char* label) {
  if (angles.size() != expected) {
    throw std::invalid_argument(std::string(label) + " expects " +
                                std::to_string(expected) + " angles, got " +
                                std::to_string(angles.size()));
  }
  for (double a : angles) {
    if (!std::isfinite(a)) {
      throw std::invalid_argument(std::string(label) + " angle is not finite");
    }
  }
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

void check_unit(const StateVector& v, const char* label) {
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(label) +
                                " state must be unit normalized");
  }
}

void check_objective(const PauliSum& objective, int qubits) {
  if (!objective.is_hermitian_flagged()) {
    throw std::invalid_argument("objective must be flagged hermitian");
  }
  if (objective.n_qubits() != qubits) {
    throw std::invalid_argument("objective acts on " +
                                std::to_string(objective.n_qubits()) +
                                " qubits, expected " + std::to_string(qubits));
  }
}

}  // namespace

void DvqeParams::validate() const {
  check_angles(alpha, 6, "mixer");
  check_angles(beta, 12, "purifier");
}

DvqeParams DvqeParams::from_flat(const std::vector<double>& theta) {
  if (theta.size() != 18) {
    throw std::invalid_argument("flat parameter vector must have 18 entries, got " +
                                std::to_string(theta.size()));
  }
  DvqeParams p;
  p.alpha.assign(theta.begin(), theta.begin() + 6);
  p.beta.assign(theta.begin() + 6, theta.end());
  p.validate();
  return p;
}

std::vector<double> DvqeParams::to_flat() const {
  validate();
  std::vector<double> flat(alpha);
  flat.insert(flat.end(), beta.begin(), beta.end());
  return flat;
}

Matrix dvqe_mixer(const std::vector<double>& alpha) {
  check_angles(alpha, 6, "mixer");
  Eigen::Matrix4cd m = controlled_gate(ry_gate(alpha[5]));
  m = kron2(ry_gate(alpha[3]), ry_gate(alpha[4])) * m;
  m = controlled_gate(ry_gate(alpha[2])) * m;
  m = kron2(ry_gate(alpha[0]), ry_gate(alpha[1])) * m;
  return Matrix(m);
}

Matrix dvqe_purifier(const std::vector<double>& beta) {
  check_angles(beta, 12, "purifier");
  const auto layer = [&beta](int base) {
    return kron2(ry_gate(beta[base]) * rx_gate(beta[base + 1]),
                 ry_gate(beta[base + 2]) * rx_gate(beta[base + 3]));
  };
  Eigen::Matrix4cd m = layer(8);
  m = cz_gate() * m;
  m = layer(4) * m;
  m = cz_gate() * m;
  m = layer(0) * m;
  return Matrix(m);
}

StateVector dvqe_ansatz_state(const DvqeParams& params, const StateVector& init) {
  params.validate();
  if (init.n_qubits() != 4) {
    throw std::invalid_argument("ansatz input must live on 4 qubits, got " +
                                std::to_string(init.n_qubits()));
  }
  check_unit(init, "ansatz input");
  const Eigen::Matrix4cd mixer = dvqe_mixer(params.alpha);
  const Eigen::Matrix4cd purifier = dvqe_purifier(params.beta);
  const Eigen::Matrix4cd conj_purifier = purifier.conjugate();
  StateVector v = apply_2q_gate(mixer, 0, 1, init);
  v = apply_2q_gate(cnot_gate(), 0, 2, v);
  v = apply_2q_gate(cnot_gate(), 1, 3, v);
  v = apply_2q_gate(purifier, 0, 1, v);
  v = apply_2q_gate(conj_purifier, 2, 3, v);
  return v;
}

double dvqe_loss(const PauliSum& objective, const StateVector& init,
                 const std::vector<double>& theta) {
  check_objective(objective, 4);
  const StateVector state = dvqe_ansatz_state(DvqeParams::from_flat(theta), init);
  return expectation(objective, state).real();
}

double ansatz_energy(const PauliSum& objective, const AnsatzSpec& spec,
                     const std::vector<double>& params) {
  spec.validate();
  check_objective(objective, spec.qubits);
  const StateVector state = apply_preparation_ansatz(spec, params);
  return expectation(objective, state).real();
}

std::vector<double> finite_difference_gradient(const LossFunction& loss,
                                               const std::vector<double>& params,
                                               double fd_step) {
  if (!loss) {
    throw std::invalid_argument("loss function is empty");
  }
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw std::invalid_argument("fd_step must be positive and finite");
  }
  std::vector<double> probe = params;
  std::vector<double> grad(params.size(), 0.0);
  for (size_t i = 0; i < params.size(); ++i) {
    probe[i] = params[i] + fd_step;
    const double up = loss(probe);
    probe[i] = params[i] - fd_step;
    const double down = loss(probe);
    probe[i] = params[i];
    grad[i] = (up - down) / (2.0 * fd_step);
  }
  return grad;
}

void TrainOptions::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  if (steps < 1) {
    throw std::invalid_argument("steps must be at least 1");
  }
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw std::invalid_argument("fd_step must be positive and finite");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("init_scale must be non-negative and finite");
  }
}

BaselineTrace variational_train(const LossFunction& loss,
                                std::vector<double> initial,
                                const TrainOptions& options) {
  options.validate();
  if (!loss) {
    throw std::invalid_argument("loss function is empty");
  }
  if (initial.empty()) {
    throw std::invalid_argument("parameter vector must not be empty");
  }

  BaselineTrace trace;
  trace.initial_params = initial;
  trace.initial_loss = loss(initial);
  if (!std::isfinite(trace.initial_loss)) {
    throw std::runtime_error("training loss is non-finite at the initial point");
  }
  trace.best_loss = trace.initial_loss;
  trace.best_step = 0;
  trace.rows.reserve(static_cast<size_t>(options.steps));

  std::vector<double> params = std::move(initial);
  for (int step = 1; step <= options.steps; ++step) {
    const std::vector<double> grad =
        finite_difference_gradient(loss, params, options.fd_step);
    for (size_t i = 0; i < params.size(); ++i) {
      params[i] -= options.eta * grad[i];
    }
    const double value = loss(params);
    if (!std::isfinite(value)) {
      throw std::runtime_error("training loss became non-finite at step " +
                               std::to_string(step));
    }
    trace.rows.push_back(BaselineRow{step, value});
    if (value < trace.best_loss) {
      trace.best_loss = value;
      trace.best_step = step;
    }
  }
  trace.final_params = std::move(params);
  return trace;
}

BaselineTrace variational_train(const LossFunction& loss, size_t n_params,
                                const TrainOptions& options) {
  options.validate();
  if (n_params == 0) {
    throw std::invalid_argument("n_params must be positive");
  }
  Rng rng(options.seed);
  std::vector<double> initial(n_params, 0.0);
  for (double& p : initial) {
    p = options.init_scale * rng.gaussian();
  }
  return variational_train(loss, std::move(initial), options);
}

}  // namespace qgd
