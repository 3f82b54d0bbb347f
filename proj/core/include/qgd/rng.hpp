// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random number generation. The engine is std::mt19937_64
// (bit-exact everywhere), but the distributions are implemented here rather
// than taken from <random>: the standard leaves normal_distribution and
// discrete_distribution algorithms implementation-defined, which would make
// traces differ across toolchains. Uniform doubles use the top 53 bits of
// the engine word; gaussians use Box-Muller; categorical sampling inverts
// the CDF with one uniform draw.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace qgd {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t raw() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; draws are cached in pairs.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Shift into (0, 1] so the log argument is never zero.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Index sampled proportionally to weights (all must be >= 0, sum > 0),
  // by CDF inversion on a single uniform draw.
  size_t categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0 || !std::isfinite(w)) {
        throw std::invalid_argument("categorical weights must be finite and non-negative");
      }
      total += w;
    }
    if (total <= 0.0) {
      throw std::invalid_argument("categorical weights must have positive sum");
    }
    const double target = uniform() * total;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (target < acc) {
        return i;
      }
    }
    return weights.empty() ? throw std::invalid_argument("empty weight vector")
                           : weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qgd
