// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "qgd/pauli.hpp"
#include "qgd/state.hpp"

namespace {

void BM_ApplyPauliSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qgd::PauliSum op(n);
  for (int q = 0; q + 1 < n; ++q) {
    std::string zz(static_cast<size_t>(n), 'I');
    zz[static_cast<size_t>(q)] = 'Z';
    zz[static_cast<size_t>(q) + 1] = 'Z';
    op += qgd::PauliSum::single({0.25, 0.0}, qgd::PauliString(zz));
  }
  for (int q = 0; q < n; ++q) {
    std::string x(static_cast<size_t>(n), 'I');
    x[static_cast<size_t>(q)] = 'X';
    op += qgd::PauliSum::single({0.5, 0.0}, qgd::PauliString(x));
  }
  qgd::StateVector v = qgd::StateVector::plus(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qgd::apply(op, v));
  }
}
BENCHMARK(BM_ApplyPauliSum)->Arg(6)->Arg(10)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
