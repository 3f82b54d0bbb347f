// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Trace serialization and small file utilities. The CSV schema is the
// stable exchange format for descent traces: baseline trainer traces reuse
// it (loss in the objective column, optionals empty) so runs overlay in
// the same plot.

#pragma once

#include <string>
#include <vector>

#include "qgd/baselines.hpp"
#include "qgd/qgd.hpp"

namespace qgd::io {

// Round-trip decimal form at 17 significant digits ("%.17g").
std::string format_double(double x);

// Writes content via a temporary file in the destination directory plus an
// atomic rename, creating parent directories as needed. Throws
// std::runtime_error on filesystem failures.
void write_file_atomic(const std::string& path, const std::string& content);

// Whole-file read; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

// Header `s,objective,norm_constant,fidelity,noise_sample`; one row per
// step; floats at 17 significant digits; optional columns empty when the
// row carries no value for them.
std::string trace_csv(const std::vector<TraceRow>& rows);

// Same header and layout for a trainer trace: step, loss, and three empty
// optional columns.
std::string baseline_csv(const BaselineTrace& trace);

}  // namespace qgd::io
