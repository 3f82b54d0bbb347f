// Copyright 2026 The qgdsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgd/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace qgd::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " +
                               target.parent_path().string() + ": " +
                               ec.message());
    }
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw std::runtime_error("cannot rename " + tmp.string() + " to " +
                             target.string() + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "s,objective,norm_constant,fidelity,noise_sample\n";
  for (const TraceRow& row : rows) {
    out += std::to_string(row.step);
    out += ',';
    out += format_double(row.objective);
    out += ',';
    out += format_double(row.norm_constant);
    out += ',';
    if (row.fidelity.has_value()) out += format_double(*row.fidelity);
    out += ',';
    if (row.noise_sample.has_value()) out += format_double(*row.noise_sample);
    out += '\n';
  }
  return out;
}

std::string baseline_csv(const BaselineTrace& trace) {
  std::string out = "s,objective,norm_constant,fidelity,noise_sample\n";
  for (const BaselineRow& row : trace.rows) {
    out += std::to_string(row.step);
    out += ',';
    out += format_double(row.loss);
    out += ",,,\n";
  }
  return out;
}

}  // namespace qgd::io
