#include "nrflow/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nrflow/errors.hpp"

namespace nrflow {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
  return out;
}

void append_block(std::ostream& out, const Matrix& block, Index row) {
  for (Index j = 0; j < block.cols(); ++j) {
    out << ',' << format_double(block(row, j));
  }
}

std::string matrix_to_string(const Matrix& M) {
  std::ostringstream out;
  for (Index i = 0; i < M.rows(); ++i) {
    if (i > 0) out << "; ";
    for (Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(M(i, j));
    }
  }
  return out.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const Index n = traj.states.cols();
  const Index k = traj.controls.cols();
  out << 't';
  for (Index i = 1; i <= n; ++i) out << ",x_" << i;
  for (Index i = 1; i <= k; ++i) out << ",u_" << i;
  for (Index i = 1; i <= k; ++i) out << ",y_" << i;
  for (Index i = 1; i <= k; ++i) out << ",r_" << i;
  out << '\n';
  for (Index row = 0; row < traj.samples(); ++row) {
    out << format_double(traj.times[row]);
    append_block(out, traj.states, row);
    append_block(out, traj.controls, row);
    append_block(out, traj.outputs, row);
    append_block(out, traj.references, row);
    out << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  auto out = open_or_throw(path);
  write_trajectory_csv(traj, out);
}

void write_spacing_csv(const PlatoonResult& result, std::ostream& out) {
  out << 't';
  for (Index j = 0; j < result.interspacing.cols(); ++j) {
    out << ",s_" << (j + 1) << (j + 2);
  }
  out << '\n';
  for (Index row = 0; row < result.times.size(); ++row) {
    out << format_double(result.times[row]);
    append_block(out, result.interspacing, row);
    out << '\n';
  }
}

void write_spacing_csv(const PlatoonResult& result, const std::string& path) {
  auto out = open_or_throw(path);
  write_spacing_csv(result, out);
}

void write_key_value(const KeyValueRecord& record, std::ostream& out) {
  for (const auto& [key, value] : record) out << key << ": " << value << '\n';
}

void write_key_value(const KeyValueRecord& record, const std::string& path) {
  auto out = open_or_throw(path);
  write_key_value(record, out);
}

KeyValueRecord stability_record(const StabilityReport& report,
                                const KeyValueRecord& params) {
  KeyValueRecord record = params;
  record.emplace_back("verdict", std::string(to_string(report.hurwitz)));
  record.emplace_back("max_real_eigenvalue",
                      format_double(report.max_real_eigenvalue));
  std::string poly;
  for (Index i = 0; i < report.char_poly.size(); ++i) {
    if (i > 0) poly += ' ';
    poly += format_double(report.char_poly[i]);
  }
  record.emplace_back("char_poly", poly);
  std::string routh;
  for (std::size_t i = 0; i < report.routh.first_column.size(); ++i) {
    if (i > 0) routh += ' ';
    routh += format_double(report.routh.first_column[i]);
  }
  record.emplace_back("routh_first_column", routh);
  record.emplace_back("routh_indeterminate",
                      report.routh.indeterminate ? "true" : "false");
  record.emplace_back("phi", matrix_to_string(report.phi));
  if (report.psi.size() > 0) record.emplace_back("psi", matrix_to_string(report.psi));
  return record;
}

}  // namespace nrflow
