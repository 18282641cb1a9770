#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nrflow/lti_analysis.hpp"
#include "nrflow/scenarios.hpp"

namespace nrflow {

/// Floats in all emitted files use 9 significant digits.
std::string format_double(double value);

/// Columns: t, x_1..x_n, u_1..u_k, y_1..y_k, r_1..r_k.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Columns: t, s_12, s_23, ...
void write_spacing_csv(const PlatoonResult& result, std::ostream& out);
void write_spacing_csv(const PlatoonResult& result, const std::string& path);

using KeyValueRecord = std::vector<std::pair<std::string, std::string>>;

void write_key_value(const KeyValueRecord& record, std::ostream& out);
void write_key_value(const KeyValueRecord& record, const std::string& path);

/// Flat key-value form of a stability report; `params` rows are prepended.
KeyValueRecord stability_record(const StabilityReport& report,
                                const KeyValueRecord& params = {});

}  // namespace nrflow
