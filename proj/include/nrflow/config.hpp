#pragma once

#include <string>

#include "nrflow/scenarios.hpp"

namespace nrflow {

/// Parses a scenario from its JSON configuration text. Strict: unknown keys
/// are rejected and every constructor invariant is checked, with errors
/// naming the offending field (e.g. "controller.T").
ScenarioSpec parse_config(const std::string& text);

ScenarioSpec load_config_file(const std::string& path);

/// Canonical emission: parse_config(to_canonical_config(spec)) reproduces an
/// equivalent spec, and equal specs serialize byte-identically.
std::string to_canonical_config(const ScenarioSpec& spec);

}  // namespace nrflow
