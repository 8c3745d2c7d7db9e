#pragma once
#include <string>

#include "machsim/engine.hpp"
#include "machsim/sweep.hpp"
#include "machsim/types.hpp"

namespace machsim {

// Loads a scenario file into a SimConfig (see scenarios/reference.toml for the
// format). Relative trace paths resolve against the scenario file's directory;
// the scenario name defaults to the file stem. Does not validate.
SimConfig load_scenario(const std::string& path);

// Same, from an in-memory document (used by tests; trace paths stay as-is).
SimConfig parse_scenario(const std::string& text, const std::string& name_hint);

// Reads a [grid] table of parameter value lists; parameters absent from the
// file fall back to the base scenario's single value.
SweepGrid load_grid(const std::string& path, const StrategyParams& base);
SweepGrid parse_grid(const std::string& text, const StrategyParams& base);

// "<scenario>_<strategy>_<interval>", e.g. sparse4_mach_1 or sparse4_mach_oracle
std::string result_basename(const SimConfig& cfg);

// Writes <base>.csv, <base>.json and <base>_events.csv into out_dir (created if
// missing). Returns the common path prefix out_dir/<base>.
std::string write_run_outputs(const std::string& out_dir, const SimConfig& cfg,
                              const RunResult& result);

}  // namespace machsim
