// runner.hpp — Subcommand orchestration: runs the configured experiment and
// writes report.json / cells.csv / coeffs.json into the output directory.
// Structured errors go to the diagnostic stream as single-line JSON.

#pragma once

#include <iosfwd>
#include <string>

#include "rqi/config.hpp"

namespace rqi {

// Commands: "coeffs", "check-hp", "converge", "cocycle-check", "example".
// Returns the process exit code: 0 when every enabled check passes, 1 when a
// check fails, 2 for configuration/validation/capacity errors.
int run_command(const std::string& command, const RunConfig& config,
                std::ostream& out, std::ostream& err);

// Largest resolution whose chain state (dim_initial·dim_noise^(2^k)) fits the
// capacity guard; -1 when even a single slice does not fit.
int max_chain_resolution(const ModelSpec& model, std::size_t max_entries);

}  // namespace rqi
