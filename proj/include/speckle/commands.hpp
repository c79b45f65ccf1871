#pragma once

#include <ostream>

#include "speckle/config.hpp"

namespace speckle {

// Operator-facing pipeline steps behind the speckle-invert subcommands.
// Each throws on failure; the CLI maps exception types onto exit codes
// (0 ok, 2 input validation, 3 training divergence, 4 artifact mismatch,
// 1 anything else).

void cmd_gen_data(const RunConfig& cfg, std::ostream& out);
void cmd_train(const RunConfig& cfg, std::ostream& out);
void cmd_eval(const RunConfig& cfg, std::ostream& out);
void cmd_baseline(const RunConfig& cfg, std::ostream& out);

}  // namespace speckle
