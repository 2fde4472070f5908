#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace ctcsim::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kValidationError = 2, kProtocolError = 3 };

// Header plus one entry per run. `passed` decides the exit code.
struct CommandReport {
  Json header;
  std::vector<Json> runs;
  bool passed = false;
};

CommandReport superpose_report(const RunConfig& config);
CommandReport distinguish_report(const RunConfig& config);
CommandReport fixed_point_report(const FixedPointConfig& config);
CommandReport example_report(double alpha, double beta, std::uint64_t seed);

// The N = 2 worked example over {|0⟩, |−⟩}: closed forms of U^{0,0}, U^{0,1},
// U^{1,0}, U^{1,1} with the normalizers taken as Euclidean norms.
std::vector<Matrix> printed_example_blocks(Complex alpha, Complex beta);

// Per-column deviation of `built` from `reference` after aligning each column's
// global phase.
std::vector<double> column_phase_deviation(const Matrix& built, const Matrix& reference);

// Full report text: one document (text) or one JSON line per run (--json).
std::string render(const CommandReport& report, bool json);

// Entry point shared by the ctcsim executable and the CLI tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctcsim::cli
