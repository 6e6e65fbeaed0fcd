#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "falva/problems.hpp"
#include "falva/verify.hpp"

namespace falva::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;        // validation or usage error
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitNumerical = 3;

/// Writes ops.csv (node, input, one-sided and combined derivatives) plus a
/// report sidecar into out_dir.
int cmd_ops(const ProblemConfig& config, const std::filesystem::path& out_dir);

/// Runs the direct minimizer; writes path.csv and report.json. Returns
/// kExitNoConvergence when the solver stops without meeting the gradient
/// tolerance (the report is still written).
int cmd_minimize(const ProblemConfig& config, const std::filesystem::path& out_dir);

/// Runs a named verification suite; writes verify_<suite>.csv and
/// report.json. Returns kExitOk iff every case passes, kExitNumerical
/// otherwise.
int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::filesystem::path& out_dir);

}  // namespace falva::cli
