#pragma once

// Batch front end: verification suites, reductions and grid exports with
// deterministic JSON reports.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leftinv/check.hpp"
#include "leftinv/numerics.hpp"

namespace leftinv::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kInvalidInput = 2 };

struct RunConfig {
  std::filesystem::path spec_path;
  Eigen::Index size = 256;
  int depth = 0;  // 0: the command's default
  int grid = 64;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> check_against;
  RankTolerance tolerance;
};

struct Report {
  std::string command;
  nlohmann::ordered_json spec;  // echo of the loaded spec, or null
  nlohmann::ordered_json config;
  std::vector<CheckRecord> results;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<std::string> skipped;  // suites that do not apply, with the reason

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

/// RankTolerance from the LEFTINV_TOL environment variable, if set.
RankTolerance tolerance_from_environment();

Report cmd_verify(const RunConfig& config);
/// Normal form of `expr`; with config.check_against also the numeric oracle.
Report cmd_reduce(const std::string& expr, const RunConfig& config);
/// Writes kernel.csv into the output directory (default: current directory).
Report cmd_kernel(const RunConfig& config);
/// Writes basis.csv into the output directory.
Report cmd_basis(const RunConfig& config);
Report cmd_wold(const RunConfig& config);

/// Exit code for a library error raised outside any suite.
int exit_code_for(const Error& e);

/// Full command line entry point; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leftinv::cli
