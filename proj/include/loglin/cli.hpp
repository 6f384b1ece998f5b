#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loglin/report.hpp"

namespace loglin::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericError = 3;

struct FitOptions {
  std::filesystem::path table;
  std::string model;
  double tol = kDefaultIpfTolerance;
  int max_iter = kDefaultIpfMaxIterations;
  std::optional<std::filesystem::path> out;
};

struct SelectOptions {
  std::filesystem::path table;
  double alpha = kDefaultAlpha;
  TieRule tie_rule = TieRule::Lexicographic;
};

struct ClassifyOptions {
  std::string model;
  /// Factor names; inferred from the model string when empty and no table.
  std::vector<std::string> factors;
  std::optional<std::filesystem::path> table;
};

struct SimulateOptions {
  std::string scheme = "multinomial";
  /// Weights, means, or expected counts, depending on the scheme.
  std::optional<std::filesystem::path> table;
  /// Uniform base table with factors "1", "2", ... when no table is given.
  std::vector<std::size_t> shape;
  std::optional<std::uint64_t> n;
  std::vector<std::string> fixed;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
};

/// Commands build a report; they throw InputError / NumericError on failure.
Report cmd_fit(const FitOptions& opts);
Report cmd_select(const SelectOptions& opts);
Report cmd_classify(const ClassifyOptions& opts);
Report cmd_simulate(const SimulateOptions& opts);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loglin::cli
