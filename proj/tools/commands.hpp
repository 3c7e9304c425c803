#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "system_file.hpp"

namespace symsys::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

inline const std::vector<std::string> kCommands{"validate", "reduce",  "definite", "deficiency",
                                                "certify",  "shubin",  "embed-sl", "square"};

struct Options {
  std::string command;
  std::string file;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<std::vector<double>> truncations;
  std::optional<std::string> lambda;
  std::optional<std::string> json_path;
  std::string route = "auto";
  std::optional<std::pair<double, double>> interval;
  std::optional<std::string> f1;
  std::optional<std::pair<double, double>> support;
};

struct Outcome {
  int exit_code = kExitOk;
  std::string text;
  nlohmann::ordered_json report;
};

/// Run one command on an already parsed file. Throws the library's exceptions.
Outcome run(const Options& options, const SystemFile& file);

/// Load the file, run, map exceptions to exit codes 1 (input) and 2 (numerical).
/// Never throws; the report is filled in on failure as well.
Outcome run_file(const Options& options);

/// FNV-1a 64 over the file text and the flags that affect the result.
std::string inputs_digest(const Options& options, const std::string& source);

}  // namespace symsys::cli
