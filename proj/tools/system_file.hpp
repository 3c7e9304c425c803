#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/system.hpp"

namespace symsys::cli {

/// Values from a [defaults] section; command-line flags take precedence.
struct FileDefaults {
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<std::vector<double>> truncations;
};

/// A parsed system file. J and B default to iI and 0 when A is given (the
/// Sturm-Liouville base); otherwise B defaults to 0 and J is required.
struct SystemFile {
  std::string name;
  int n = 0;
  Interval interval;
  std::optional<double> x0;
  CoefficientField J;
  CoefficientField B;
  CoefficientField H;
  std::optional<CoefficientField> A;
  std::optional<CoefficientField> V;
  std::optional<CoefficientField> q;
  FileDefaults defaults;
  std::string source;  // raw text, for the input digest

  SymmetricSystem system() const;
  bool has_square_data() const { return A.has_value(); }
  /// A, V (default 0) and q (default 1) over the base system.
  SquareSystemSpec square_spec() const;
};

/// Sections in brackets, '#' comments, "key = value" lines in [system] and [defaults],
/// DSL text in the matrix sections. Errors carry the file line.
SystemFile parse_system_file(const std::string& text, const std::string& origin = "<input>");
SystemFile load_system_file(const std::filesystem::path& path);

/// "1,2,4" -> {1, 2, 4}
std::vector<double> parse_number_list(const std::string& text);

}  // namespace symsys::cli
