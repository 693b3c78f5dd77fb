#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gradelast/mixed.hpp"
#include "gradelast/oracle.hpp"
#include "gradelast/report.hpp"

namespace gradelast {

enum class Domain { Interval, Strip };
enum class Method { Oracle, Mixed, Pdo };

struct CaseConfig {
  std::string case_id = "case";
  Domain domain = Domain::Interval;
  Method method = Method::Oracle;
  double length = 1.0;
  int modes = 8;  // K
  int ny = 64;
  LameParams lame{0.0, 0.5};
  std::optional<GradientParams> params;  // explicit a1..a5 (interval only)
  double g = 0.1;
  BoundarySet boundary = BoundarySet::Set1;
  // Interval load: polynomial coefficients in x (a constant is one coefficient).
  std::vector<double> polynomial{1.0};
  StripLoad strip_load;
  std::vector<int> resolutions;  // interval n or strip ny; empty = {ny} or {64}
  std::vector<double> g_list;    // empty = {g}
  std::vector<int> norms{0};
  bool compare_closed_form = false;
  bool timing = false;
  std::string output;

  void validate() const;
};

/// Parses JSON text; any violation throws ConfigError.
CaseConfig parse_config(const std::string& json_text);
CaseConfig load_config(const std::filesystem::path& path);

/// Runs the experiment; numerical failures propagate with (k, g, n) in the message.
/// solution_csv receives samples of the last solution computed (finest resolution, last g).
ConvergenceReport run_case(const CaseConfig& config, std::string* solution_csv = nullptr);

/// Writes <dir>/<case_id>.csv and <dir>/<case_id>_summary.json.
void write_report(const ConvergenceReport& report, const std::filesystem::path& dir, const std::string& case_id);

/// Writes <dir>/<case_id>_solution.csv.
void write_solution(const std::string& csv, const std::filesystem::path& dir, const std::string& case_id);

ConvergenceReport parse_report_csv(const std::string& text);

/// One log-log SVG per norm index with at least two rows; returns written
/// files and appends warnings for skipped plots.
std::vector<std::filesystem::path> emit_plots(const ConvergenceReport& report, const std::filesystem::path& dir,
                                              std::vector<std::string>* warnings = nullptr);

/// Throws IoError when the directory cannot be created or written.
void ensure_writable(const std::filesystem::path& dir);

}  // namespace gradelast
