#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gradelast {

struct ReportRow {
  std::string case_id;
  std::string domain;
  std::string method;
  double g = 0.0;
  int h_or_ny = 0;
  int t = 0;
  double error = 0.0;
  double runtime_ms = 0.0;
};

struct SlopeFit {
  int t = 0;
  std::optional<double> slope;  // empty when undefined (zero or single-point data)
  double half_width95 = 0.0;    // 95% confidence half-width of the slope
  std::optional<double> target;
  bool monotone = true;
  bool pass = false;
};

struct ConvergenceReport {
  std::vector<ReportRow> rows;
  std::vector<SlopeFit> fits;

  /// Least-squares log-log slope of error against g for norm index t.
  SlopeFit fit(int t, std::optional<double> target) const;
  void sort_rows();
  std::string csv() const;
};

/// Least squares slope of log(y) on log(x) with a 95% Student-t half-width.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gradelast
