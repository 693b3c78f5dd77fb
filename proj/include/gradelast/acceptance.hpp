#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gradelast {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::vector<int> ids;  // empty runs every criterion
  /// Perturbs one component of H in the constitutive criteria.
  bool break_h_symmetry = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<std::pair<std::string, double>> measured;
  std::string target;
  bool pass = false;
  double runtime_s = 0.0;
  double budget_s = 0.0;
  std::string error;  // set when the criterion threw
};

inline constexpr int kCriterionCount = 11;

const char* criterion_name(int id);
double criterion_budget(int id);

/// Throws InvalidArgument for ids outside 1..11.
CriterionResult run_criterion(int id, const VerifyOptions& options);
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

/// [{criterion, name, measured{...}, target, pass, runtime_s}]
std::string acceptance_json(const std::vector<CriterionResult>& results);
std::string acceptance_line(const CriterionResult& result);

}  // namespace gradelast
