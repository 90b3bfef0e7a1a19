#pragma once

// Acceptance suite for the two ten-bar benchmarks, the synthetic oracle
// problems, and the property checks. Shared by `tsopt verify` and the
// acceptance test binary.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsopt {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string obtained;
  bool passed = false;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::filesystem::path config_dir = TSOPT_CONFIG_DIR;
  std::ostream* log = nullptr;  // progress messages
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

void print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace tsopt
