#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace mfg::cli {

struct SuiteOptions {
  long seed = 1;
  std::filesystem::path out = "reports";
  bool parallel = false;
  /// Rerun criteria 1-8 into a scratch tree and compare it byte for byte.
  bool check_determinism = true;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Criteria 1-8 write their reports under out/criterion-N and out/summary.json;
/// criterion 9 is the determinism rerun. One line per criterion goes to `log`.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts, std::ostream& log);

/// Criteria 1-8 only.
std::vector<CriterionResult> run_criteria(long seed, const std::filesystem::path& out, bool parallel);

/// Relative path -> contents of every regular file below root.
std::map<std::string, std::string> read_tree(const std::filesystem::path& root);

}  // namespace mfg::cli
