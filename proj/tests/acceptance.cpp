#include <filesystem>
#include <iostream>

#include "suite.hpp"

// Acceptance criteria 1-9, one pass/fail line each. Reports go to a scratch
// directory (or argv[1]) and are re-verified from disk.
int main(int argc, char** argv) {
  mfg::cli::SuiteOptions opts;
  opts.seed = 1;
  opts.out = argc > 1 ? std::filesystem::path(argv[1])
                      : std::filesystem::temp_directory_path() / "mfg-acceptance";
  bool ok = true;
  try {
    for (const auto& r : mfg::cli::run_suite(opts, std::cout)) ok = ok && r.pass;
  } catch (const std::exception& e) {
    std::cout << "acceptance suite aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
  return ok ? 0 : 1;
}
