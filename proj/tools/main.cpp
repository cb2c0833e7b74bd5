#include <CLI11.hpp>
#include <iostream>

#include "suite.hpp"
#include "tasks.hpp"

int main(int argc, char** argv) {
  using namespace mfg::cli;
  CLI::App app{"Equivariant matrix factorizations: certified batch computations"};
  app.require_subcommand(1);

  Options opts;
  long seed = 0;
  int degree_bound = 0, max_steps = 0;
  std::string out = "reports";
  app.add_option("--seed", seed, "Seed for randomized suites (overrides the config)");
  app.add_option("--degree-bound", degree_bound, "Degree window for syzygy computations");
  app.add_option("--max-steps", max_steps, "Maximal number of resolution steps");
  app.add_option("--out", out, "Directory for report files")->capture_default_str();
  app.add_flag("--parallel", opts.parallel, "Run independent tasks concurrently");

  std::string config, report;
  std::vector<std::string> tasks;
  CLI::App* run = app.add_subcommand("run", "Run named tasks of a config");
  run->add_option("config", config, "Problem config (JSON)")->required();
  run->add_option("tasks", tasks, "Task names from the config's tasks block")->required();

  std::map<std::string, CLI::App*> shortcuts;
  std::string task_name;
  for (const auto& op : operations()) {
    CLI::App* sub = app.add_subcommand(op, "Run the '" + op + "' task of a config");
    sub->add_option("config", config, "Problem config (JSON)")->required();
    sub->add_option("--task", task_name, "Task name (defaults to the operation name)");
    shortcuts[op] = sub;
  }

  CLI::App* verify = app.add_subcommand("verify", "Re-check the certificates in a report");
  verify->add_option("report", report, "Report file")->required();

  CLI::App* suite = app.add_subcommand("suite", "Run the acceptance corpus");
  bool no_determinism = false;
  suite->add_flag("--skip-determinism", no_determinism, "Do not rerun the suite to compare report trees");

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseFailed;
  }

  if (app.count("--seed")) opts.seed = seed;
  if (app.count("--degree-bound")) opts.degree_bound = degree_bound;
  if (app.count("--max-steps")) opts.max_steps = max_steps;
  opts.out = out;

  try {
    if (*run) return run_command(config, tasks, opts, std::cout, std::cerr);
    if (*verify) return verify_command(report, std::cout, std::cerr);
    if (*suite) {
      SuiteOptions so;
      so.seed = opts.seed.value_or(1);
      so.out = opts.out;
      so.parallel = opts.parallel;
      so.check_determinism = !no_determinism;
      auto results = run_suite(so, std::cout);
      for (const auto& r : results)
        if (!r.pass) return kComputationFailed;
      return kOk;
    }
    for (const auto& [op, sub] : shortcuts)
      if (*sub) return run_command(config, {task_name.empty() ? op : task_name}, opts, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputationFailed;
  }
  return kParseFailed;
}
