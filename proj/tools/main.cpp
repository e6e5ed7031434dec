#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conipm/problem_io.hpp"
#include "conipm/solver.hpp"
#include "conipm/verifier.hpp"

namespace {

// Exit codes (contractual):
//   0 optimal, 2 primal-infeasible, 3 dual-infeasible, 4 ill-posed,
//   5 iteration-limit, 64 usage, 65 parse/validation, 70 internal error.
int statusExitCode(conipm::SolveStatus s) {
  switch (s) {
    case conipm::SolveStatus::Optimal: return 0;
    case conipm::SolveStatus::PrimalInfeasible: return 2;
    case conipm::SolveStatus::DualInfeasible: return 3;
    case conipm::SolveStatus::IllPosed: return 4;
    case conipm::SolveStatus::IterationLimit: return 5;
  }
  return 70;
}

int runSolve(const std::string& problem_path, int preset, double eps, bool line_search,
             const std::string& trace_path, int max_iters, const std::string& kkt) {
  const conipm::ConicProblem problem = conipm::parseProblem(problem_path);
  conipm::SolverParams params;
  params.preset = preset;
  params.eps = eps;
  params.line_search = line_search;
  params.max_iters = max_iters;
  params.kkt = kkt == "eliminated" ? conipm::KktMethod::Eliminated : conipm::KktMethod::FullSystem;
  const conipm::SolveOutcome outcome = conipm::solve(problem, params);
  if (!trace_path.empty()) conipm::writeTraceCsv(trace_path, outcome.trace);
  std::cout << conipm::solveOutcomeJson(outcome) << "\n";
  return statusExitCode(outcome.status);
}

int runVerify(const std::string& suite, int samples, std::uint64_t seed,
              const std::string& report_path) {
  conipm::SweepOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  const std::vector<conipm::CheckReport> reports = conipm::runSuite(suite, opts);
  int failures = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
    const bool is_violation = r.id.find("uncorrected_bound_violated") != std::string::npos;
    if (is_violation && r.pass) {
      std::printf("violation reproduced: %s (claimed %.6g < actual %.6g, margin %.6g)\n",
                  r.id.c_str(), r.lhs, r.rhs, r.rhs - r.lhs);
    } else {
      std::printf("%s: %s (lhs %.6g, rhs %.6g; %s)\n", r.pass ? "pass" : "FAIL", r.id.c_str(),
                  r.lhs, r.rhs, r.instance.c_str());
    }
  }
  if (!report_path.empty()) conipm::writeReportFile(report_path, reports);
  if (failures > 0) {
    std::printf("%d of %zu checks failed:\n", failures, reports.size());
    for (const auto& r : reports) {
      if (!r.pass) std::printf("  %s\n", r.id.c_str());
    }
    return 1;
  }
  std::printf("all %zu checks passed\n", reports.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogeneous self-dual interior-point solver for non-symmetric conic optimization"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "solve a conic program from a JSON problem file");
  std::string problem_path;
  int preset = 1;
  double eps = 1e-8;
  bool line_search = false;
  std::string trace_path;
  int max_iters = -1;
  std::string kkt = "full";
  solve_cmd->add_option("--problem", problem_path, "path to the problem JSON file")->required();
  solve_cmd->add_option("--preset", preset, "parameter preset")->check(CLI::IsMember({1, 2}));
  solve_cmd->add_option("--eps", eps, "relative accuracy target");
  solve_cmd->add_flag("--line-search", line_search, "line-search predictor steps");
  solve_cmd->add_option("--trace", trace_path, "write per-step CSV trace to this path");
  solve_cmd->add_option("--max-iters", max_iters, "iteration cap (default: 10x theory bound)");
  solve_cmd->add_option("--kkt", kkt, "step system solve path")
      ->check(CLI::IsMember({"full", "eliminated"}));

  auto* verify_cmd = app.add_subcommand("verify", "run the numeric analysis checks");
  std::string suite = "all";
  int samples = 1000;
  std::uint64_t seed = conipm::kDefaultVerifySeed;
  std::string report_path;
  verify_cmd->add_option("--suite", suite, "which checks to run")
      ->check(CLI::IsMember(conipm::suiteNames()));
  verify_cmd->add_option("--samples", samples, "random samples per check")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "seed for the randomized sweeps");
  verify_cmd->add_option("--report", report_path, "write id,lhs,rhs,pass lines to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (solve_cmd->parsed()) {
      return runSolve(problem_path, preset, eps, line_search, trace_path, max_iters, kkt);
    }
    return runVerify(suite, samples, seed, report_path);
  } catch (const conipm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const conipm::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
