// verify: run the check suite and report.
//
// Exit status: 0 when every selected check passes, 1 when any fails or does
// not converge, 2 on a usage error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grverify/verifier.hpp"

int main(int argc, char** argv) {
  using namespace grverify;

  CLI::App app{"Numerical verification of the evaluation of I"};
  VerifyConfig cfg;
  std::vector<std::string> only;
  bool json = false;
  bool list = false;

  app.add_option("--only", only, "Comma-separated check ids (default: all)")->delimiter(',');
  app.add_option("--tol", cfg.tol, "Tolerance for representation and chain checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--series-tol", cfg.series_tol, "Tolerance for the series-based R2 and R3")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--quad-tol", cfg.quad.abs_tol, "Absolute tolerance requested from quadrature")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-evals", cfg.quad.max_evals, "Integrand evaluations per quadrature")
      ->check(CLI::Range(15L, 1000000000L))
      ->capture_default_str();
  app.add_option("--timeout-secs", cfg.timeout_secs, "Per-check time limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads (0: one per hardware thread)")
      ->capture_default_str();
  app.add_flag("--json", json, "Print the report as JSON");
  app.add_flag("--list", list, "Print the check catalog and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& c : catalog()) {
      std::printf("%-14s %-70s %s\n", std::string(c.id).c_str(),
                  std::string(c.description).c_str(), std::string(c.anchor).c_str());
    }
    return 0;
  }

  Report report;
  try {
    report = run_checks(only, cfg);
  } catch (const UnknownCheck& e) {
    std::cerr << "verify: " << e.what() << " (see --list)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return 2;
  }

  std::cout << (json ? render_json(report) : render_table(report));
  return report.overall == Status::pass ? 0 : 1;
}
