// Command line front end: scenario runs, figure-data reproduction, the
// invariant verification suite and parameter sweeps. Exit codes: 0 pass,
// 1 verification failure, 2 validation error, 3 numerical error, 4 I/O.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvn/csv.hpp"
#include "nvn/figures.hpp"
#include "nvn/scenario.hpp"
#include "nvn/verify.hpp"

namespace {

// NVN_OUTPUT_DIR overrides every output directory.
const char* output_dir_override() { return std::getenv("NVN_OUTPUT_DIR"); }

int run_command(const std::string& scenario_path) {
  nvn::Scenario sc = nvn::parse_scenario_file(scenario_path);
  if (const char* dir = output_dir_override()) sc.output_dir = dir;
  const auto files = nvn::run_scenario(sc);
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
  return 0;
}

int figure_command(int id, const std::string& out_dir, const std::string& grid) {
  nvn::FigureJob job;
  job.figure_id = id;
  job.out_dir = out_dir;
  if (const char* dir = output_dir_override()) job.out_dir = dir;
  if (!grid.empty()) {
    int rows = 0, cols = 0;
    if (std::sscanf(grid.c_str(), "%dx%d", &rows, &cols) != 2)
      throw nvn::ValidationError("--grid expects NxM, got " + grid);
    job.grid_rows = rows;
    job.grid_cols = cols;
  }
  std::cout << "wrote " << nvn::reproduce_figure(job) << "\n";
  return 0;
}

int verify_command(bool full) {
  const nvn::VerifyReport report =
      nvn::verify_suite(full ? nvn::VerifyLevel::Full : nvn::VerifyLevel::Quick);
  std::cout << nvn::format_report(report);
  if (report.all_pass()) {
    std::cout << "verify: all " << report.checks.size() << " checks passed\n";
    return 0;
  }
  int failed = 0;
  for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
  std::cout << "verify: " << failed << " of " << report.checks.size()
            << " checks failed\n";
  return 1;
}

int sweep_command(const std::string& scenario_path, const std::string& param,
                  const std::string& range) {
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      !(step > 0.0))
    throw nvn::ValidationError("--range expects A:B:STEP with STEP > 0");

  nvn::Scenario base = nvn::parse_scenario_file(scenario_path);
  if (const char* dir = output_dir_override()) base.output_dir = dir;
  if (base.model_params.find(param) == base.model_params.end() &&
      param != "feedback_strength" && param != "alpha")
    throw nvn::ValidationError("sweep parameter '" + param +
                               "' not present in the scenario");

  for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi));
       v += step) {
    nvn::Scenario sc = base;
    sc.model_params[param] = nvn::format_double(v);
    sc.output_dir = base.output_dir + "/" + param + "_" + nvn::format_double(v);
    const auto files = nvn::run_scenario(sc);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nvn: simulation and verification of the nonlinear von Neumann "
      "equation i drho/dt = [H, f(rho)]"};
  app.require_subcommand(1);

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "evaluate a scenario file");
  run->add_option("scenario", scenario_path, "scenario file")->required();

  int figure_id = 1;
  std::string out_dir = ".";
  std::string grid;
  auto* figure = app.add_subcommand("figure", "emit figure data 1-6");
  figure->add_option("id", figure_id, "figure id 1..6")->required();
  figure->add_option("--out", out_dir, "output directory");
  figure->add_option("--grid", grid, "grid size NxM (default 201x201)");

  bool quick = false, full = false;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_flag("--quick", quick, "quick suite (default)");
  verify->add_flag("--full", full, "full suite incl. integrator checks");

  std::string sweep_param, sweep_range, sweep_scenario;
  auto* sweep = app.add_subcommand("sweep", "run a scenario over a parameter range");
  sweep->add_option("--param", sweep_param, "model parameter name")->required();
  sweep->add_option("--range", sweep_range, "A:B:STEP")->required();
  sweep->add_option("scenario", sweep_scenario, "scenario file")->required();

  try {
    app.parse(argc, argv);
    if (*run) return run_command(scenario_path);
    if (*figure) return figure_command(figure_id, out_dir, grid);
    if (*verify) return verify_command(full);
    if (*sweep) return sweep_command(sweep_scenario, sweep_param, sweep_range);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nvn::exit_code_for(e);
  }
}
