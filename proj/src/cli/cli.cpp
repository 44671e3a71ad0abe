#include "nistab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "nistab/error.hpp"
#include "nistab/report.hpp"

namespace nistab {
namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return exit_code::kIo;
    case ErrorCode::ParseError: return exit_code::kParse;
    case ErrorCode::InvalidEpsilon:
    case ErrorCode::InvalidRange: return exit_code::kUsage;
    default: return 1;
  }
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Strictly negative-imaginary state-feedback synthesis with a prescribed degree of stability",
               "ni-stab"};
  app.require_subcommand(1);
  app.fallthrough();

  ReportOptions opts;
  std::string format = "json";
  app.add_option("--format", format, "Plant file format")->check(CLI::IsMember({"json", "plain"}))
      ->capture_default_str();
  app.add_option("--omega-min", opts.omega_min, "Lowest frequency of the SNI grid (rad/s)")->capture_default_str();
  app.add_option("--omega-max", opts.omega_max, "Highest frequency of the SNI grid (rad/s)")->capture_default_str();
  app.add_option("--omega-points", opts.omega_points, "Log-spaced grid points")->capture_default_str();
  app.add_option("--tol-split", opts.tol_split, "Relative half-width of the Schur split band")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol-sni", opts.tol_sni, "Relative SNI sign margin")
      ->check(CLI::NonNegativeNumber)->capture_default_str();

  std::string check_path, synth_path, sweep_path, out_path, gain_out;
  double eps = 0.0, eps_min = 0.0, eps_max = 0.0;
  int steps = 0;

  auto* check = app.add_subcommand("check", "Assumptions, A_q spectrum and the epsilon bound");
  check->add_option("file", check_path, "Plant file")->required();

  auto* synth = app.add_subcommand("synth", "Synthesize K at a given degree of stability");
  synth->add_option("file", synth_path, "Plant file")->required();
  synth->add_option("--eps", eps, "Degree of stability (> 0)")->required();
  synth->add_option("--gain-out", gain_out, "Also write the gain block to this path");

  auto* sweep = app.add_subcommand("sweep", "Feasibility over a linear epsilon grid");
  sweep->add_option("file", sweep_path, "Plant file")->required();
  sweep->add_option("--eps-min", eps_min, "First epsilon")->required();
  sweep->add_option("--eps-max", eps_max, "Last epsilon")->required();
  sweep->add_option("--steps", steps, "Grid points (>= 2)")->required();
  sweep->add_option("--out", out_path, "CSV destination (default: after the report on stdout)");

  auto* demo = app.add_subcommand("demo", "Run the built-in three-state example");

  std::ostringstream out, err;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? exit_code::kOk : exit_code::kUsage, out.str(), err.str()};
  }

  opts.format = format == "plain" ? PlantFormat::Plain : PlantFormat::Json;
  try {
    // validates the grid before any file is read
    (void)log_grid(opts.omega_min, opts.omega_max, opts.omega_points);

    if (check->parsed()) {
      const PlantFile file = load_plant(check_path, opts.format);
      out << render(check_report(file, check_path, opts));
    } else if (synth->parsed()) {
      if (!(eps > 0.0)) throw Error(ErrorCode::InvalidEpsilon, "epsilon must be positive");
      const PlantFile file = load_plant(synth_path, opts.format);
      const ReportJson report = synth_report(file, synth_path, eps, opts);
      if (!gain_out.empty()) write_file(gain_out, render(gain_block(report)));
      out << render(report);
    } else if (sweep->parsed()) {
      (void)linear_grid(eps_min, eps_max, steps);
      const PlantFile file = load_plant(sweep_path, opts.format);
      SweepReport result = sweep_report(file, sweep_path, eps_min, eps_max, steps, opts);
      if (!out_path.empty()) {
        write_file(out_path, result.csv);
        result.report["csv_out"] = out_path;
        out << render(result.report);
      } else {
        out << render(result.report) << "--- sweep.csv ---\n" << result.csv;
      }
    } else if (demo->parsed()) {
      out << render(demo_report(opts));
    }
  } catch (const Error& e) {
    err << "ni-stab: " << e.what() << '\n';
    return {exit_for(e.code()), out.str(), err.str()};
  }
  return {exit_code::kOk, out.str(), err.str()};
}

}  // namespace nistab
