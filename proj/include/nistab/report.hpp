#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nistab/analysis.hpp"
#include "nistab/plant_io.hpp"

namespace nistab {

using ReportJson = nlohmann::ordered_json;

struct ReportOptions {
  double omega_min = 1e-4;
  double omega_max = 1e4;
  std::size_t omega_points = 2000;
  double tol_split = tol::kSplit;
  double tol_sni = tol::kSni;
  PlantFormat format = PlantFormat::Json;

  std::vector<double> frequency_grid() const { return log_grid(omega_min, omega_max, omega_points); }
};

/// Reals are rounded to 12 significant digits; non-finite values become null.
ReportJson report_number(double value);

/// The built-in three-state example plant.
PlantFile demo_plant();

/// steps points from lo to hi inclusive. InvalidRange unless 0 < lo < hi and steps ≥ 2.
std::vector<double> linear_grid(double lo, double hi, int steps);

ReportJson check_report(const PlantFile& file, const std::string& source, const ReportOptions& options);

/// InvalidEpsilon unless epsilon > 0.
ReportJson synth_report(const PlantFile& file, const std::string& source, double epsilon,
                        const ReportOptions& options);

/// The gain block alone, as emitted by `synth --gain-out`.
ReportJson gain_block(const ReportJson& synth);

struct SweepReport {
  ReportJson report;
  std::string csv;
};

SweepReport sweep_report(const PlantFile& file, const std::string& source, double eps_min, double eps_max,
                         int steps, const ReportOptions& options);

std::string sweep_csv(const FeasibilityProfile& profile);

ReportJson demo_report(const ReportOptions& options);

/// Two-space indented JSON, scalar arrays on one line, trailing newline.
std::string render(const ReportJson& report);

}  // namespace nistab
