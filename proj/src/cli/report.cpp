#include "nistab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "nistab/decomposition.hpp"
#include "nistab/error.hpp"
#include "nistab/synthesis.hpp"

namespace nistab {
namespace {

constexpr double kDemoBoundary = 1.6458;

ReportJson matrix_rounded(const RealMatrix& m) {
  ReportJson rows = ReportJson::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ReportJson row = ReportJson::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(report_number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Input echo keeps full precision so it re-parses bit for bit.
ReportJson matrix_exact(const RealMatrix& m) {
  ReportJson rows = ReportJson::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ReportJson row = ReportJson::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportJson spectrum(const std::vector<Complex>& values) {
  ReportJson out = ReportJson::array();
  for (const auto& v : values) {
    ReportJson e;
    e["re"] = report_number(v.real());
    e["im"] = report_number(v.imag());
    out.push_back(std::move(e));
  }
  return out;
}

ReportJson real_list(const RealVector& v) {
  ReportJson out = ReportJson::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(report_number(v(i)));
  return out;
}

ReportJson optional_number(const std::optional<double>& v) {
  return v ? report_number(*v) : ReportJson(nullptr);
}

ReportJson command_block(const std::string& name, const std::string& source, const ReportOptions& options) {
  ReportJson cmd;
  cmd["name"] = name;
  if (!source.empty()) {
    cmd["file"] = source;
    cmd["format"] = options.format == PlantFormat::Json ? "json" : "plain";
  }
  cmd["omega_min"] = report_number(options.omega_min);
  cmd["omega_max"] = report_number(options.omega_max);
  cmd["omega_points"] = options.omega_points;
  cmd["tol_split"] = report_number(options.tol_split);
  cmd["tol_sni"] = report_number(options.tol_sni);
  return cmd;
}

void header(ReportJson& r, const PlantFile& file) {
  r["label"] = file.label;
  r["input_digest"] = input_digest(file.plant);
  ReportJson plant;
  plant["states"] = file.plant.states();
  plant["A"] = matrix_exact(file.plant.a());
  plant["B1"] = matrix_exact(file.plant.b1());
  plant["B2"] = matrix_exact(file.plant.b2());
  plant["C1"] = matrix_exact(file.plant.c1());
  r["plant"] = std::move(plant);
}

ReportJson assumptions_block(const Plant& plant) {
  const AssumptionReport a = check_assumptions(plant);
  ReportJson out;
  out["c1b2"] = report_number(a.c1b2);
  out["a1_holds"] = a.a1_holds;
  out["r_value"] = report_number(a.r_value);
  out["a2_holds"] = a.a2_holds;
  out["controllable"] = a.controllable;
  return out;
}

ReportJson bound_block(const StabilityBoundReport& b) {
  ReportJson out;
  out["bound_case"] = std::string(to_string(b.bound_case));
  out["gamma"] = optional_number(b.gamma);
  out["n_unstable"] = b.n_unstable;
  out["n_zero"] = b.n_zero;
  out["n_stable"] = b.n_stable;
  out["distinct"] = b.distinct;
  return out;
}

void warn_scope(ReportJson& warnings, const StabilityBoundReport& b) {
  if (b.bound_case == BoundCase::OutOfScope) {
    warnings.push_back("OutOfScope: A_q spectrum is not of the one-unstable-zero or no-unstable-zero form; no bound");
  }
}

struct Verdict {
  ReportJson synthesis;
  ReportJson gain = nullptr;
  ReportJson closed_loop = nullptr;
};

Verdict synthesis_verdict(const Plant& plant, double epsilon, const ReportOptions& options,
                          const std::vector<double>& grid) {
  Verdict v;
  const SynthesisOutcome out = synthesize(plant, epsilon, options.tol_split);
  ReportJson s;
  s["epsilon"] = report_number(epsilon);
  s["feasible"] = out.feasible;
  s["verdict"] = out.feasible ? "feasible" : "SNI not guaranteed by this method";
  s["branch"] = std::string(to_string(out.branch));
  s["dim_antistable"] = out.dim_antistable;
  s["x_spectrum"] = real_list(out.diagnostics.x_eigenvalues);
  s["x_min_eig"] = report_number(out.diagnostics.x_min_eig);
  s["t_min_eig"] = report_number(out.diagnostics.t_min_eig);
  s["s_min_eig"] = report_number(out.diagnostics.s_min_eig);
  v.synthesis = std::move(s);
  if (!out.feasible) return v;

  ReportJson g;
  g["epsilon"] = report_number(epsilon);
  g["branch"] = std::string(to_string(out.branch));
  g["K"] = matrix_rounded(*out.k);
  v.gain = std::move(g);

  const LtiSystem loop = closed_loop(plant, *out.k);
  const std::vector<Complex> poles = eigenvalues(loop.a());
  const double max_re = max_real_part(poles);
  const SniVerdict sni = is_sni(loop, grid, options.tol_sni);
  ReportJson c;
  c["spectrum"] = spectrum(poles);
  c["max_pole_re"] = report_number(max_re);
  c["degree_of_stability"] = report_number(-max_re);
  c["sni"] = sni.holds;
  c["sni_margin"] = report_number(sni.margin);
  c["sni_raw_margin"] = report_number(sni.raw_margin);
  c["sni_worst_omega"] = report_number(sni.worst_omega);
  v.closed_loop = std::move(c);
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ReportJson report_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

PlantFile demo_plant() {
  RealMatrix a(3, 3), b1(3, 1), b2(3, 1), c1(1, 3);
  a << -1, 0, -1, 1, 0, -1, -1, 2, 1;
  b1 << 1, 1, 1;
  b2 << 0, 1, 1;
  c1 << 1, 1, 0;
  return PlantFile{Plant(a, b1, b2, c1), "illustrative example"};
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidRange, "steps must be at least 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidRange, "need 0 < eps_min < eps_max");
  }
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[i] = lo + (hi - lo) * i / (steps - 1);
  grid.back() = hi;
  return grid;
}

ReportJson check_report(const PlantFile& file, const std::string& source, const ReportOptions& options) {
  ReportJson r;
  r["command"] = command_block("check", source, options);
  header(r, file);
  ReportJson warnings = ReportJson::array();
  const ReportJson assumptions = assumptions_block(file.plant);
  r["assumptions"] = assumptions;
  r["a_q"] = nullptr;
  r["a_q_spectrum"] = nullptr;
  r["stability_bound"] = nullptr;
  if (assumptions["a1_holds"].get<bool>()) {
    try {
      r["a_q"] = matrix_rounded(a_q(file.plant));
      const StabilityBoundReport b = stability_bound(file.plant, options.tol_split);
      r["a_q_spectrum"] = spectrum(b.eigs_aq);
      r["stability_bound"] = bound_block(b);
      warn_scope(warnings, b);
    } catch (const Error& e) {
      warnings.push_back(e.what());
    }
  } else {
    warnings.push_back("AssumptionA1Violated: C1*B2 is zero; A_q undefined");
  }
  r["warnings"] = std::move(warnings);
  return r;
}

ReportJson synth_report(const PlantFile& file, const std::string& source, double epsilon,
                        const ReportOptions& options) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must be positive");
  }
  ReportJson r;
  ReportJson cmd = command_block("synth", source, options);
  cmd["epsilon"] = report_number(epsilon);
  r["command"] = std::move(cmd);
  header(r, file);
  r["assumptions"] = assumptions_block(file.plant);
  ReportJson warnings = ReportJson::array();
  r["synthesis"] = nullptr;
  r["gain"] = nullptr;
  r["closed_loop"] = nullptr;
  try {
    Verdict v = synthesis_verdict(file.plant, epsilon, options, options.frequency_grid());
    r["synthesis"] = std::move(v.synthesis);
    r["gain"] = std::move(v.gain);
    r["closed_loop"] = std::move(v.closed_loop);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidEpsilon) throw;
    warnings.push_back(e.what());
  }
  r["warnings"] = std::move(warnings);
  return r;
}

ReportJson gain_block(const ReportJson& synth) {
  ReportJson g;
  g["input_digest"] = synth.at("input_digest");
  g["gain"] = synth.at("gain");
  return g;
}

std::string sweep_csv(const FeasibilityProfile& profile) {
  std::ostringstream out;
  out << "epsilon,feasible,branch,x_min_eig,max_pole_re,sni\n";
  for (const auto& rec : profile.records) {
    out << csv_number(rec.epsilon) << ',' << (rec.feasible ? "true" : "false") << ','
        << (rec.branch ? std::string(to_string(*rec.branch)) : std::string("none")) << ','
        << csv_number(rec.x_min_eig) << ',' << csv_number(rec.max_pole_re) << ','
        << (rec.sni_holds ? "true" : "false") << '\n';
  }
  return out.str();
}

SweepReport sweep_report(const PlantFile& file, const std::string& source, double eps_min, double eps_max,
                         int steps, const ReportOptions& options) {
  const std::vector<double> grid = linear_grid(eps_min, eps_max, steps);
  SweepReport out;
  ReportJson& r = out.report;
  ReportJson cmd = command_block("sweep", source, options);
  cmd["eps_min"] = report_number(eps_min);
  cmd["eps_max"] = report_number(eps_max);
  cmd["steps"] = steps;
  r["command"] = std::move(cmd);
  header(r, file);
  r["assumptions"] = assumptions_block(file.plant);
  ReportJson warnings = ReportJson::array();

  FeasibilityProfile profile;
  try {
    SweepOptions sweep;
    sweep.frequency_grid = options.frequency_grid();
    sweep.tol_sni = options.tol_sni;
    sweep.tol_split = options.tol_split;
    profile = sweep_epsilon(file.plant, grid, sweep);
  } catch (const Error& e) {
    warnings.push_back(e.what());
  }

  ReportJson summary;
  summary["bound_case"] = std::string(to_string(profile.bound_case));
  summary["theoretical_gamma"] = optional_number(profile.theoretical_gamma);
  summary["empirical_max_eps"] = optional_number(profile.empirical_max_eps);
  summary["contiguous_max_eps"] = optional_number(profile.contiguous_max_eps);
  std::size_t feasible = 0;
  for (const auto& rec : profile.records) feasible += rec.feasible ? 1 : 0;
  summary["points"] = profile.records.size();
  summary["feasible_points"] = feasible;
  r["summary"] = std::move(summary);

  ReportJson table = ReportJson::array();
  for (const auto& rec : profile.records) {
    ReportJson row;
    row["epsilon"] = report_number(rec.epsilon);
    row["feasible"] = rec.feasible;
    row["branch"] = rec.branch ? ReportJson(std::string(to_string(*rec.branch))) : ReportJson(nullptr);
    row["x_min_eig"] = report_number(rec.x_min_eig);
    row["max_pole_re"] = report_number(rec.max_pole_re);
    row["sni"] = rec.sni_holds;
    if (!rec.note.empty()) row["note"] = rec.note;
    table.push_back(std::move(row));
  }
  r["records"] = std::move(table);
  if (!profile.records.empty() && profile.bound_case == BoundCase::OutOfScope) {
    warnings.push_back("OutOfScope: no theoretical bound for this plant");
  }
  r["warnings"] = std::move(warnings);
  out.csv = sweep_csv(profile);
  return out;
}

ReportJson demo_report(const ReportOptions& options) {
  const PlantFile file = demo_plant();
  const Plant& plant = file.plant;
  const std::vector<double> grid = options.frequency_grid();
  ReportJson r;
  r["command"] = command_block("demo", "", options);
  header(r, file);
  r["assumptions"] = assumptions_block(plant);

  const StabilityBoundReport bound = stability_bound(plant, options.tol_split);
  r["a_q"] = matrix_rounded(a_q(plant));
  r["a_q_spectrum"] = spectrum(bound.eigs_aq);
  r["stability_bound"] = bound_block(bound);

  ReportJson ar;
  ar["epsilon"] = report_number(kDemoBoundary);
  const RealMatrix arm = a_r(plant, kDemoBoundary);
  ar["matrix"] = matrix_rounded(arm);
  ar["spectrum"] = spectrum(eigenvalues(arm));
  r["a_r_at_boundary"] = std::move(ar);

  const double above = kDemoBoundary + 1e-6;
  const SynthesisOutcome probe = synthesize(plant, above, options.tol_split);
  ReportJson px;
  px["epsilon"] = report_number(above);
  px["feasible"] = probe.feasible;
  px["x_spectrum"] = real_list(probe.diagnostics.x_eigenvalues);
  px["t_min_eig"] = report_number(probe.diagnostics.t_min_eig);
  px["s_min_eig"] = report_number(probe.diagnostics.s_min_eig);
  r["above_boundary"] = std::move(px);

  ReportJson verdicts = ReportJson::array();
  for (double eps : {0.5, 1.0, above}) {
    Verdict v = synthesis_verdict(plant, eps, options, grid);
    ReportJson row;
    row["synthesis"] = std::move(v.synthesis);
    row["gain"] = std::move(v.gain);
    row["closed_loop"] = std::move(v.closed_loop);
    verdicts.push_back(std::move(row));
  }
  r["verdicts"] = std::move(verdicts);
  r["warnings"] = ReportJson::array();
  return r;
}

namespace {

bool flat(const ReportJson& j) {
  return std::all_of(j.begin(), j.end(), [](const ReportJson& e) { return e.is_primitive(); });
}

void emit(std::string& out, const ReportJson& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  if (j.is_object() && j.size() <= 2 && flat(j)) {
    // complex numbers: {"re": .., "im": ..}
    out += "{";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += (i ? ", " : "") + ReportJson(it.key()).dump() + ": " + it.value().dump();
    }
    out += "}";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + ReportJson(it.key()).dump() + ": ";
      emit(out, it.value(), depth + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(2 * depth, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      emit(out, j[i], depth + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(2 * depth, ' ') + "]";
  } else if (j.is_array() && !j.empty()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string render(const ReportJson& report) {
  std::string out;
  emit(out, report, 0);
  return out + "\n";
}

}  // namespace nistab
