#include <cmath>
#include <exception>

#include "nistab/analysis.hpp"

namespace nistab {
namespace {

void require_epsilon_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidRange, "epsilon grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorCode::InvalidRange, "epsilon grid must be positive and strictly increasing");
    }
  }
}

FeasibilityRecord evaluate(const Plant& plant, double epsilon, const SweepOptions& options) {
  FeasibilityRecord rec;
  rec.epsilon = epsilon;
  try {
    const SynthesisOutcome outcome = synthesize(plant, epsilon, options.tol_split);
    rec.branch = outcome.branch;
    rec.feasible = outcome.feasible;
    rec.x_min_eig = outcome.diagnostics.x_min_eig;
    if (outcome.feasible) {
      const LtiSystem loop = closed_loop(plant, *outcome.k);
      rec.max_pole_re = max_real_part(eigenvalues(loop.a()));
      rec.sni_holds = is_sni(loop, options.frequency_grid, options.tol_sni).holds;
    }
  } catch (const Error& e) {
    rec.feasible = false;
    rec.note = e.what();
  }
  return rec;
}

FeasibilityProfile prepare(const Plant& plant, std::span<const double> grid, const SweepOptions& options) {
  require_epsilon_grid(grid);
  require_assumptions(plant, /*need_a2=*/true);
  FeasibilityProfile profile;
  profile.grid.assign(grid.begin(), grid.end());
  profile.records.resize(grid.size());
  const StabilityBoundReport bound = stability_bound(plant, options.tol_split);
  profile.theoretical_gamma = bound.gamma;
  profile.bound_case = bound.bound_case;
  return profile;
}

void summarize(FeasibilityProfile& profile) {
  bool contiguous = true;
  for (const auto& rec : profile.records) {
    if (rec.feasible) {
      profile.empirical_max_eps = rec.epsilon;
      if (contiguous) profile.contiguous_max_eps = rec.epsilon;
    } else {
      contiguous = false;
    }
  }
}

}  // namespace

FeasibilityProfile sweep_epsilon_serial(const Plant& plant, std::span<const double> grid,
                                        const SweepOptions& options) {
  FeasibilityProfile profile = prepare(plant, grid, options);
  for (std::size_t i = 0; i < grid.size(); ++i) profile.records[i] = evaluate(plant, grid[i], options);
  summarize(profile);
  return profile;
}

FeasibilityProfile sweep_epsilon(const Plant& plant, std::span<const double> grid,
                                 const SweepOptions& options) {
  FeasibilityProfile profile = prepare(plant, grid, options);
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      profile.records[i] = evaluate(plant, grid[i], options);
    } catch (...) {
#pragma omp critical(nistab_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  summarize(profile);
  return profile;
}

}  // namespace nistab
