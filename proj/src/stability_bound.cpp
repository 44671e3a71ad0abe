#include <cmath>

#include "nistab/analysis.hpp"

namespace nistab {

std::string_view to_string(BoundCase c) noexcept {
  switch (c) {
    case BoundCase::OneUnstableZero: return "one_unstable_zero";
    case BoundCase::NoUnstableZero: return "no_unstable_zero";
    case BoundCase::OutOfScope: return "out_of_scope";
  }
  return "out_of_scope";
}

StabilityBoundReport stability_bound(const Plant& plant, double tol_split) {
  const RealMatrix aq = a_q(plant);
  StabilityBoundReport report;
  report.eigs_aq = eigenvalues(aq);
  const double norm = aq.norm();
  const double band = tol_split * norm;

  bool zero_at_origin = false;
  double nearest_stable = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : report.eigs_aq) {
    if (lambda.real() > band) {
      ++report.n_unstable;
    } else if (lambda.real() >= -band) {
      ++report.n_zero;
      zero_at_origin = std::abs(lambda) <= band;
    } else {
      ++report.n_stable;
      nearest_stable = std::max(nearest_stable, lambda.real());
    }
  }

  report.distinct = true;
  const auto& e = report.eigs_aq;
  for (std::size_t i = 0; i < e.size() && report.distinct; ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (std::abs(e[i] - e[j]) <= tol::kDistinct * norm) {
        report.distinct = false;
        break;
      }
    }
  }

  const bool in_scope = report.distinct && report.n_zero == 1 && zero_at_origin && report.n_stable >= 1;
  if (in_scope && report.n_unstable == 1) {
    report.bound_case = BoundCase::OneUnstableZero;
  } else if (in_scope && report.n_unstable == 0) {
    report.bound_case = BoundCase::NoUnstableZero;
  }
  if (report.bound_case != BoundCase::OutOfScope) report.gamma = -nearest_stable;
  return report;
}

}  // namespace nistab
