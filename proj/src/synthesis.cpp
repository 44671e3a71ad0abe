#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nistab/synthesis.hpp"

namespace nistab {
namespace {

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must be finite and strictly positive");
  }
}

bool is_psd(double min_eig, const RealMatrix& m) { return min_eig >= -tol::kPsd * m.norm(); }

}  // namespace

std::string_view to_string(Branch branch) noexcept {
  return branch == Branch::AntistableBlock ? "antistable" : "minimum_phase";
}

LyapunovPair solve_lyapunov_pair(const SchurPartition& partition) {
  if (!partition.has_antistable_block()) {
    throw Error(ErrorCode::NoAntistableEigenvalue, "partition has an empty anti-stable block");
  }
  const double r = partition.r_value;
  const RealMatrix f = -partition.a22;
  RealMatrix w_t = r * (partition.c22 * partition.c22.transpose());
  RealMatrix w_s = (partition.b22 * partition.b22.transpose()) / r;
  return {solve_hurwitz_lyapunov(f, w_t), solve_hurwitz_lyapunov(f, w_s)};
}

SynthesisOutcome antistable_block_gain(const Plant& plant, double epsilon, const SchurPartition& partition,
                               const RealMatrix& t, const RealMatrix& s) {
  const Index m = partition.dim_antistable;
  if (m == 0) {
    throw Error(ErrorCode::NoAntistableEigenvalue, "gain formula needs an anti-stable block");
  }
  if (t.rows() != m || t.cols() != m || s.rows() != m || s.cols() != m ||
      partition.u.rows() != plant.states()) {
    throw Error(ErrorCode::DimensionMismatch, "T, S must match the anti-stable block");
  }

  SynthesisOutcome out;
  out.branch = Branch::AntistableBlock;
  out.epsilon = epsilon;
  out.dim_antistable = m;
  out.t = t;
  out.s = s;
  out.x = t - s;
  const RealMatrix& x = *out.x;

  auto& diag = out.diagnostics;
  diag.t_min_eig = symmetric_eigenvalues(t)(0);
  diag.s_min_eig = symmetric_eigenvalues(s)(0);
  diag.x_eigenvalues = symmetric_eigenvalues(x);
  diag.x_min_eig = diag.x_eigenvalues(0);

  // X = T − S can cancel to roundoff; scale by the operands, not by X.
  const double x_scale = std::max({x.norm(), t.norm(), s.norm()});
  const bool x_pd = diag.x_min_eig > tol::kPd * x_scale;
  out.feasible = is_psd(diag.t_min_eig, t) && is_psd(diag.s_min_eig, s) && x_pd;
  if (!out.feasible) return out;

  // X⁻¹ through the symmetric eigendecomposition.
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(0.5 * (x + x.transpose()));
  const RealMatrix x_inv =
      eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  if (!x_inv.allFinite()) {
    throw Error(ErrorCode::InversionFailure, "X is numerically singular");
  }

  const RealMatrix u2 = partition.antistable_basis();
  RealMatrix p = u2 * x_inv * u2.transpose();
  p = 0.5 * (p + p.transpose()).eval();

  const double c = plant.c1b2();
  const double r = plant.r_value();
  const RealMatrix k = (plant.b1().transpose() * p - plant.c1() * plant.a() - epsilon * plant.c1() -
                        (r / c) * (plant.b2().transpose() * p)) /
                       c;
  out.p = std::move(p);
  out.k = k;
  return out;
}

SynthesisOutcome minimum_phase_gain(const Plant& plant, double epsilon, double tol_split) {
  require_positive_epsilon(epsilon);
  require_assumptions(plant, /*need_a2=*/true);
  const RealMatrix ar = a_r(plant, epsilon);
  if (max_real_part(eigenvalues(ar)) > tol_split * ar.norm()) {
    throw Error(ErrorCode::AntistableBlockPresent, "A_r has an anti-stable eigenvalue");
  }
  const Index n = plant.states();
  SynthesisOutcome out;
  out.feasible = true;
  out.branch = Branch::MinimumPhase;
  out.epsilon = epsilon;
  out.dim_antistable = 0;
  out.p = RealMatrix::Zero(n, n);
  out.k = -(plant.c1() * plant.a() + epsilon * plant.c1()) / plant.c1b2();
  return out;
}

SynthesisOutcome synthesize(const Plant& plant, double epsilon, double tol_split) {
  require_positive_epsilon(epsilon);
  require_assumptions(plant, /*need_a2=*/true);
  const SchurPartition partition = schur_partition(plant, epsilon, tol_split);
  if (!partition.has_antistable_block()) return minimum_phase_gain(plant, epsilon, tol_split);
  const LyapunovPair ts = solve_lyapunov_pair(partition);
  return antistable_block_gain(plant, epsilon, partition, ts.t, ts.s);
}

}  // namespace nistab
