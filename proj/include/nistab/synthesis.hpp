#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "nistab/decomposition.hpp"

namespace nistab {

enum class Branch {
  AntistableBlock,  // Lyapunov pair T, S on the anti-stable block, X = T − S
  MinimumPhase,     // A_r has no anti-stable eigenvalue, P = 0
};

std::string_view to_string(Branch branch) noexcept;

namespace tol {
// PSD acceptance: min eigenvalue ≥ −kPsd·‖·‖_F.
inline constexpr double kPsd = 1e-9;
// PD acceptance for X: min eigenvalue > kPd·max(‖X‖_F, ‖T‖_F, ‖S‖_F).
inline constexpr double kPd = 1e-9;
}  // namespace tol

struct SynthesisDiagnostics {
  double x_min_eig = std::numeric_limits<double>::quiet_NaN();
  double t_min_eig = std::numeric_limits<double>::quiet_NaN();
  double s_min_eig = std::numeric_limits<double>::quiet_NaN();
  RealVector x_eigenvalues;  // ascending; empty on the minimum-phase branch
};

/// Result of one synthesis attempt at a fixed ε. An infeasible outcome is a
/// verdict ("SNI not guaranteed by this method"), carries no gain, and keeps
/// T, S, X for inspection. Raw T, S, X entries depend on the Schur basis;
/// only their spectra are basis independent.
struct SynthesisOutcome {
  bool feasible = false;
  Branch branch = Branch::AntistableBlock;
  double epsilon = 0.0;
  Index dim_antistable = 0;
  std::optional<RealMatrix> k;  // 1×n
  std::optional<RealMatrix> p;  // n×n
  std::optional<RealMatrix> t;
  std::optional<RealMatrix> s;
  std::optional<RealMatrix> x;
  SynthesisDiagnostics diagnostics;
};

struct LyapunovPair {
  RealMatrix t;  // −Ã22·T − T·Ã22ᵀ + C̃22·R·C̃22ᵀ = 0
  RealMatrix s;  // −Ã22·S − S·Ã22ᵀ + B̃22·R⁻¹·B̃22ᵀ = 0
};

/// Solves both anti-stable-block Lyapunov equations of a partition.
LyapunovPair solve_lyapunov_pair(const SchurPartition& partition);

/// Feasibility test T ≥ 0, S ≥ 0, T − S > 0 and, when it holds,
/// P = U·diag(0, (T − S)⁻¹)·Uᵀ and
/// K = (C1B2)⁻¹(B1ᵀP − C1A − εC1 − R(B2ᵀC1ᵀ)⁻¹B2ᵀP).
SynthesisOutcome antistable_block_gain(const Plant& plant, double epsilon, const SchurPartition& partition,
                               const RealMatrix& t, const RealMatrix& s);

/// K = −(C1B2)⁻¹(C1A + εC1) with P = 0. Requires A_r to have no eigenvalue
/// with real part above the split band.
SynthesisOutcome minimum_phase_gain(const Plant& plant, double epsilon, double tol_split = tol::kSplit);

/// Full pipeline at ε > 0: partition A_r, dispatch on the anti-stable block.
SynthesisOutcome synthesize(const Plant& plant, double epsilon, double tol_split = tol::kSplit);

}  // namespace nistab
