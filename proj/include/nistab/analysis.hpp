#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nistab/decomposition.hpp"
#include "nistab/plant.hpp"
#include "nistab/synthesis.hpp"

namespace nistab {

namespace tol {
// Frequency-domain sign margin, relative to |G(jω)|.
inline constexpr double kSni = 1e-9;
// Ratio above which a Riccati residual is rejected.
inline constexpr double kAre = 1e-8;
// Distinctness gap for the A_q spectrum, relative to ‖A_q‖_F.
inline constexpr double kDistinct = 1e-6;
}  // namespace tol

/// Log-spaced frequencies in [lo, hi], both ends included.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// 2000 points over [1e-4, 1e4] rad/s.
std::vector<double> default_frequency_grid();

// ---------------------------------------------------------------------------
// Frequency response kernels. The serial version is the reference; the
// OpenMP version must agree with it bit for bit (same per-point arithmetic).

/// G(jω) evaluator on a Hessenberg-reduced realization, O(n²) per point.
class FrequencyKernel {
 public:
  explicit FrequencyKernel(const LtiSystem& sys);
  Complex operator()(Complex s) const;
  Index states() const { return h_.rows(); }

 private:
  RealMatrix h_;
  RealVector b_;
  RealVector c_;
  double d_;
};

std::vector<Complex> frequency_response_serial(const LtiSystem& sys, std::span<const double> omegas);
std::vector<Complex> frequency_response(const LtiSystem& sys, std::span<const double> omegas);

// ---------------------------------------------------------------------------

struct SniVerdict {
  bool holds = false;
  double max_pole_re = 0.0;
  double worst_omega = 0.0;
  /// min over the grid of −Im G(jω) / |G(jω)|.
  double margin = 0.0;
  /// min over the grid of −Im G(jω), unnormalized.
  double raw_margin = 0.0;
};

/// Strict negative-imaginary test on a frequency grid: all poles in the open
/// left half-plane and −Im G(jω) > tol·|G(jω)| at every grid point. A grid
/// check is evidence, not a proof.
SniVerdict is_sni(const LtiSystem& sys, std::span<const double> grid, double tol = tol::kSni);

/// Principal part of G at a pole cluster: G(s) ≈ Σ_k a_k / (s − pole)^k.
struct PolePrincipalPart {
  Complex pole;
  Index multiplicity = 0;           // eigenvalues of A in the cluster
  int order = 0;                    // pole order of G (0: cancelled)
  std::vector<Complex> coefficients;  // a_1 … a_multiplicity
};

/// Principal parts at every eigenvalue cluster of A with Re ≥ −axis_tol
/// (upper half-plane representatives only).
std::vector<PolePrincipalPart> marginal_poles(const LtiSystem& sys);

struct NiVerdict {
  bool holds = false;
  bool no_rhp_poles = false;
  bool frequency_condition = false;
  bool imaginary_poles_ok = false;
  bool origin_pole_ok = false;
  double margin = 0.0;  // min of −Im G / |G| over evaluated grid points
  std::vector<PolePrincipalPart> axis_poles;
  std::string reason;   // empty when holds
};

/// Negative-imaginary test: no open-RHP poles, −Im G(jω) ≥ −tol·|G(jω)| on
/// the grid away from poles, simple imaginary-axis poles with real
/// nonnegative residue of jG, and at most a double pole at the origin with
/// lim s²G(s) ≥ 0.
NiVerdict is_ni(const LtiSystem& sys, std::span<const double> grid, double tol = tol::kSni);

struct CertificateCheck {
  bool holds = false;
  double min_eig_p = 0.0;
  double residual = 0.0;        // ‖PA + AᵀP + (CA − BᵀP)ᵀR⁻¹(CA − BᵀP)‖_F
  double residual_ratio = 0.0;  // residual / (1 + ‖P‖‖A‖ + ‖CA‖²/R)
  double closure_max_re = 0.0;  // max Re σ(A − BR⁻¹(CA − BᵀP))
};

/// Riccati-equation certificate for the negative-imaginary property of a
/// realization with R = CB + BᵀCᵀ > 0.
CertificateCheck riccati_certificate(const LtiSystem& sys, const RealMatrix& p);
bool riccati_certificate_check(const LtiSystem& sys, const RealMatrix& p);

/// (A − εI, B, C, D).
LtiSystem shift_realization(const LtiSystem& sys, double epsilon);

/// −max Re σ(A).
double degree_of_stability(const LtiSystem& sys);

// ---------------------------------------------------------------------------

enum class BoundCase {
  OneUnstableZero,  // one anti-stable zero, one zero at the origin
  NoUnstableZero,   // minimum phase apart from the origin
  OutOfScope,
};

std::string_view to_string(BoundCase c) noexcept;

struct StabilityBoundReport {
  std::vector<Complex> eigs_aq;  // sorted by (Re, Im)
  Index n_unstable = 0;
  Index n_zero = 0;  // eigenvalues with |Re| inside the split band
  Index n_stable = 0;
  bool distinct = false;
  BoundCase bound_case = BoundCase::OutOfScope;
  /// Guaranteed-achievable supremum of ε: negated real part of the stable
  /// A_q eigenvalue nearest the imaginary axis.
  std::optional<double> gamma;
};

StabilityBoundReport stability_bound(const Plant& plant, double tol_split = tol::kSplit);

// ---------------------------------------------------------------------------

struct SweepOptions {
  std::vector<double> frequency_grid = default_frequency_grid();
  double tol_sni = tol::kSni;
  double tol_split = tol::kSplit;
};

struct FeasibilityRecord {
  double epsilon = 0.0;
  bool feasible = false;
  std::optional<Branch> branch;  // empty when synthesis raised for this ε
  double x_min_eig = std::numeric_limits<double>::quiet_NaN();
  double max_pole_re = std::numeric_limits<double>::quiet_NaN();
  bool sni_holds = false;
  std::string note;  // error text when synthesis raised
};

struct FeasibilityProfile {
  std::vector<double> grid;
  std::vector<FeasibilityRecord> records;
  /// Largest grid ε with a feasible record.
  std::optional<double> empirical_max_eps;
  /// Largest grid ε such that every grid point up to it is feasible.
  std::optional<double> contiguous_max_eps;
  std::optional<double> theoretical_gamma;
  BoundCase bound_case = BoundCase::OutOfScope;
};

/// Synthesis plus closed-loop SNI verification at each ε of a strictly
/// increasing positive grid, evaluated in parallel.
FeasibilityProfile sweep_epsilon(const Plant& plant, std::span<const double> grid,
                                 const SweepOptions& options = {});
/// Serial reference for sweep_epsilon.
FeasibilityProfile sweep_epsilon_serial(const Plant& plant, std::span<const double> grid,
                                        const SweepOptions& options = {});

// ---------------------------------------------------------------------------

struct DegeneracyDiagnostics {
  Complex lambda;   // anti-stable eigenvalue of A_r with the largest real part
  ComplexVector y;  // left eigenvector, yᵀA_r = λyᵀ
  Complex w_dot_y;
  Complex b2_dot_y;
  Complex yzy;                // yᵀZy (bilinear)
  double identity_residual;   // |yᵀZy + 2(wy)(B2ᵀy)|, scaled by 1 + ‖Z‖ + ‖w‖‖B2‖
  bool degenerate = false;    // yᵀZy numerically zero: X loses definiteness
};

/// Quadratic-form diagnostics for the dominant anti-stable mode of A_r.
DegeneracyDiagnostics degeneracy_diagnostics(const Plant& plant, double epsilon);

}  // namespace nistab
