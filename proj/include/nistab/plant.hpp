#pragma once

#include "nistab/matrix_core.hpp"

namespace nistab {

/// Controlled SISO plant  ẋ = A x + B1 w + B2 u,  z = C1 x.
class Plant {
 public:
  Plant(RealMatrix a, RealMatrix b1, RealMatrix b2, RealMatrix c1);

  Index states() const { return a_.rows(); }
  const RealMatrix& a() const { return a_; }
  const RealMatrix& b1() const { return b1_; }
  const RealMatrix& b2() const { return b2_; }
  const RealMatrix& c1() const { return c1_; }

  /// C1·B2 (scalar for SISO).
  double c1b2() const { return (c1_ * b2_)(0, 0); }
  /// R = C1·B1 + B1ᵀ·C1ᵀ.
  double r_value() const { return 2.0 * (c1_ * b1_)(0, 0); }

 private:
  RealMatrix a_, b1_, b2_, c1_;
};

/// Generic SISO realization (A, B, C, D).
class LtiSystem {
 public:
  LtiSystem(RealMatrix a, RealMatrix b, RealMatrix c, double d = 0.0);

  Index states() const { return a_.rows(); }
  const RealMatrix& a() const { return a_; }
  const RealMatrix& b() const { return b_; }
  const RealMatrix& c() const { return c_; }
  double d() const { return d_; }

 private:
  RealMatrix a_, b_, c_;
  double d_;
};

/// Exact (bitwise) equality of all four blocks.
bool operator==(const Plant& lhs, const Plant& rhs);

struct AssumptionReport {
  double c1b2 = 0.0;
  bool a1_holds = false;
  double r_value = 0.0;
  bool a2_holds = false;
  bool controllable = false;
};

namespace tol {
// Multiplied by (1 + ‖C1‖‖B‖) for the A1 / A2 scalar tests.
inline constexpr double kAssumption = 1e-10;
inline constexpr double kRank = 1e-8;
// Multiplied by (1 + ‖A‖_F) for pole proximity in transfer_eval.
inline constexpr double kPole = 1e-10;
}  // namespace tol

AssumptionReport check_assumptions(const Plant& plant);

/// Throws AssumptionA1Violated / AssumptionA2Violated as requested.
void require_assumptions(const Plant& plant, bool need_a2);

bool is_controllable(const RealMatrix& a, const RealMatrix& b, double tol_rank = tol::kRank);

/// (A + B2·K, B1, C1, 0).
LtiSystem closed_loop(const Plant& plant, const RealMatrix& k);

/// G(s) = C (sI − A)⁻¹ B + D.
Complex transfer_eval(const LtiSystem& sys, Complex s);

}  // namespace nistab
