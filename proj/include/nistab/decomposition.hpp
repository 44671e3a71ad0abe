#pragma once

#include "nistab/matrix_core.hpp"
#include "nistab/plant.hpp"

namespace nistab {

/// Q = I − B2 (C1B2)⁻¹ C1, the oblique projector onto ker C1 along B2.
RealMatrix projector_q(const Plant& plant);

/// A_q = Q·A. Its spectrum is the u→z zeros plus one eigenvalue at the origin.
RealMatrix a_q(const Plant& plant);

/// A_r = Q(A + εI) = A_q + εQ, for ε ≥ 0.
RealMatrix a_r(const Plant& plant, double epsilon);

/// Z = B1(B2ᵀC1ᵀ)⁻¹B2ᵀ + B2(C1B2)⁻¹B1ᵀ − B2(C1B2)⁻¹R(B2ᵀC1ᵀ)⁻¹B2ᵀ.
RealMatrix z_matrix(const Plant& plant);

/// Row vector w = (C1B1·B2ᵀ − C1B2·B1ᵀ) / (C1B2)², orthogonal to C1.
RealMatrix w_vector(const Plant& plant);

/// Tilde blocks of A_r, B1, (B2(C1B2)⁻¹ − B1R⁻¹) and Z in an orthogonal basis
/// U whose leading dim_stable columns span the closed-left-half-plane
/// invariant subspace of A_r. Trailing blocks are 0-sized when A_r has no
/// anti-stable eigenvalue.
struct SchurPartition {
  RealMatrix u;
  RealMatrix a11, a12, a22;
  RealMatrix b11, b22;
  RealMatrix c11, c22;
  RealMatrix z11, z12, z21, z22;
  Index dim_stable = 0;
  Index dim_antistable = 0;
  double epsilon = 0.0;
  double c1b2 = 0.0;
  double r_value = 0.0;

  bool has_antistable_block() const { return dim_antistable > 0; }
  RealMatrix a_tilde() const;
  RealMatrix z_tilde() const;
  /// Trailing dim_antistable columns of U.
  RealMatrix antistable_basis() const { return u.rightCols(dim_antistable); }
};

/// Partition from the ordered real Schur form of A_r.
SchurPartition schur_partition(const Plant& plant, double epsilon, double tol_split = tol::kSplit);

/// Partition in a caller-supplied orthogonal basis. The lower-left block of
/// UᵀA_rU must vanish; any orthogonal rotation inside the two diagonal
/// blocks of an ordered Schur basis qualifies.
SchurPartition partition_from_basis(const Plant& plant, double epsilon, const RealMatrix& u,
                                    Index dim_stable);

}  // namespace nistab
