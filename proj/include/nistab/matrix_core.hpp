#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nistab/error.hpp"

namespace nistab {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kOrth = 1e-10;
inline constexpr double kFact = 1e-9;
inline constexpr double kEig = 1e-8;
inline constexpr double kLyap = 1e-8;
// Relative width of the band around the split line, scaled by ‖M‖_F.
inline constexpr double kSplit = 1e-8;
}  // namespace tol

void require_finite(const RealMatrix& m, std::string_view what);
void require_square(const RealMatrix& m, std::string_view what);

/// Eigenvalues sorted by (real, imag) ascending. Conjugate pairs are exact.
std::vector<Complex> eigenvalues(const RealMatrix& m);

double max_real_part(const std::vector<Complex>& values);

/// Ascending eigenvalues of the symmetric part of m.
RealVector symmetric_eigenvalues(const RealMatrix& m);

/// Unit-norm y with yᵀM = λyᵀ. The eigenvalue of M nearest to lambda is used
/// and must lie within tol·max(1, ‖M‖). The first component with magnitude
/// above 1e-12 is made real and positive.
ComplexVector left_eigenvector(const RealMatrix& m, Complex lambda, double tol = tol::kEig);

/// Diagonal block of a quasi-upper-triangular matrix.
struct SchurBlock {
  Index offset = 0;
  Index size = 1;  // 1 or 2
};

std::vector<SchurBlock> schur_blocks(const RealMatrix& t);

/// Eigenvalue of a 1×1 block, or the upper-half-plane member of a 2×2 pair.
Complex block_eigenvalue(const RealMatrix& t, const SchurBlock& block);

struct SchurForm {
  RealMatrix u;        // orthogonal, M = U·T·Uᵀ
  RealMatrix t;        // quasi-upper-triangular
  Index k_stable = 0;  // size of the leading block with Re λ ≤ threshold
};

/// Real Schur form with every eigenvalue whose real part is at most
/// `threshold` moved into the leading block.
///
/// Eigenvalues within tol_split·‖M‖_F of the threshold line raise
/// SplitAmbiguous, except that with threshold = 0 an eigenvalue within that
/// distance of the origin itself counts as stable.
SchurForm ordered_real_schur(const RealMatrix& m, double threshold = 0.0,
                             double tol_split = tol::kSplit);

/// Swaps the adjacent diagonal blocks of sizes p1, p2 starting at `offset`
/// by an orthogonal similarity, accumulating the transform into u.
void swap_schur_blocks(RealMatrix& t, RealMatrix& u, Index offset, Index p1, Index p2);

/// Unique symmetric X with F·X + X·Fᵀ + W = 0 for Hurwitz F, by real Schur
/// reduction of F followed by block back-substitution.
RealMatrix solve_hurwitz_lyapunov(const RealMatrix& f, const RealMatrix& w);

}  // namespace nistab
