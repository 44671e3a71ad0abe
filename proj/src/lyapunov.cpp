#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "nistab/matrix_core.hpp"

namespace nistab {
namespace {

// Solves A·Y + Y·Bᵀ = C for blocks of size ≤ 2 via the Kronecker form
// (I ⊗ A + B ⊗ I)·vec(Y) = vec(C).
RealMatrix solve_small_sylvester(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c) {
  const Index p = a.rows(), q = b.rows();
  RealMatrix kron = RealMatrix::Zero(p * q, p * q);
  for (Index j = 0; j < q; ++j) {
    kron.block(j * p, j * p, p, p) += a;
    for (Index l = 0; l < q; ++l) {
      kron.block(j * p, l * p, p, p).diagonal().array() += b(j, l);
    }
  }
  const RealVector rhs = Eigen::Map<const RealVector>(c.data(), p * q);
  const RealVector y = kron.fullPivLu().solve(rhs);
  return Eigen::Map<const RealMatrix>(y.data(), p, q);
}

}  // namespace

RealMatrix solve_hurwitz_lyapunov(const RealMatrix& f, const RealMatrix& w) {
  require_square(f, "F");
  require_square(w, "W");
  require_finite(f, "F");
  require_finite(w, "W");
  if (f.rows() != w.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "F and W differ in dimension");
  }
  const Index n = f.rows();
  if (n == 0) return RealMatrix(0, 0);
  if ((w - w.transpose()).norm() > 1e-10 * std::max(w.norm(), std::numeric_limits<double>::min())) {
    throw Error(ErrorCode::NotSymmetric, "W is not symmetric");
  }

  Eigen::RealSchur<RealMatrix> schur(f, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "real Schur iteration did not converge");
  }
  const RealMatrix& t = schur.matrixT();
  const RealMatrix& u = schur.matrixU();
  const auto blocks = schur_blocks(t);

  const double hurwitz_margin = std::numeric_limits<double>::epsilon() * std::max(1.0, f.norm());
  for (const auto& b : blocks) {
    if (block_eigenvalue(t, b).real() >= -hurwitz_margin) {
      throw Error(ErrorCode::NotHurwitz, "F has an eigenvalue with nonnegative real part");
    }
  }

  // T·Y + Y·Tᵀ = −UᵀWU, solved from the bottom-right block upwards.
  const RealMatrix w_hat = u.transpose() * w * u;
  RealMatrix y = RealMatrix::Zero(n, n);
  for (auto bi = blocks.rbegin(); bi != blocks.rend(); ++bi) {
    const Index oi = bi->offset, si = bi->size, ti = n - oi - si;
    for (auto bj = blocks.rbegin(); bj != blocks.rend(); ++bj) {
      const Index oj = bj->offset, sj = bj->size, tj = n - oj - sj;
      RealMatrix rhs = -w_hat.block(oi, oj, si, sj);
      if (ti > 0) rhs -= t.block(oi, oi + si, si, ti) * y.block(oi + si, oj, ti, sj);
      if (tj > 0) rhs -= y.block(oi, oj + sj, si, tj) * t.block(oj, oj + sj, sj, tj).transpose();
      y.block(oi, oj, si, sj) =
          solve_small_sylvester(t.block(oi, oi, si, si), t.block(oj, oj, sj, sj), rhs);
    }
  }

  RealMatrix x = u * y * u.transpose();
  x = 0.5 * (x + x.transpose()).eval();

  const double residual = (f * x + x * f.transpose() + w).norm();
  if (residual > tol::kLyap * (f.norm() * x.norm() + w.norm())) {
    throw Error(ErrorCode::ConvergenceFailure, "Lyapunov residual above tolerance");
  }
  return x;
}

}  // namespace nistab
