#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "nistab/matrix_core.hpp"

namespace nistab {

std::vector<SchurBlock> schur_blocks(const RealMatrix& t) {
  std::vector<SchurBlock> blocks;
  const Index n = t.rows();
  for (Index i = 0; i < n;) {
    const Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    blocks.push_back({i, size});
    i += size;
  }
  return blocks;
}

Complex block_eigenvalue(const RealMatrix& t, const SchurBlock& block) {
  const Index i = block.offset;
  if (block.size == 1) return {t(i, i), 0.0};
  const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
  const double half_trace = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc >= 0.0) {
    // Real pair left unsplit; report the larger one.
    return {half_trace + std::sqrt(disc), 0.0};
  }
  return {half_trace, std::sqrt(-disc)};
}

void swap_schur_blocks(RealMatrix& t, RealMatrix& u, Index offset, Index p1, Index p2) {
  const Index s = p1 + p2;
  const RealMatrix a11 = t.block(offset, offset, p1, p1);
  const RealMatrix a12 = t.block(offset, offset + p1, p1, p2);
  const RealMatrix a22 = t.block(offset + p1, offset + p1, p2, p2);

  // A11·X − X·A22 = A12, so span[−X; I] is invariant with spectrum σ(A22).
  RealMatrix kron = RealMatrix::Zero(p1 * p2, p1 * p2);
  for (Index j = 0; j < p2; ++j) {
    kron.block(j * p1, j * p1, p1, p1) += a11;
    for (Index l = 0; l < p2; ++l) {
      kron.block(l * p1, j * p1, p1, p1).diagonal().array() -= a22(j, l);
    }
  }
  const RealVector rhs = Eigen::Map<const RealVector>(a12.data(), p1 * p2);
  Eigen::FullPivLU<RealMatrix> lu(kron);
  if (lu.rank() < p1 * p2) {
    throw Error(ErrorCode::ConvergenceFailure, "block swap with coinciding eigenvalues");
  }
  const RealVector xvec = lu.solve(rhs);
  const RealMatrix x = Eigen::Map<const RealMatrix>(xvec.data(), p1, p2);

  RealMatrix basis(s, p2);
  basis.topRows(p1) = -x;
  basis.bottomRows(p2).setIdentity();
  Eigen::HouseholderQR<RealMatrix> qr(basis);
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(s, s);

  const RealMatrix window_before = t.block(offset, offset, s, s);
  t.middleRows(offset, s) = q.transpose() * t.middleRows(offset, s);
  t.middleCols(offset, s) = t.middleCols(offset, s) * q;
  u.middleCols(offset, s) = u.middleCols(offset, s) * q;

  auto coupling = t.block(offset + p2, offset, p1, p2);
  const double scale = std::max(window_before.norm(), 1.0);
  if (coupling.norm() > 1e-10 * scale) {
    throw Error(ErrorCode::ConvergenceFailure, "block swap rejected: ill-conditioned exchange");
  }
  coupling.setZero();
  // Restore exact zeros under a swapped 1×1 pair.
  if (p2 == 1 && p1 == 1) t(offset + 1, offset) = 0.0;
}

SchurForm ordered_real_schur(const RealMatrix& m, double threshold, double tol_split) {
  require_square(m, "matrix");
  require_finite(m, "matrix");
  const Index n = m.rows();
  SchurForm out;
  if (n == 0) return out;

  Eigen::RealSchur<RealMatrix> schur(m, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "real Schur iteration did not converge");
  }
  out.t = schur.matrixT();
  out.u = schur.matrixU();
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 2; i < n; ++i) out.t(i, j) = 0.0;
  }

  const double band = tol_split * m.norm();
  auto blocks = schur_blocks(out.t);
  std::vector<bool> stable;
  stable.reserve(blocks.size());
  for (const auto& b : blocks) {
    const Complex lambda = block_eigenvalue(out.t, b);
    if (b.size == 2 && lambda.imag() == 0.0) {
      throw Error(ErrorCode::ConvergenceFailure, "unsplit 2x2 block with real eigenvalues");
    }
    const double re = lambda.real();
    if (std::abs(re - threshold) <= band) {
      if (threshold == 0.0 && std::abs(lambda) <= band) {
        stable.push_back(true);
        continue;
      }
      throw Error(ErrorCode::SplitAmbiguous,
                  "eigenvalue with real part " + std::to_string(re) + " inside the split band");
    }
    stable.push_back(re < threshold);
  }

  // Insertion-style stable partition by adjacent exchanges.
  std::vector<Index> sizes;
  for (const auto& b : blocks) sizes.push_back(b.size);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!stable[i]) continue;
    for (std::size_t j = i; j > 0 && !stable[j - 1]; --j) {
      Index offset = 0;
      for (std::size_t k = 0; k + 1 < j; ++k) offset += sizes[k];
      swap_schur_blocks(out.t, out.u, offset, sizes[j - 1], sizes[j]);
      std::swap(sizes[j - 1], sizes[j]);
      std::swap(stable[j - 1], stable[j]);
    }
  }

  for (std::size_t i = 0; i < sizes.size() && stable[i]; ++i) out.k_stable += sizes[i];
  return out;
}

}  // namespace nistab
