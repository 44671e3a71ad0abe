#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nistab/matrix_core.hpp"

namespace nistab {

void require_finite(const RealMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or Inf entries");
  }
}

void require_square(const RealMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " is " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
}

std::vector<Complex> eigenvalues(const RealMatrix& m) {
  require_square(m, "matrix");
  require_finite(m, "matrix");
  if (m.rows() == 0) return {};

  Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

double max_real_part(const std::vector<Complex>& values) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) best = std::max(best, v.real());
  return best;
}

RealVector symmetric_eigenvalues(const RealMatrix& m) {
  require_square(m, "matrix");
  if (m.rows() == 0) return RealVector();
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigenvalue iteration did not converge");
  }
  return solver.eigenvalues();
}

ComplexVector left_eigenvector(const RealMatrix& m, Complex lambda, double tol) {
  const auto eigs = eigenvalues(m);
  const Index n = m.rows();
  if (n == 0) throw Error(ErrorCode::NotAnEigenvalue, "empty matrix");

  const auto nearest = std::min_element(eigs.begin(), eigs.end(), [&](const Complex& a, const Complex& b) {
    return std::abs(a - lambda) < std::abs(b - lambda);
  });
  const double scale = std::max(1.0, m.norm());
  if (std::abs(*nearest - lambda) > tol * scale) {
    throw Error(ErrorCode::NotAnEigenvalue, "no eigenvalue within tolerance of the requested value");
  }

  // yᵀM = μyᵀ  ⇔  (Mᵀ − μI)·y = 0; take the right singular vector of the
  // smallest singular value.
  ComplexMatrix shifted = m.transpose().cast<Complex>();
  shifted.diagonal().array() -= *nearest;
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  ComplexVector y = svd.matrixV().col(n - 1);
  y.normalize();

  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(y(i));
    if (mag > 1e-12) {
      y *= std::conj(y(i)) / mag;
      break;
    }
  }
  return y;
}

}  // namespace nistab
