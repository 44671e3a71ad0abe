#include <cmath>

#include "nistab/analysis.hpp"

namespace nistab {

DegeneracyDiagnostics degeneracy_diagnostics(const Plant& plant, double epsilon) {
  require_assumptions(plant, /*need_a2=*/true);
  const RealMatrix ar = a_r(plant, epsilon);
  const auto eigs = eigenvalues(ar);
  Complex dominant = eigs.front();
  for (const auto& e : eigs) {
    if (e.real() > dominant.real()) dominant = e;
  }
  if (dominant.real() <= tol::kSplit * ar.norm()) {
    throw Error(ErrorCode::NoAntistableEigenvalue, "A_r has no anti-stable eigenvalue");
  }

  DegeneracyDiagnostics out;
  out.lambda = dominant;
  out.y = left_eigenvector(ar, dominant);
  const RealMatrix z = z_matrix(plant);
  const RealMatrix w = w_vector(plant);
  out.w_dot_y = (w.cast<Complex>() * out.y)(0, 0);
  out.b2_dot_y = (plant.b2().transpose().cast<Complex>() * out.y)(0, 0);
  out.yzy = (out.y.transpose() * z.cast<Complex>() * out.y)(0, 0);

  // With Z and w as defined, yᵀZy = −2 (w·y)(B2ᵀy) for every y.
  const Complex factored = -2.0 * out.w_dot_y * out.b2_dot_y;
  const double scale = 1.0 + z.norm() + w.norm() * plant.b2().norm();
  out.identity_residual = std::abs(out.yzy - factored) / scale;
  // Z is a difference of rank-one terms; measure yᵀZy against their size.
  const double c = std::abs(plant.c1b2());
  const double b1 = plant.b1().norm(), b2 = plant.b2().norm();
  const double terms = 2.0 * b1 * b2 / c + std::abs(plant.r_value()) * b2 * b2 / (c * c);
  out.degenerate = std::abs(out.yzy) <= 1e-10 * terms;
  return out;
}

}  // namespace nistab
