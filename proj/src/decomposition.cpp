#include <algorithm>
#include <cmath>
#include <string>

#include "nistab/decomposition.hpp"

namespace nistab {

RealMatrix projector_q(const Plant& plant) {
  require_assumptions(plant, /*need_a2=*/false);
  const Index n = plant.states();
  return RealMatrix::Identity(n, n) - plant.b2() * plant.c1() / plant.c1b2();
}

RealMatrix a_q(const Plant& plant) { return projector_q(plant) * plant.a(); }

RealMatrix a_r(const Plant& plant, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must be finite and nonnegative");
  }
  const RealMatrix q = projector_q(plant);
  return q * plant.a() + epsilon * q;
}

RealMatrix z_matrix(const Plant& plant) {
  require_assumptions(plant, /*need_a2=*/true);
  const double c = plant.c1b2();
  const double r = plant.r_value();
  const RealMatrix& b1 = plant.b1();
  const RealMatrix& b2 = plant.b2();
  const RealMatrix cross = b1 * b2.transpose() + b2 * b1.transpose();
  return cross / c - (r / (c * c)) * (b2 * b2.transpose());
}

RealMatrix w_vector(const Plant& plant) {
  require_assumptions(plant, /*need_a2=*/false);
  const double c = plant.c1b2();
  const double c1b1 = (plant.c1() * plant.b1())(0, 0);
  return (c1b1 * plant.b2().transpose() - c * plant.b1().transpose()) / (c * c);
}

RealMatrix SchurPartition::a_tilde() const {
  const Index n = dim_stable + dim_antistable;
  RealMatrix t = RealMatrix::Zero(n, n);
  t.topLeftCorner(dim_stable, dim_stable) = a11;
  t.topRightCorner(dim_stable, dim_antistable) = a12;
  t.bottomRightCorner(dim_antistable, dim_antistable) = a22;
  return t;
}

RealMatrix SchurPartition::z_tilde() const {
  const Index n = dim_stable + dim_antistable;
  RealMatrix z(n, n);
  z.topLeftCorner(dim_stable, dim_stable) = z11;
  z.topRightCorner(dim_stable, dim_antistable) = z12;
  z.bottomLeftCorner(dim_antistable, dim_stable) = z21;
  z.bottomRightCorner(dim_antistable, dim_antistable) = z22;
  return z;
}

SchurPartition partition_from_basis(const Plant& plant, double epsilon, const RealMatrix& u,
                                    Index dim_stable) {
  require_assumptions(plant, /*need_a2=*/true);
  const Index n = plant.states();
  if (u.rows() != n || u.cols() != n || dim_stable < 0 || dim_stable > n) {
    throw Error(ErrorCode::DimensionMismatch, "basis does not match the plant dimension");
  }
  const Index k = dim_stable, m = n - dim_stable;

  const RealMatrix ar = a_r(plant, epsilon);
  const RealMatrix at = u.transpose() * ar * u;
  if (at.bottomLeftCorner(m, k).norm() > tol::kFact * std::max(1.0, ar.norm())) {
    throw Error(ErrorCode::DimensionMismatch, "basis does not block-triangularize A_r");
  }

  SchurPartition p;
  p.u = u;
  p.dim_stable = k;
  p.dim_antistable = m;
  p.epsilon = epsilon;
  p.c1b2 = plant.c1b2();
  p.r_value = plant.r_value();

  p.a11 = at.topLeftCorner(k, k);
  p.a12 = at.topRightCorner(k, m);
  p.a22 = at.bottomRightCorner(m, m);

  const RealMatrix bt = u.transpose() * plant.b1();
  p.b11 = bt.topRows(k);
  p.b22 = bt.bottomRows(m);

  const RealMatrix ct = u.transpose() * (plant.b2() / p.c1b2 - plant.b1() / p.r_value);
  p.c11 = ct.topRows(k);
  p.c22 = ct.bottomRows(m);

  // Z̃ = B̃R⁻¹B̃ᵀ − C̃RC̃ᵀ, which equals UᵀZU.
  const RealMatrix zt = bt * bt.transpose() / p.r_value - p.r_value * (ct * ct.transpose());
  p.z11 = zt.topLeftCorner(k, k);
  p.z12 = zt.topRightCorner(k, m);
  p.z21 = zt.bottomLeftCorner(m, k);
  p.z22 = zt.bottomRightCorner(m, m);
  return p;
}

SchurPartition schur_partition(const Plant& plant, double epsilon, double tol_split) {
  require_assumptions(plant, /*need_a2=*/true);
  const SchurForm form = ordered_real_schur(a_r(plant, epsilon), 0.0, tol_split);
  SchurPartition p = partition_from_basis(plant, epsilon, form.u, form.k_stable);
  // Take the triangular blocks from the Schur factor itself, not the
  // recomputed product, so Ã22 is exactly quasi-triangular.
  const Index k = form.k_stable, m = plant.states() - k;
  p.a11 = form.t.topLeftCorner(k, k);
  p.a12 = form.t.topRightCorner(k, m);
  p.a22 = form.t.bottomRightCorner(m, m);
  return p;
}

}  // namespace nistab
