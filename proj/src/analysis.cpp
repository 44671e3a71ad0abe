#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "nistab/analysis.hpp"

namespace nistab {
namespace {

void require_frequency_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "frequency grid is empty");
  for (double w : grid) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidRange, "frequency grid must be strictly positive and finite");
    }
  }
}

double axis_tolerance(const LtiSystem& sys) { return tol::kSplit * (1.0 + sys.a().norm()); }
double cluster_radius(const LtiSystem& sys) { return 1e-6 * (1.0 + sys.a().norm()); }

// Exchanges adjacent diagonal entries k, k+1 of an upper triangular T by a
// unitary rotation whose first column is the eigenvector for T(k+1, k+1).
void swap_diagonal(ComplexMatrix& t, ComplexMatrix& u, Index k) {
  const Complex a = t(k, k), b = t(k, k + 1), d = t(k + 1, k + 1);
  Eigen::Vector2cd v(b, d - a);
  const double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd g;
  g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

// Principal part of C(sI − A)⁻¹B at the eigenvalues flagged in `selected`
// (indices into the diagonal of the complex Schur factor).
PolePrincipalPart principal_part(const LtiSystem& sys, ComplexMatrix t, ComplexMatrix u,
                                 std::vector<bool> selected) {
  const Index n = t.rows();
  // Bubble the selected eigenvalues to the leading positions.
  Index front = 0;
  for (Index i = 0; i < n; ++i) {
    if (!selected[i]) continue;
    for (Index j = i; j > front; --j) {
      swap_diagonal(t, u, j - 1);
      std::swap(selected[j - 1], selected[j]);
    }
    ++front;
  }
  const Index m = front, r = n - m;

  PolePrincipalPart part;
  part.multiplicity = m;
  part.pole = t.diagonal().head(m).mean();

  // Decouple: T11·Y − Y·T22 = −T12, column by column.
  const ComplexMatrix t11 = t.topLeftCorner(m, m);
  ComplexMatrix y = ComplexMatrix::Zero(m, r);
  for (Index j = 0; j < r; ++j) {
    ComplexVector rhs = -t.block(0, m + j, m, 1);
    for (Index l = 0; l < j; ++l) rhs += y.col(l) * t(m + l, m + j);
    ComplexMatrix shifted = t11;
    shifted.diagonal().array() -= t(m + j, m + j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }

  const ComplexVector ub = u.adjoint() * sys.b().cast<Complex>();
  const Eigen::RowVectorXcd cu = sys.c().cast<Complex>() * u;
  const ComplexVector b_tilde = ub.head(m) - y * ub.tail(r);
  const Eigen::RowVectorXcd c_tilde = cu.head(m);

  ComplexMatrix nil = t11;
  nil.diagonal().array() -= part.pole;
  ComplexVector power = b_tilde;
  const double scale = 1.0 + sys.c().norm() * sys.b().norm();
  const double growth = 1.0 + sys.a().norm();
  double level = scale;
  for (Index k = 1; k <= m; ++k) {
    const Complex coef = (c_tilde * power)(0, 0);
    part.coefficients.push_back(coef);
    if (std::abs(coef) > 1e-8 * level) part.order = static_cast<int>(k);
    power = nil * power;
    level *= growth;
  }
  return part;
}

}  // namespace

SniVerdict is_sni(const LtiSystem& sys, std::span<const double> grid, double tol) {
  require_frequency_grid(grid);
  SniVerdict v;
  v.max_pole_re = max_real_part(eigenvalues(sys.a()));

  const auto response = frequency_response(sys, grid);
  v.margin = std::numeric_limits<double>::infinity();
  v.raw_margin = std::numeric_limits<double>::infinity();
  v.worst_omega = grid.front();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex g = response[i];
    const double mag = std::abs(g);
    const bool ok = std::isfinite(mag) && mag > 0.0;
    const double normalized = ok ? -g.imag() / mag : -std::numeric_limits<double>::infinity();
    const double raw = std::isfinite(mag) ? -g.imag() : -std::numeric_limits<double>::infinity();
    v.raw_margin = std::min(v.raw_margin, raw);
    if (normalized < v.margin) {
      v.margin = normalized;
      v.worst_omega = grid[i];
    }
  }
  v.holds = v.max_pole_re < -tol::kPole * (1.0 + sys.a().norm()) && v.margin > tol;
  return v;
}

std::vector<PolePrincipalPart> marginal_poles(const LtiSystem& sys) {
  const Index n = sys.states();
  Eigen::ComplexSchur<ComplexMatrix> schur(sys.a().cast<Complex>(), /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "complex Schur iteration did not converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const double axis = axis_tolerance(sys);
  const double radius = cluster_radius(sys);

  std::vector<bool> assigned(n, false);
  std::vector<PolePrincipalPart> out;
  for (Index i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (assigned[i] || lambda.real() < -axis || lambda.imag() < -radius) continue;
    // Single-linkage cluster around lambda.
    std::vector<bool> selected(n, false);
    selected[i] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (Index j = 0; j < n; ++j) {
        if (selected[j]) continue;
        for (Index k = 0; k < n; ++k) {
          if (selected[k] && std::abs(t(j, j) - t(k, k)) <= radius) {
            selected[j] = grew = true;
            break;
          }
        }
      }
    }
    for (Index j = 0; j < n; ++j) assigned[j] = assigned[j] || selected[j];
    out.push_back(principal_part(sys, t, u, selected));
  }
  std::sort(out.begin(), out.end(), [](const PolePrincipalPart& a, const PolePrincipalPart& b) {
    return a.pole.imag() < b.pole.imag();
  });
  return out;
}

NiVerdict is_ni(const LtiSystem& sys, std::span<const double> grid, double tol) {
  require_frequency_grid(grid);
  NiVerdict v;
  v.no_rhp_poles = v.imaginary_poles_ok = v.origin_pole_ok = true;
  const double axis = axis_tolerance(sys);
  const double radius = cluster_radius(sys);
  auto fail = [&v](bool& flag, const char* why) {
    flag = false;
    if (v.reason.empty()) v.reason = why;
  };

  v.axis_poles = marginal_poles(sys);
  std::vector<double> axis_frequencies;
  for (const auto& pp : v.axis_poles) {
    if (pp.order == 0) continue;
    if (pp.pole.real() > axis) {
      fail(v.no_rhp_poles, "pole in the open right half-plane");
    } else if (std::abs(pp.pole.imag()) <= radius) {
      if (pp.order > 2) {
        fail(v.origin_pole_ok, "pole at the origin of order above two");
      } else if (pp.order == 2) {
        const Complex lim = pp.coefficients[1];
        const double slack = tol::kEig * (1.0 + std::abs(lim));
        if (lim.real() < -slack || std::abs(lim.imag()) > slack) {
          fail(v.origin_pole_ok, "double pole at the origin with negative s^2 G(s) limit");
        }
      }
      axis_frequencies.push_back(0.0);
    } else {
      if (pp.order > 1) {
        fail(v.imaginary_poles_ok, "repeated imaginary-axis pole (defective)");
      } else {
        // Residue of jG at jω0.
        const Complex residue = Complex(0.0, 1.0) * pp.coefficients[0];
        const double slack = tol::kEig * (1.0 + std::abs(residue));
        if (residue.real() < -slack || std::abs(residue.imag()) > slack) {
          fail(v.imaginary_poles_ok, "imaginary-axis pole with residue of jG not real nonnegative");
        }
      }
      axis_frequencies.push_back(pp.pole.imag());
    }
  }

  const auto response = frequency_response(sys, grid);
  v.frequency_condition = true;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid[i];
    const bool near_pole = std::any_of(axis_frequencies.begin(), axis_frequencies.end(),
                                       [&](double w0) { return std::abs(w - w0) <= 1e-6 * (1.0 + w0); });
    const Complex g = response[i];
    const double mag = std::abs(g);
    if (near_pole || !std::isfinite(mag)) continue;
    const double normalized = mag > 0.0 ? -g.imag() / mag : 0.0;
    v.margin = std::min(v.margin, normalized);
    if (-g.imag() < -tol * mag) v.frequency_condition = false;
  }
  if (!v.frequency_condition && v.reason.empty()) v.reason = "positive imaginary part of G(jw) on the grid";

  v.holds = v.no_rhp_poles && v.frequency_condition && v.imaginary_poles_ok && v.origin_pole_ok;
  return v;
}

CertificateCheck riccati_certificate(const LtiSystem& sys, const RealMatrix& p) {
  const Index n = sys.states();
  if (p.rows() != n || p.cols() != n) throw Error(ErrorCode::DimensionMismatch, "P must be n x n");
  require_finite(p, "P");
  if ((p - p.transpose()).norm() > 1e-10 * std::max(1.0, p.norm())) {
    throw Error(ErrorCode::NotSymmetric, "P is not symmetric");
  }
  const double r = 2.0 * (sys.c() * sys.b())(0, 0);
  if (!(r > 0.0)) throw Error(ErrorCode::RNotPositive, "R = CB + B'C' is not positive");

  const RealMatrix& a = sys.a();
  const RealMatrix ca = sys.c() * a;
  const RealMatrix mix = ca - sys.b().transpose() * p;
  const RealMatrix residual = p * a + a.transpose() * p + mix.transpose() * mix / r;
  const RealMatrix closure = a - sys.b() * mix / r;

  CertificateCheck out;
  out.min_eig_p = symmetric_eigenvalues(p)(0);
  out.residual = residual.norm();
  out.residual_ratio = out.residual / (1.0 + p.norm() * a.norm() + ca.squaredNorm() / r);
  out.closure_max_re = max_real_part(eigenvalues(closure));
  out.holds = out.min_eig_p >= -tol::kPsd * std::max(1.0, p.norm()) && out.residual_ratio <= tol::kAre &&
              out.closure_max_re <= tol::kSplit * std::max(1.0, closure.norm());
  return out;
}

bool riccati_certificate_check(const LtiSystem& sys, const RealMatrix& p) {
  return riccati_certificate(sys, p).holds;
}

LtiSystem shift_realization(const LtiSystem& sys, double epsilon) {
  RealMatrix a = sys.a();
  a.diagonal().array() -= epsilon;
  return LtiSystem(std::move(a), sys.b(), sys.c(), sys.d());
}

double degree_of_stability(const LtiSystem& sys) { return -max_real_part(eigenvalues(sys.a())); }

}  // namespace nistab
