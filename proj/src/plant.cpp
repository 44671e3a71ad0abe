#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "nistab/plant.hpp"

namespace nistab {
namespace {

void require_shape(const RealMatrix& m, Index rows, Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

Plant::Plant(RealMatrix a, RealMatrix b1, RealMatrix b2, RealMatrix c1)
    : a_(std::move(a)), b1_(std::move(b1)), b2_(std::move(b2)), c1_(std::move(c1)) {
  require_square(a_, "A");
  const Index n = a_.rows();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "plant has no states");
  require_shape(b1_, n, 1, "B1");
  require_shape(b2_, n, 1, "B2");
  require_shape(c1_, 1, n, "C1");
  require_finite(a_, "A");
  require_finite(b1_, "B1");
  require_finite(b2_, "B2");
  require_finite(c1_, "C1");
}

LtiSystem::LtiSystem(RealMatrix a, RealMatrix b, RealMatrix c, double d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d) {
  require_square(a_, "A");
  const Index n = a_.rows();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "system has no states");
  require_shape(b_, n, 1, "B");
  require_shape(c_, 1, n, "C");
  require_finite(a_, "A");
  require_finite(b_, "B");
  require_finite(c_, "C");
  if (!std::isfinite(d_)) throw Error(ErrorCode::NonFinite, "D is not finite");
}

bool operator==(const Plant& lhs, const Plant& rhs) {
  auto same = [](const RealMatrix& x, const RealMatrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  return same(lhs.a(), rhs.a()) && same(lhs.b1(), rhs.b1()) && same(lhs.b2(), rhs.b2()) &&
         same(lhs.c1(), rhs.c1());
}

AssumptionReport check_assumptions(const Plant& plant) {
  AssumptionReport report;
  report.c1b2 = plant.c1b2();
  report.r_value = plant.r_value();
  const double c1 = plant.c1().norm();
  report.a1_holds = std::abs(report.c1b2) > tol::kAssumption * (1.0 + c1 * plant.b2().norm());
  report.a2_holds = report.r_value > tol::kAssumption * (1.0 + c1 * plant.b1().norm());
  report.controllable = is_controllable(plant.a(), plant.b2());
  return report;
}

void require_assumptions(const Plant& plant, bool need_a2) {
  const double c1 = plant.c1().norm();
  if (!(std::abs(plant.c1b2()) > tol::kAssumption * (1.0 + c1 * plant.b2().norm()))) {
    throw Error(ErrorCode::AssumptionA1Violated, "C1*B2 is numerically zero");
  }
  if (need_a2 && !(plant.r_value() > tol::kAssumption * (1.0 + c1 * plant.b1().norm()))) {
    throw Error(ErrorCode::AssumptionA2Violated, "R = C1*B1 + B1'*C1' is not positive");
  }
}

bool is_controllable(const RealMatrix& a, const RealMatrix& b, double tol_rank) {
  require_square(a, "A");
  const Index n = a.rows();
  if (b.rows() != n || b.cols() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "B must be n x 1");
  }
  if (n == 0) return true;
  RealMatrix ctrb(n, n);
  ctrb.col(0) = b;
  for (Index k = 1; k < n; ++k) ctrb.col(k) = a * ctrb.col(k - 1);
  const RealVector sv = Eigen::JacobiSVD<RealMatrix>(ctrb).singularValues();
  if (sv(0) == 0.0) return false;
  return (sv.array() > tol_rank * sv(0)).count() == n;
}

LtiSystem closed_loop(const Plant& plant, const RealMatrix& k) {
  if (k.rows() != 1 || k.cols() != plant.states()) {
    throw Error(ErrorCode::DimensionMismatch, "gain K must be 1 x n");
  }
  return LtiSystem(plant.a() + plant.b2() * k, plant.b1(), plant.c1(), 0.0);
}

Complex transfer_eval(const LtiSystem& sys, Complex s) {
  const auto poles = eigenvalues(sys.a());
  const double guard = tol::kPole * (1.0 + sys.a().norm());
  for (const auto& p : poles) {
    if (std::abs(s - p) <= guard) {
      throw Error(ErrorCode::PoleProximity, "evaluation point coincides with a pole");
    }
  }
  ComplexMatrix resolvent = -sys.a().cast<Complex>();
  resolvent.diagonal().array() += s;
  const ComplexVector x = resolvent.partialPivLu().solve(sys.b().cast<Complex>());
  return (sys.c().cast<Complex>() * x)(0, 0) + sys.d();
}

}  // namespace nistab
