#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "nistab/error.hpp"
#include "test_support.hpp"

namespace nistab {
namespace {

using testing::Rng;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

TEST(Plant, DimensionChecks) {
  const RealMatrix a = RealMatrix::Identity(3, 3);
  const RealMatrix col = RealMatrix::Ones(3, 1);
  const RealMatrix row = RealMatrix::Ones(1, 3);
  EXPECT_EQ(code_of([&] { Plant(RealMatrix::Ones(3, 2), col, col, row); }), ErrorCode::NonSquare);
  EXPECT_EQ(code_of([&] { Plant(a, RealMatrix::Ones(2, 1), col, row); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { Plant(a, col, RealMatrix::Ones(3, 2), row); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { Plant(a, col, col, RealMatrix::Ones(2, 3)); }), ErrorCode::DimensionMismatch);
  RealMatrix bad = a;
  bad(1, 1) = INFINITY;
  EXPECT_EQ(code_of([&] { Plant(bad, col, col, row); }), ErrorCode::NonFinite);
}

TEST(Assumptions, Example) {
  const AssumptionReport r = check_assumptions(testing::example_plant());
  EXPECT_EQ(r.c1b2, 1.0);
  EXPECT_TRUE(r.a1_holds);
  EXPECT_EQ(r.r_value, 4.0);
  EXPECT_TRUE(r.a2_holds);
  EXPECT_TRUE(r.controllable);
}

TEST(Assumptions, OrthogonalChannelsFailA1) {
  RealMatrix a = RealMatrix::Identity(2, 2), b1(2, 1), b2(2, 1), c1(1, 2);
  b1 << 1, 0;
  b2 << 0, 1;
  c1 << 1, 0;
  const AssumptionReport r = check_assumptions(Plant(a, b1, b2, c1));
  EXPECT_FALSE(r.a1_holds);
  EXPECT_EQ(code_of([&] { require_assumptions(Plant(a, b1, b2, c1), false); }), ErrorCode::AssumptionA1Violated);
}

TEST(Assumptions, CollocatedUnitChannel) {
  Rng rng(1);
  const RealMatrix e1 = RealMatrix(RealMatrix::Identity(3, 3).col(0));
  const AssumptionReport r = check_assumptions(Plant(testing::gaussian(rng, 3, 3), e1, e1, e1.transpose()));
  EXPECT_EQ(r.r_value, 2.0);
  EXPECT_TRUE(r.a2_holds);
}

TEST(Assumptions, NegativeRFailsA2) {
  RealMatrix a = RealMatrix::Identity(2, 2), b1(2, 1), b2(2, 1), c1(1, 2);
  b1 << -1, 0;
  b2 << 1, 1;
  c1 << 1, 0;
  const Plant p(a, b1, b2, c1);
  EXPECT_TRUE(check_assumptions(p).a1_holds);
  EXPECT_FALSE(check_assumptions(p).a2_holds);
  EXPECT_EQ(code_of([&] { require_assumptions(p, true); }), ErrorCode::AssumptionA2Violated);
}

TEST(Controllability, Examples) {
  RealMatrix a = RealVector(Eigen::Vector2d(1.0, 2.0)).asDiagonal();
  EXPECT_TRUE(is_controllable(a, RealMatrix::Ones(2, 1)));
  EXPECT_FALSE(is_controllable(a, RealMatrix(RealMatrix::Identity(2, 2).col(0))));
  const Plant p = testing::example_plant();
  EXPECT_TRUE(is_controllable(p.a(), p.b2()));
  EXPECT_EQ(code_of([&] { is_controllable(a, RealMatrix::Ones(3, 1)); }), ErrorCode::DimensionMismatch);
}

TEST(Controllability, ExampleRankBySvdOracle) {
  const Plant p = testing::example_plant();
  RealMatrix ctrb(3, 3);
  ctrb.col(0) = p.b2();
  ctrb.col(1) = p.a() * p.b2();
  ctrb.col(2) = p.a() * p.a() * p.b2();
  const Eigen::JacobiSVD<RealMatrix> svd(ctrb);
  EXPECT_GT(svd.singularValues()(2), 1e-8 * svd.singularValues()(0));
}

TEST(Controllability, SimilarityInvariant) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial % 6;
    RealMatrix a = testing::gaussian(rng, n, n);
    RealMatrix b = testing::gaussian(rng, n, 1);
    if (trial % 3 == 0) {
      // uncontrollable: block-triangular with an unreached state
      a.bottomLeftCorner(1, n - 1).setZero();
      b(n - 1, 0) = 0.0;
    }
    const RealMatrix t = testing::random_orthogonal(rng, n) * (RealMatrix::Identity(n, n) +
                                                               0.3 * testing::gaussian(rng, n, n).triangularView<Eigen::Upper>().toDenseMatrix());
    const RealMatrix ti = t.inverse();
    EXPECT_EQ(is_controllable(a, b), is_controllable(t * a * ti, t * b));
    if (trial % 3 == 0) EXPECT_FALSE(is_controllable(a, b));
  }
}

TEST(ClosedLoop, ZeroGainKeepsSpectrum) {
  const Plant p = testing::example_plant();
  const LtiSystem sys = closed_loop(p, RealMatrix::Zero(1, 3));
  EXPECT_EQ(sys.a(), p.a());
  EXPECT_EQ(sys.b(), p.b1());
  EXPECT_EQ(sys.c(), p.c1());
  EXPECT_EQ(sys.d(), 0.0);
}

TEST(ClosedLoop, Scalar) {
  RealMatrix z(1, 1), one(1, 1), k(1, 1);
  z << 0;
  one << 1;
  k << -2;
  EXPECT_EQ(closed_loop(Plant(z, one, one, one), k).a()(0, 0), -2.0);
  EXPECT_EQ(code_of([&] { closed_loop(Plant(z, one, one, one), RealMatrix::Zero(1, 2)); }), ErrorCode::DimensionMismatch);
}

TEST(TransferEval, FirstOrderLag) {
  RealMatrix a(1, 1), b(1, 1), c(1, 1);
  a << -1;
  b << 1;
  c << 1;
  const LtiSystem sys(a, b, c);
  EXPECT_NEAR(std::abs(transfer_eval(sys, 0.0) - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(transfer_eval(sys, Complex(0, 1)) - Complex(0.5, -0.5)), 0.0, 1e-15);
  EXPECT_EQ(code_of([&] { transfer_eval(sys, -1.0); }), ErrorCode::PoleProximity);
}

TEST(TransferEval, ExampleAgainstAdjugate) {
  // u→z at s = 1: C1 adj(I − A) B2 / det(I − A)
  const Plant p = testing::example_plant();
  const LtiSystem sys(p.a(), p.b2(), p.c1());
  const Eigen::Matrix3d m = Eigen::Matrix3d::Identity() - Eigen::Matrix3d(p.a());
  Eigen::Matrix3d adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix2d minor;
      int r = 0;
      for (int ii = 0; ii < 3; ++ii) {
        if (ii == j) continue;
        int c = 0;
        for (int jj = 0; jj < 3; ++jj) {
          if (jj == i) continue;
          minor(r, c++) = m(ii, jj);
        }
        ++r;
      }
      adj(i, j) = ((i + j) % 2 ? -1.0 : 1.0) * minor.determinant();
    }
  const double expected = (Eigen::RowVector3d(p.c1()) * adj * Eigen::Vector3d(p.b2()))(0) / m.determinant();
  EXPECT_NEAR(std::abs(transfer_eval(sys, 1.0) - Complex(expected, 0.0)), 0.0, 1e-12);
}

TEST(TransferEval, ConjugateSymmetry) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 7;
    const LtiSystem sys(testing::gaussian(rng, n, n), testing::gaussian(rng, n, 1), testing::gaussian(rng, 1, n), 0.3);
    const Complex s(testing::uniform(rng, -2, 2), testing::uniform(rng, 0.1, 3));
    EXPECT_LE(std::abs(transfer_eval(sys, std::conj(s)) - std::conj(transfer_eval(sys, s))),
              1e-10 * (1.0 + std::abs(transfer_eval(sys, s))));
  }
}

TEST(Plant, ExactEquality) {
  const Plant p = testing::example_plant();
  EXPECT_TRUE(p == testing::example_plant());
  RealMatrix a = p.a();
  a(0, 0) = std::nextafter(a(0, 0), 0.0);
  EXPECT_FALSE(p == Plant(a, p.b1(), p.b2(), p.c1()));
}

}  // namespace
}  // namespace nistab
