#include <gtest/gtest.h>

#include <cmath>

#include "nistab/error.hpp"
#include "test_support.hpp"

namespace nistab {
namespace {

using testing::Rng;

constexpr double kBoundary = 1.6458;

double max_pole(const Plant& p, const RealMatrix& k) { return max_real_part(eigenvalues(closed_loop(p, k).a())); }

TEST(Synthesize, ExampleHalf) {
  const Plant p = testing::example_plant();
  const SynthesisOutcome out = synthesize(p, 0.5);
  ASSERT_TRUE(out.feasible);
  EXPECT_EQ(out.branch, Branch::AntistableBlock);
  EXPECT_EQ(out.dim_antistable, 1);
  ASSERT_TRUE(out.k && out.p && out.t && out.s && out.x);
  EXPECT_NEAR(max_pole(p, *out.k), -0.5, 1e-6);
  EXPECT_TRUE(is_sni(closed_loop(p, *out.k), default_frequency_grid()).holds);
}

TEST(Synthesize, ExampleFeasibleBelowBoundary) {
  const Plant p = testing::example_plant();
  for (double eps : {0.5, 1.0, 1.5, 1.64}) {
    const SynthesisOutcome out = synthesize(p, eps);
    EXPECT_TRUE(out.feasible) << eps;
    EXPECT_EQ(out.branch, Branch::AntistableBlock);
    EXPECT_LE(max_pole(p, *out.k), -eps + 1e-6);
  }
}

TEST(Synthesize, ExampleJustAboveBoundary) {
  const SynthesisOutcome out = synthesize(testing::example_plant(), kBoundary + 1e-6);
  EXPECT_FALSE(out.feasible);
  EXPECT_FALSE(out.k.has_value());
  EXPECT_EQ(out.dim_antistable, 2);
  const RealVector& x = out.diagnostics.x_eigenvalues;
  ASSERT_EQ(x.size(), 2);
  EXPECT_NEAR(x(0), -5.5568, 1e-2);
  EXPECT_NEAR(x(1), 0.261, 1e-2);
  EXPECT_EQ(out.diagnostics.x_min_eig, x(0));
}

// T, S and X from a dense Kronecker solve on the same partition.
RealVector oracle_x_spectrum(const Plant& p, double eps) {
  const SchurPartition part = schur_partition(p, eps);
  const RealMatrix f = -part.a22;
  const double r = part.r_value;
  const RealMatrix t = testing::kronecker_lyapunov(f, r * part.c22 * part.c22.transpose());
  const RealMatrix s = testing::kronecker_lyapunov(f, part.b22 * part.b22.transpose() / r);
  const RealMatrix x = t - s;
  return symmetric_eigenvalues(0.5 * (x + x.transpose()));
}

TEST(Synthesize, ExampleLyapunovOracle) {
  const Plant p = testing::example_plant();
  for (double eps : {0.5, 1.0, 1.7, 2.5}) {
    const SynthesisOutcome out = synthesize(p, eps);
    const RealVector oracle = oracle_x_spectrum(p, eps);
    ASSERT_EQ(oracle.size(), out.diagnostics.x_eigenvalues.size());
    EXPECT_LE((oracle - out.diagnostics.x_eigenvalues).norm(), 1e-8 * (1.0 + oracle.norm()));
    EXPECT_EQ(out.feasible, oracle.minCoeff() > 0.0) << eps;
  }
  EXPECT_FALSE(synthesize(p, 1.7).feasible);
}

TEST(Synthesize, CollocatedScalarBlockGivesZeroX) {
  Rng rng(31);
  int checked = 0;
  for (int k = 0; k < 20 && checked < 5; ++k) {
    const auto sp = testing::structured_plant(rng, 4, testing::ZeroCase::OneUnstable);
    RealMatrix b = sp.plant.b2();
    if ((sp.plant.c1() * b)(0, 0) < 0) continue;
    const Plant p(sp.plant.a(), b, b, sp.plant.c1());
    const SynthesisOutcome out = synthesize(p, 0.1 * sp.gamma);
    if (out.dim_antistable != 1) continue;
    ++checked;
    EXPECT_FALSE(out.feasible);
    EXPECT_LE(std::abs(out.diagnostics.x_eigenvalues(0)), 1e-10 * (1.0 + out.t->norm()));
  }
  EXPECT_GT(checked, 0);
}

TEST(MinimumPhase, ScalarPlant) {
  RealMatrix a(1, 1), one(1, 1);
  a << -1;
  one << 1;
  const Plant p(a, one, one, one);
  const SynthesisOutcome out = synthesize(p, 0.5);
  ASSERT_TRUE(out.feasible);
  EXPECT_EQ(out.branch, Branch::MinimumPhase);
  EXPECT_NEAR((*out.k)(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(closed_loop(p, *out.k).a()(0, 0), -0.5, 1e-15);
  EXPECT_EQ(out.p->norm(), 0.0);
  EXPECT_FALSE(out.t || out.s || out.x);
}

TEST(MinimumPhase, RejectsAntistableBlock) {
  try {
    minimum_phase_gain(testing::example_plant(), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AntistableBlockPresent);
  }
}

TEST(MinimumPhase, ProofIdentities) {
  Rng rng(32);
  for (int k = 0; k < 60; ++k) {
    const Index n = 3 + k % 6;
    const auto sp = testing::case2_plant(rng, n);
    const double eps = testing::uniform(rng, 0.05, 0.95) * sp.gamma;
    const SynthesisOutcome out = synthesize(sp.plant, eps);
    ASSERT_EQ(out.branch, Branch::MinimumPhase);
    ASSERT_TRUE(out.feasible);
    const RealMatrix& a = sp.plant.a();
    const RealMatrix acl = a + sp.plant.b2() * *out.k;
    const RealMatrix shifted = acl + eps * RealMatrix::Identity(n, n);
    EXPECT_LE((sp.plant.c1() * shifted).norm(), 1e-10 * (1.0 + sp.plant.c1().norm() * shifted.norm()));
    const RealMatrix ar = a_r(sp.plant, eps);
    const RealMatrix back = shifted - sp.plant.b1() * (sp.plant.c1() * shifted) / sp.plant.r_value();
    EXPECT_LE((back - ar).norm(), 1e-10 * (1.0 + ar.norm()));
    std::vector<Complex> expected = eigenvalues(ar);
    for (Complex& z : expected) z -= eps;
    EXPECT_LE(testing::spectrum_distance(eigenvalues(acl), expected), 1e-8 * (1.0 + ar.norm()));
  }
}

void expect_feasible_contracts(const Plant& p, const SynthesisOutcome& out, const std::vector<double>& grid) {
  ASSERT_TRUE(out.feasible);
  const RealMatrix& pm = *out.p;
  EXPECT_LE((pm - pm.transpose()).norm(), 1e-12 * (1.0 + pm.norm()));
  if (out.branch == Branch::AntistableBlock) {
    const RealVector e = symmetric_eigenvalues(pm);
    EXPECT_GE(e.minCoeff(), -1e-10 * (1.0 + pm.norm()));
    Index rank = 0;
    for (Index i = 0; i < e.size(); ++i) rank += e(i) > 1e-9 * e.cwiseAbs().maxCoeff() ? 1 : 0;
    EXPECT_EQ(rank, out.dim_antistable);
    EXPECT_GE(out.diagnostics.t_min_eig, -tol::kPsd * out.t->norm());
    EXPECT_GE(out.diagnostics.s_min_eig, -tol::kPsd * out.s->norm());
    EXPECT_GT(out.diagnostics.x_min_eig, 0.0);
  } else {
    EXPECT_EQ(pm.norm(), 0.0);
  }
  EXPECT_LE(max_pole(p, *out.k), -out.epsilon + 1e-6);
  EXPECT_TRUE(is_sni(closed_loop(p, *out.k), grid).holds);
}

TEST(Synthesize, RandomContracts) {
  Rng rng(33);
  const std::vector<double> grid = default_frequency_grid();
  for (int k = 0; k < 40; ++k) {
    const Index n = 3 + k % 6;
    const auto sp = k % 2 ? testing::case1_plant(rng, n) : testing::case2_plant(rng, n);
    for (double f : {0.25, 0.5, 0.9}) {
      const SynthesisOutcome out = synthesize(sp.plant, f * sp.gamma);
      EXPECT_EQ(out.branch, k % 2 ? Branch::AntistableBlock : Branch::MinimumPhase);
      expect_feasible_contracts(sp.plant, out, grid);
    }
  }
}

TEST(Synthesize, BasisIndependence) {
  Rng rng(34);
  std::vector<std::pair<Plant, double>> cases{{testing::example_plant(), 1.0}, {testing::example_plant(), 1.7},
                                              {testing::example_plant(), 3.0}};
  for (int k = 0; k < 10; ++k) {
    const auto sp = testing::case1_plant(rng, 4 + k % 4);
    cases.emplace_back(sp.plant, 0.5 * sp.gamma);
    cases.emplace_back(sp.plant, 1.5 * sp.gamma);
  }
  for (const auto& [p, eps] : cases) {
    const SchurPartition base = schur_partition(p, eps);
    const SynthesisOutcome ref = synthesize(p, eps);
    const Index n = p.states();
    RealMatrix rot = RealMatrix::Identity(n, n);
    rot.topLeftCorner(base.dim_stable, base.dim_stable) = testing::random_orthogonal(rng, base.dim_stable);
    rot.bottomRightCorner(base.dim_antistable, base.dim_antistable) =
        testing::random_orthogonal(rng, base.dim_antistable);
    const SchurPartition other = partition_from_basis(p, eps, base.u * rot, base.dim_stable);
    const LyapunovPair ts = solve_lyapunov_pair(other);
    const SynthesisOutcome alt = antistable_block_gain(p, eps, other, ts.t, ts.s);
    EXPECT_EQ(alt.feasible, ref.feasible);
    EXPECT_LE((alt.diagnostics.x_eigenvalues - ref.diagnostics.x_eigenvalues).norm(),
              1e-8 * (1.0 + ref.diagnostics.x_eigenvalues.norm()));
    if (ref.feasible) EXPECT_LE((*alt.k - *ref.k).norm(), 1e-7 * (1.0 + ref.k->norm()));
  }
}

TEST(Synthesize, ScalarBlockQuadraticFormLink) {
  Rng rng(35);
  int checked = 0;
  for (int k = 0; k < 40; ++k) {
    const auto sp = testing::case1_plant(rng, 3 + k % 6);
    const double eps = testing::uniform(rng, 0.1, 1.3) * sp.gamma;
    const SchurPartition part = schur_partition(sp.plant, eps);
    if (part.dim_antistable != 1) continue;
    ++checked;
    const LyapunovPair ts = solve_lyapunov_pair(part);
    const double x = (ts.t - ts.s)(0, 0);
    const double lambda = part.a22(0, 0);
    const RealMatrix y = part.antistable_basis();
    const RealMatrix ar = a_r(sp.plant, eps);
    EXPECT_LE((y.transpose() * ar - lambda * y.transpose()).norm(), 1e-9 * (1.0 + ar.norm()));
    const double yzy = (y.transpose() * z_matrix(sp.plant) * y)(0, 0);
    EXPECT_NEAR(x, -yzy / (2.0 * lambda), 1e-8 * (1.0 + std::abs(x)));
    if (std::abs(x) > 1e-8) EXPECT_EQ(x > 0, yzy < 0);
  }
  EXPECT_GT(checked, 10);
}

TEST(Synthesize, Errors) {
  const Plant p = testing::example_plant();
  for (double eps : {0.0, -1.0}) {
    try {
      synthesize(p, eps);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidEpsilon);
    }
  }
  RealMatrix a = RealMatrix::Identity(2, 2), b(2, 1), c(1, 2);
  b << 0, 1;
  c << 1, 0;
  try {
    synthesize(Plant(a, b, b, c), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AssumptionA1Violated);
  }
}

TEST(Synthesize, Deterministic) {
  const Plant p = testing::example_plant();
  const SynthesisOutcome a = synthesize(p, 1.0), b = synthesize(p, 1.0);
  EXPECT_EQ(*a.k, *b.k);
  EXPECT_EQ(*a.p, *b.p);
}

}  // namespace
}  // namespace nistab
