#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "nistab/analysis.hpp"
#include "nistab/decomposition.hpp"
#include "nistab/plant.hpp"
#include "nistab/synthesis.hpp"

namespace nistab::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline RealMatrix gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = n(rng);
  return m;
}

inline RealMatrix random_orthogonal(Rng& rng, Index n) {
  Eigen::HouseholderQR<RealMatrix> qr(gaussian(rng, n, n));
  return qr.householderQ() * RealMatrix::Identity(n, n);
}

// The three-state illustrative plant.
inline Plant example_plant() {
  RealMatrix a(3, 3), b1(3, 1), b2(3, 1), c1(1, 3);
  a << -1, 0, -1, 1, 0, -1, -1, 2, 1;
  b1 << 1, 1, 1;
  b2 << 0, 1, 1;
  c1 << 1, 1, 0;
  return Plant(a, b1, b2, c1);
}

enum class ZeroCase { OneUnstable, NoUnstable };

struct StructuredPlant {
  Plant plant;
  double gamma;
};

// Built in a basis where C1 ∝ e_nᵀ and B2 ∝ e_n, so A_q's nonzero spectrum is
// that of the leading (n−1)×(n−1) block, chosen directly. A random orthogonal
// change of basis hides the structure.
inline StructuredPlant structured_plant_draw(Rng& rng, Index n, ZeroCase zc) {
  const Index m = n - 1;
  const Index n_stable = zc == ZeroCase::OneUnstable ? m - 1 : m;
  RealMatrix d = RealMatrix::Zero(m, m);
  std::vector<bool> pair_start(static_cast<std::size_t>(m), false);
  Index i = 0;
  while (i < n_stable) {
    if (n_stable - i >= 2 && uniform(rng, 0, 1) < 0.3) {
      const double a = -uniform(rng, 0.3, 3.0);
      const double b = uniform(rng, 0.2, 2.0);
      d(i, i) = a;
      d(i, i + 1) = b;
      d(i + 1, i) = -b;
      d(i + 1, i + 1) = a;
      pair_start[static_cast<std::size_t>(i)] = true;
      i += 2;
    } else {
      d(i, i) = -uniform(rng, 0.3, 3.0);
      ++i;
    }
  }
  if (zc == ZeroCase::OneUnstable) d(m - 1, m - 1) = uniform(rng, 0.3, 3.0);

  RealMatrix nil = gaussian(rng, m, m) * 0.5;
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c <= r; ++c) nil(r, c) = 0.0;
  for (Index k = 0; k + 1 < m; ++k)
    if (pair_start[static_cast<std::size_t>(k)]) nil(k, k + 1) = 0.0;
  const RealMatrix w = random_orthogonal(rng, m);
  const RealMatrix a11 = w * (d + nil) * w.transpose();

  RealMatrix a = RealMatrix::Zero(n, n);
  a.topLeftCorner(m, m) = a11;
  a.topRightCorner(m, 1) = gaussian(rng, m, 1);
  a.bottomRows(1) = gaussian(rng, 1, n);
  RealMatrix b2 = RealMatrix::Zero(n, 1);
  b2(m, 0) = uniform(rng, 0.5, 2.0) * (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
  RealMatrix c1 = RealMatrix::Zero(1, n);
  c1(0, m) = uniform(rng, 0.5, 2.0);
  RealMatrix b1 = gaussian(rng, n, 1);
  b1(m, 0) = std::abs(b1(m, 0)) + 0.2;

  const RealMatrix v = random_orthogonal(rng, n);
  Plant plant(v * a * v.transpose(), v * b1, v * b2, c1 * v.transpose());

  double gamma = -std::numeric_limits<double>::infinity();
  for (const Complex& z : eigenvalues(a_q(plant)))
    if (z.real() < -1e-6) gamma = std::max(gamma, z.real());
  return {std::move(plant), -gamma};
}

// The structure makes (A, B2) controllable generically, but the Krylov rank
// test can still reject a draw at n ≈ 8; redraw those.
inline StructuredPlant structured_plant(Rng& rng, Index n, ZeroCase zc) {
  for (;;) {
    StructuredPlant p = structured_plant_draw(rng, n, zc);
    if (is_controllable(p.plant.a(), p.plant.b2())) return p;
  }
}

// One-unstable-zero plants that meet the anti-stable-block conditions at
// small ε; without this filter X is indefinite for every ε on about half of
// them.
inline StructuredPlant case1_plant(Rng& rng, Index n) {
  for (;;) {
    StructuredPlant p = structured_plant(rng, n, ZeroCase::OneUnstable);
    if (synthesize(p.plant, 0.01 * p.gamma).feasible) return p;
  }
}

inline StructuredPlant case2_plant(Rng& rng, Index n) { return structured_plant(rng, n, ZeroCase::NoUnstable); }

// Dense Gaussian plant with |C1B2| and R bounded away from zero.
inline Plant generic_plant(Rng& rng, Index n) {
  for (;;) {
    RealMatrix a = gaussian(rng, n, n), b1 = gaussian(rng, n, 1), b2 = gaussian(rng, n, 1), c1 = gaussian(rng, 1, n);
    const double c1b2 = (c1 * b2)(0, 0);
    const double r = 2.0 * (c1 * b1)(0, 0);
    if (std::abs(c1b2) > 0.2 && r > 0.2) return Plant(a, b1, b2, c1);
  }
}

inline RealMatrix random_hurwitz(Rng& rng, Index n) {
  const RealMatrix g = gaussian(rng, n, n);
  const double shift = max_real_part(eigenvalues(g)) + uniform(rng, 0.1, 1.0);
  return g - shift * RealMatrix::Identity(n, n);
}

inline RealMatrix random_symmetric(Rng& rng, Index n) {
  const RealMatrix g = gaussian(rng, n, n);
  return g + g.transpose();
}

// Dense Kronecker solve of F·X + X·Fᵀ + W = 0, column-major vec.
inline RealMatrix kronecker_lyapunov(const RealMatrix& f, const RealMatrix& w) {
  const Index n = f.rows();
  const RealMatrix id = RealMatrix::Identity(n, n);
  // vec(F·X) = (I ⊗ F) vec X, vec(X·Fᵀ) = (F ⊗ I) vec X
  RealMatrix big = RealMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) big.block(i * n, i * n, n, n) += f;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) big.block(i * n, j * n, n, n) += f(i, j) * id;
  const Eigen::Map<const Eigen::VectorXd> rhs(w.data(), n * n);
  const Eigen::VectorXd x = big.fullPivLu().solve(-rhs);
  return Eigen::Map<const RealMatrix>(x.data(), n, n);
}

// Multiset distance after greedy nearest matching.
inline double spectrum_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const Complex& p, const Complex& q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace nistab::testing
