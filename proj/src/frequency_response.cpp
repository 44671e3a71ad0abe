#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "nistab/analysis.hpp"

namespace nistab {

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw Error(ErrorCode::InvalidRange, "log grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> out(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_frequency_grid() { return log_grid(1e-4, 1e4, 2000); }

FrequencyKernel::FrequencyKernel(const LtiSystem& sys) : d_(sys.d()) {
  Eigen::HessenbergDecomposition<RealMatrix> hess(sys.a());
  h_ = hess.matrixH();
  const RealMatrix q = hess.matrixQ();
  b_ = q.transpose() * sys.b();
  c_ = (sys.c() * q).transpose();
}

Complex FrequencyKernel::operator()(Complex s) const {
  const Index n = h_.rows();
  ComplexMatrix m = (-h_).cast<Complex>();
  m.diagonal().array() += s;
  ComplexVector x = b_.cast<Complex>();

  // Gaussian elimination with partial pivoting on an upper Hessenberg matrix:
  // only rows k and k+1 compete for the pivot.
  for (Index k = 0; k + 1 < n; ++k) {
    if (std::abs(m(k + 1, k)) > std::abs(m(k, k))) {
      m.row(k).tail(n - k).swap(m.row(k + 1).tail(n - k));
      std::swap(x(k), x(k + 1));
    }
    if (m(k, k) == Complex(0.0)) {
      return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    const Complex f = m(k + 1, k) / m(k, k);
    m.row(k + 1).tail(n - k - 1) -= f * m.row(k).tail(n - k - 1);
    m(k + 1, k) = 0.0;
    x(k + 1) -= f * x(k);
  }
  for (Index i = n - 1; i >= 0; --i) {
    Complex acc = x(i);
    for (Index j = i + 1; j < n; ++j) acc -= m(i, j) * x(j);
    if (m(i, i) == Complex(0.0)) {
      return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    x(i) = acc / m(i, i);
  }
  Complex g = d_;
  for (Index i = 0; i < n; ++i) g += c_(i) * x(i);
  return g;
}

std::vector<Complex> frequency_response_serial(const LtiSystem& sys, std::span<const double> omegas) {
  const FrequencyKernel kernel(sys);
  std::vector<Complex> out(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = kernel({0.0, omegas[i]});
  return out;
}

std::vector<Complex> frequency_response(const LtiSystem& sys, std::span<const double> omegas) {
  const FrequencyKernel kernel(sys);
  const auto count = static_cast<std::ptrdiff_t>(omegas.size());
  std::vector<Complex> out(omegas.size());
#pragma omp parallel for schedule(static) if (count > 256)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = kernel({0.0, omegas[i]});
  return out;
}

}  // namespace nistab
