#pragma once

// Random generators for property tests.  Every generator takes the engine by
// reference so a test's seed fixes its whole input stream.

#include <cmath>
#include <random>

#include "qcopy/measure.hpp"
#include "qcopy/qmath.hpp"
#include "qcopy/states.hpp"

namespace qcopy::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

inline CVector random_vector(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gaussian_complex(rng);
  return v;
}

inline Ket random_ket(Rng& rng, Dims dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  CVector v = random_vector(rng, static_cast<Eigen::Index>(n));
  return Ket(std::move(dims), v / v.norm());
}

// Haar-random qubit amplitudes.
inline PureInput random_pure(Rng& rng) {
  const CVector v = random_vector(rng, 2);
  const CVector u = v / v.norm();
  return PureInput(u(0), u(1));
}

// Real amplitudes cos(phi), sin(phi).
inline PureInput random_real_pure(Rng& rng) { return PureInput::from_angle(uniform(rng, 0.0, 2.0 * M_PI)); }

// Uniform in the Bloch ball.
inline MixedInput random_mixed(Rng& rng) {
  double x, y, z;
  do {
    x = uniform(rng, -1, 1);
    y = uniform(rng, -1, 1);
    z = uniform(rng, -1, 1);
  } while (x * x + y * y + z * z > 1.0);
  // rho = (I + x X + y Y + z Z)/2 = [[(1+z)/2, (x - i y)/2], [(x + i y)/2, (1-z)/2]]
  return MixedInput((1.0 + z) / 2.0, Complex(x, -y) / 2.0);
}

inline CMatrix random_hermitian(Rng& rng, Eigen::Index n) {
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = gaussian_complex(rng);
  }
  return 0.5 * (m + m.adjoint());
}

// G G^dagger / Tr, optionally rank-deficient.
inline DensityOperator random_density(Rng& rng, Dims dims, Eigen::Index rank = -1) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  const auto dim = static_cast<Eigen::Index>(n);
  if (rank < 0) rank = dim;
  CMatrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = gaussian_complex(rng);
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityOperator(std::move(dims), 0.5 * (rho + rho.adjoint()));
}

inline ProjectionSpec random_projection(Rng& rng) {
  const CVector v = random_vector(rng, 2);
  const CVector u = v / v.norm();
  return ProjectionSpec(u(0), u(1));
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qcopy::testing
