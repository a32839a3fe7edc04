#pragma once
// Test-only generators and independent oracles.

#include <random>

#include "simul/spectral.hpp"
#include "simul/projective.hpp"

namespace simul::testing {

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// (G + G†)/2 with standard complex Gaussian G, redrawn until every
/// eigenvalue gap is at least `min_gap`.
inline HermitianOperator random_hermitian(int n, std::mt19937_64& rng,
                                          double min_gap = 0.05) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) a(i, k) = Complex(g(rng), g(rng));
    CMatrix h = 0.5 * (a + a.adjoint());
    RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvalues();
    bool ok = true;
    for (int j = 1; j < n; ++j) ok = ok && ev(j) - ev(j - 1) >= min_gap;
    if (ok) return HermitianOperator(h);
  }
}

/// Hermitian matrix without any gap requirement.
inline HermitianOperator random_hermitian_any(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = Complex(g(rng), g(rng));
  return HermitianOperator(CMatrix(0.5 * (a + a.adjoint())));
}

inline PureState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(g(rng), g(rng));
  return PureState(v);
}

/// exp(−iHτ) by scaling and squaring of a truncated Taylor series.
/// Shares nothing with the spectral route.
inline CMatrix oracle_propagator(const CMatrix& h, double tau) {
  CMatrix m = Complex(0.0, -tau) * h;
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  m /= std::ldexp(1.0, squarings);
  const auto n = h.rows();
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Pauli matrices.
inline CMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline CMatrix sigma_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline CMatrix sigma_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace simul::testing
