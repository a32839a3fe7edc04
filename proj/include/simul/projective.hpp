#pragma once
/*
 * projective.hpp - pure states as rays of C^n and the functions on them.
 *
 * Observables act through their expectation-value functions
 *   e_A(p) = ⟨ψ|A|ψ⟩ / ⟨ψ|ψ⟩,
 * and the Poisson bracket of two such functions is itself an expectation
 * value: {e_A, e_B} = e_{i[A,B]}. No Kähler tensor is ever materialized.
 */

#include <string>

#include "simul/errors.hpp"
#include "simul/spectral.hpp"
#include "simul/types.hpp"

namespace simul {

/// A ray of C^n, stored as a unit-norm representative. Every consumer of a
/// PureState is invariant under ψ → e^{iα}ψ.
class PureState {
 public:
  explicit PureState(CVector v) : vec_(std::move(v)) {
    if (vec_.size() == 0) throw Error("pure state needs at least one component");
    if (!vec_.allFinite()) throw Error("pure state has non-finite components");
    const double norm = vec_.norm();
    if (!(norm > 0.0)) throw Error("the zero vector does not define a ray");
    vec_ /= norm;
  }

  /// Convenience constructor for tests and small literals.
  PureState(std::initializer_list<Complex> components)
      : PureState(to_vector(components)) {}

  Eigen::Index dim() const noexcept { return vec_.size(); }
  const CVector& vector() const noexcept { return vec_; }

  PureState with_phase(double alpha) const {
    return PureState(vec_ * std::polar(1.0, alpha));
  }

 private:
  static CVector to_vector(std::initializer_list<Complex> c) {
    CVector v(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (const auto& z : c) v(i++) = z;
    return v;
  }

  CVector vec_;
};

/// An observable seen as the function e_A on the space of rays.
using ObservableFunction = HermitianOperator;

/// Gauge-fixed distance min_α ‖ψ1 − e^{iα}ψ2‖. Computed from the vector
/// difference, so it is accurate down to rounding near zero.
inline double ray_distance(const PureState& p1, const PureState& p2) {
  detail::require_same_dim(p1.dim(), p2.dim(), "ray_distance");
  const Complex overlap = p2.vector().dot(p1.vector());  // ⟨ψ2|ψ1⟩
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0 ? overlap / mag : Complex(1.0, 0.0);
  return (p1.vector() - phase * p2.vector()).norm();
}

/// |⟨ψ1|ψ2⟩| > 1 − tol.
inline bool ray_equal(const PureState& p1, const PureState& p2,
                      double tol = tolerance::ray) {
  detail::require_same_dim(p1.dim(), p2.dim(), "ray_equal");
  return std::abs(p1.vector().dot(p2.vector())) > 1.0 - tol;
}

inline double expectation(const ObservableFunction& a, const PureState& p) {
  detail::require_same_dim(a.dim(), p.dim(), "expectation");
  return p.vector().dot(a.matrix() * p.vector()).real();
}

/// {e_A, e_B}(p) = ⟨ψ| i(AB − BA) |ψ⟩ = −2 Im⟨Aψ|Bψ⟩.
inline double poisson_bracket(const ObservableFunction& a,
                              const ObservableFunction& b,
                              const PureState& p) {
  detail::require_same_dim(a.dim(), p.dim(), "poisson_bracket");
  detail::require_same_dim(b.dim(), p.dim(), "poisson_bracket");
  const CVector a_psi = a.matrix() * p.vector();
  const CVector b_psi = b.matrix() * p.vector();
  return -2.0 * a_psi.dot(b_psi).imag();
}

/// Exact flow φ_τ(p) = [U(τ)ψ].
inline PureState evolve(const SpectralData& s, const PureState& p, double tau) {
  detail::require_same_dim(s.dim(), p.dim(), "evolve");
  // Apply U(τ) = V e^{−iΛτ} V† without forming the n×n product.
  CVector coeffs = s.eigenbasis.adjoint() * p.vector();
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    coeffs(j) *= std::polar(1.0, -s.eigenvalues(j) * tau);
  }
  return PureState(s.eigenbasis * coeffs);
}

/// Eigenspace residual ‖Hψ − e_H(p)ψ‖ < tol.
inline bool is_fixed_point(const SpectralData& s, const PureState& p,
                           double tol = tolerance::fixed_point) {
  detail::require_same_dim(s.dim(), p.dim(), "is_fixed_point");
  const CVector coeffs = s.eigenbasis.adjoint() * p.vector();
  const double mean =
      (coeffs.cwiseAbs2().array() * s.eigenvalues.array()).sum();
  const CVector residual =
      ((s.eigenvalues.array() - mean).cast<Complex>() * coeffs.array())
          .matrix();
  return residual.norm() < tol;
}

}  // namespace simul
