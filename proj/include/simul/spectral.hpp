#pragma once
/*
 * spectral.hpp - Hermitian operators, their spectral decomposition and the
 * exact unitary propagator built from it.
 *
 *   A = Σ_j ν_j E_j,        E_j = |j⟩⟨j|,       ν_1 ≤ … ≤ ν_n
 *   U(τ) = Σ_j e^{−iν_jτ} E_j                  (ħ = 1)
 *
 * The eigenbasis is made deterministic: each eigenvector has its first
 * largest-magnitude component rotated onto the positive real axis, and
 * vectors inside a degenerate eigenspace are ordered lexicographically
 * (descending) on their (re, im) components.
 */

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "simul/errors.hpp"
#include "simul/types.hpp"

namespace simul {

/// A validated square complex matrix equal to its conjugate transpose.
class HermitianOperator {
 public:
  /// Throws NotHermitian if the matrix is not square, has non-finite
  /// entries, or differs from its adjoint by more than `tol` in any entry.
  explicit HermitianOperator(CMatrix entries,
                             double tol = tolerance::hermitian)
      : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
      throw NotHermitian("operator must be a non-empty square matrix, got " +
                         std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()));
    }
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex a = entries_(i, k);
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
          throw NotHermitian("non-finite entry at (" + std::to_string(i) +
                             "," + std::to_string(k) + ")");
        }
        if (std::abs(a - std::conj(entries_(k, i))) > tol) {
          throw NotHermitian("entry (" + std::to_string(i) + "," +
                             std::to_string(k) +
                             ") differs from the conjugate of its transpose");
        }
      }
    }
  }

  static HermitianOperator identity(Eigen::Index n) {
    return HermitianOperator(CMatrix::Identity(n, n));
  }

  static HermitianOperator diagonal(const std::vector<double>& values) {
    RVector d = Eigen::Map<const RVector>(values.data(),
                                          static_cast<Eigen::Index>(values.size()));
    return HermitianOperator(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }

 private:
  CMatrix entries_;
};

/// Eigenvalues, orthonormal eigenbasis (columns) and the partition of
/// indices into degeneracy classes.
struct SpectralData {
  RVector eigenvalues;
  CMatrix eigenbasis;
  std::vector<std::vector<int>> degeneracy_classes;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  /// Column |j⟩ of the eigenbasis.
  auto ket(int j) const { return eigenbasis.col(j); }

  int class_of(int j) const {
    for (std::size_t c = 0; c < degeneracy_classes.size(); ++c) {
      const auto& cls = degeneracy_classes[c];
      if (std::find(cls.begin(), cls.end(), j) != cls.end()) {
        return static_cast<int>(c);
      }
    }
    throw std::out_of_range("eigen-index " + std::to_string(j) +
                            " out of range");
  }

  bool same_level(int j, int k) const { return class_of(j) == class_of(k); }

  /// True iff the operator has at least two distinct eigenvalues.
  bool has_dynamics() const noexcept { return degeneracy_classes.size() > 1; }
};

namespace detail {

inline void fix_phase(Eigen::Ref<CVector> v) {
  const double top = v.cwiseAbs().maxCoeff();
  Eigen::Index k = 0;
  while (std::abs(v(k)) < top * (1.0 - 1e-12)) ++k;
  const Complex a = v(k);
  v *= std::conj(a) / std::abs(a);
  v(k) = Complex(std::abs(v(k)), 0.0);
}

// Strict "greater than" on the (re, im, re, im, ...) sequence.
inline bool lex_greater(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() > b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() > b(i).imag();
  }
  return false;
}

}  // namespace detail

/// Spectral decomposition with deterministic ordering and phases.
inline SpectralData spectral_decompose(const HermitianOperator& a,
                                       double gap_tol = tolerance::spectral_gap) {
  const Eigen::Index n = a.dim();
  // The solver reads one triangle only; feed it the exact Hermitian part.
  const CMatrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  RVector values = solver.eigenvalues();
  CMatrix vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) detail::fix_phase(vectors.col(j));

  // Eigen returns ascending eigenvalues; group neighbours within the gap.
  const double scale = values.cwiseAbs().maxCoeff();
  std::vector<std::vector<int>> classes;
  for (int j = 0; j < n; ++j) {
    if (j == 0 || values(j) - values(j - 1) > gap_tol * scale) {
      classes.emplace_back();
    }
    classes.back().push_back(j);
  }

  SpectralData out;
  out.eigenvalues.resize(n);
  out.eigenbasis.resize(n, n);
  for (auto& cls : classes) {
    std::vector<int> order = cls;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return detail::lex_greater(vectors.col(x), vectors.col(y));
    });
    for (std::size_t i = 0; i < cls.size(); ++i) {
      out.eigenvalues(cls[i]) = values(order[i]);
      out.eigenbasis.col(cls[i]) = vectors.col(order[i]);
    }
  }
  out.degeneracy_classes = std::move(classes);
  return out;
}

/// Rank-one eigenprojectors E_j = |j⟩⟨j|.
inline std::vector<HermitianOperator> projectors(const SpectralData& s) {
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(s.dim()));
  for (Eigen::Index j = 0; j < s.dim(); ++j) {
    const CVector v = s.eigenbasis.col(j);
    out.emplace_back(v * v.adjoint());
  }
  return out;
}

/// Σ_j ν_j E_j.
inline CMatrix reconstruct(const SpectralData& s) {
  return s.eigenbasis * s.eigenvalues.cast<Complex>().asDiagonal() *
         s.eigenbasis.adjoint();
}

/// U(τ) = Σ_j e^{−iν_jτ} E_j.
inline CMatrix propagator(const SpectralData& s, double tau) {
  CVector phases(s.dim());
  for (Eigen::Index j = 0; j < s.dim(); ++j) {
    phases(j) = std::polar(1.0, -s.eigenvalues(j) * tau);
  }
  return s.eigenbasis * phases.asDiagonal() * s.eigenbasis.adjoint();
}

}  // namespace simul
