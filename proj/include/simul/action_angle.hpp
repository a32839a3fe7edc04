#pragma once
/*
 * action_angle.hpp - global action-angle chart on the reduced space
 *
 *   P_* = { p : ⟨j|ψ⟩ ≠ 0 for every eigenvector |j⟩ of H }
 *
 * Writing ψ = Σ_j r_j e^{iθ_j} |j⟩ and singling out a reference index m,
 *
 *   chart_m(p) = ( e^{i(θ_j − θ_m)} , r_j² / Σ_k r_k² )   for j ≠ m,
 *
 * lands in T^{n−1} × (0,1)^{n−1}. Each angle coordinate whose frequency
 * differs from the reference is a periodic time function:
 *
 *   T_j(φ_τ(p)) = e^{−i(ν_j − ν_m)τ} T_j(p),   period 2π / |ν_j − ν_m|,
 *
 * the sign following from U(τ) = e^{−iHτ}.
 *
 * Indices are zero-based and follow the ascending eigenvalue order of
 * spectral_decompose. Chart slots run over the eigen-indices ≠ ref_index in
 * ascending order.
 */

#include <string>
#include <vector>

#include "simul/clock.hpp"
#include "simul/errors.hpp"
#include "simul/projective.hpp"
#include "simul/spectral.hpp"

namespace simul {

/// Polar form of a state in the energy eigenbasis.
struct EnergyBasisCoordinates {
  RVector moduli;  ///< r_j ≥ 0, Σ r_j² = 1
  RVector phases;  ///< θ_j ∈ [0, 2π)
};

struct ActionAngleChart {
  int ref_index = 0;
  std::vector<Complex> angles;  ///< e^{i(θ_j − θ_ref)}
  std::vector<double> actions;  ///< r_j², each in (0,1), sum < 1

  int dim() const noexcept { return static_cast<int>(angles.size()) + 1; }

  /// Eigen-index carried by chart slot `slot`.
  int index_of_slot(int slot) const {
    return slot < ref_index ? slot : slot + 1;
  }

  /// Chart slot carrying eigen-index `j` (j ≠ ref_index).
  int slot_of_index(int j) const { return j < ref_index ? j : j - 1; }
};

namespace detail {

inline void require_index(int j, Eigen::Index n, const char* what) {
  if (j < 0 || j >= n) {
    throw InvalidChart(std::string(what) + " " + std::to_string(j) +
                       " is not an eigen-index of a " + std::to_string(n) +
                       "-level system");
  }
}

}  // namespace detail

inline bool in_reduced_space(const PureState& p, const SpectralData& s,
                             double tol = tolerance::reduced_space) {
  detail::require_same_dim(s.dim(), p.dim(), "in_reduced_space");
  const CVector c = s.eigenbasis.adjoint() * p.vector();
  return c.cwiseAbs().minCoeff() > tol;
}

inline EnergyBasisCoordinates energy_coordinates(const PureState& p,
                                                 const SpectralData& s) {
  detail::require_same_dim(s.dim(), p.dim(), "energy_coordinates");
  const CVector c = s.eigenbasis.adjoint() * p.vector();
  EnergyBasisCoordinates out{RVector(c.size()), RVector(c.size())};
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    out.moduli(j) = std::abs(c(j));
    out.phases(j) = out.moduli(j) > 0 ? wrap_angle(std::arg(c(j))) : 0.0;
  }
  return out;
}

/// The action-angle chart relative to `ref_index`.
inline ActionAngleChart chart(const PureState& p, const SpectralData& s,
                              int ref_index,
                              double tol = tolerance::reduced_space) {
  detail::require_same_dim(s.dim(), p.dim(), "chart");
  detail::require_index(ref_index, s.dim(), "ref_index");
  const CVector c = s.eigenbasis.adjoint() * p.vector();
  if (c.cwiseAbs().minCoeff() <= tol) {
    throw NotInReducedSpace(
        "state has a vanishing component along an energy eigenvector");
  }
  const double total = c.squaredNorm();
  const Complex ref_phase = std::conj(c(ref_index)) / std::abs(c(ref_index));

  ActionAngleChart out;
  out.ref_index = ref_index;
  out.angles.reserve(static_cast<std::size_t>(c.size() - 1));
  out.actions.reserve(static_cast<std::size_t>(c.size() - 1));
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (j == ref_index) continue;
    out.angles.push_back(c(j) / std::abs(c(j)) * ref_phase);
    out.actions.push_back(std::norm(c(j)) / total);
  }
  return out;
}

/// Throws InvalidChart unless the chart lies in T^{n−1} × (0,1)^{n−1} with
/// actions summing below one.
inline void validate_chart(const ActionAngleChart& c, Eigen::Index n) {
  if (c.angles.size() != c.actions.size() ||
      static_cast<Eigen::Index>(c.angles.size()) + 1 != n) {
    throw InvalidChart("chart has " + std::to_string(c.angles.size()) +
                       " angles and " + std::to_string(c.actions.size()) +
                       " actions; expected " + std::to_string(n - 1) +
                       " of each");
  }
  detail::require_index(c.ref_index, n, "ref_index");
  double sum = 0.0;
  for (std::size_t k = 0; k < c.angles.size(); ++k) {
    if (!(std::abs(std::abs(c.angles[k]) - 1.0) < 1e-10)) {
      throw InvalidChart("angle " + std::to_string(k) + " is not unit modulus");
    }
    const double a = c.actions[k];
    if (!(a > 0.0 && a < 1.0)) {
      throw InvalidChart("action " + std::to_string(k) +
                         " lies outside the open interval (0,1)");
    }
    sum += a;
  }
  if (!(sum < 1.0)) throw InvalidChart("actions must sum to less than one");
}

/// Representative with θ_ref = 0 and r_ref = √(1 − Σ actions).
inline PureState chart_inverse(const ActionAngleChart& c,
                               const SpectralData& s) {
  validate_chart(c, s.dim());
  CVector coeffs(s.dim());
  double sum = 0.0;
  for (int slot = 0; slot < static_cast<int>(c.actions.size()); ++slot) {
    const std::size_t k = static_cast<std::size_t>(slot);
    coeffs(c.index_of_slot(slot)) =
        std::sqrt(c.actions[k]) * c.angles[k] / std::abs(c.angles[k]);
    sum += c.actions[k];
  }
  coeffs(c.ref_index) = Complex(std::sqrt(1.0 - sum), 0.0);
  return PureState(s.eigenbasis * coeffs);
}

/// ν_j − ν_ref, throwing DegenerateFrequency when the two share a level.
inline double relative_frequency(const SpectralData& s, int j, int ref_index) {
  detail::require_index(j, s.dim(), "time-function index");
  detail::require_index(ref_index, s.dim(), "ref_index");
  if (j == ref_index || s.same_level(j, ref_index)) {
    throw DegenerateFrequency("eigenvalues of indices " + std::to_string(j) +
                              " and " + std::to_string(ref_index) +
                              " coincide; the angle does not move");
  }
  return s.eigenvalues(j) - s.eigenvalues(ref_index);
}

/// T_j(p): the j-th torus coordinate of chart(p, ref_index).
inline TimeFunctionValue time_function(const PureState& p,
                                       const SpectralData& s, int j,
                                       int ref_index) {
  relative_frequency(s, j, ref_index);
  const ActionAngleChart c = chart(p, s, ref_index);
  return {c.angles[static_cast<std::size_t>(c.slot_of_index(j))]};
}

inline double time_function_period(const SpectralData& s, int j,
                                   int ref_index) {
  return kTwoPi / std::abs(relative_frequency(s, j, ref_index));
}

/// Eigen-indices j for which T_j relative to `ref_index` is a time function.
inline std::vector<int> admissible_indices(const SpectralData& s,
                                           int ref_index) {
  detail::require_index(ref_index, s.dim(), "ref_index");
  std::vector<int> out;
  for (int j = 0; j < s.dim(); ++j) {
    if (!s.same_level(j, ref_index)) out.push_back(j);
  }
  return out;
}

/// Re-expresses a chart relative to another reference index:
/// chart_to ∘ chart_from⁻¹.
inline ActionAngleChart intertwine(int from_ref, int to_ref,
                                   const ActionAngleChart& c,
                                   const SpectralData& s) {
  detail::require_index(from_ref, s.dim(), "from_ref");
  detail::require_index(to_ref, s.dim(), "to_ref");
  if (c.ref_index != from_ref) {
    throw InvalidChart("chart is expressed relative to index " +
                       std::to_string(c.ref_index) + ", not " +
                       std::to_string(from_ref));
  }
  if (from_ref == to_ref) {
    validate_chart(c, s.dim());
    return c;
  }
  return chart(chart_inverse(c, s), s, to_ref);
}

/// State-space intertwiner chart_to⁻¹ ∘ chart_from: reads the coordinates of
/// `p` in the `from_ref` chart and places the state with the same
/// coordinates in the `to_ref` chart. Slot-wise angles are pulled back:
/// angle slot k of chart(p, from_ref) equals angle slot k of
/// chart(result, to_ref).
inline PureState intertwine_state(int from_ref, int to_ref, const PureState& p,
                                  const SpectralData& s) {
  ActionAngleChart c = chart(p, s, from_ref);
  detail::require_index(to_ref, s.dim(), "to_ref");
  c.ref_index = to_ref;
  return chart_inverse(c, s);
}

}  // namespace simul
