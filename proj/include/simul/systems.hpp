#pragma once
/*
 * systems.hpp - ready-made flow and time-function handles for the quantum
 * and classical systems, plus reduced-space samplers.
 */

#include <string>
#include <vector>

#include "simul/action_angle.hpp"
#include "simul/classical.hpp"
#include "simul/simultaneity.hpp"

namespace simul {

// ---------------------------------------------------------------- quantum

/// State with every eigen-component bounded away from zero: squared moduli
/// proportional to U(0.02, 1) draws, phases uniform.
inline PureState random_reduced_state(const SpectralData& s, Rng& rng) {
  std::uniform_real_distribution<double> weight(0.02, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  RVector w(s.dim());
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = weight(rng);
  w /= w.sum();
  CVector c(s.dim());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    c(j) = std::polar(std::sqrt(w(j)), phase(rng));
  }
  return PureState(s.eigenbasis * c);
}

inline std::vector<double> encode_state(const PureState& p) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * p.dim()));
  for (Eigen::Index k = 0; k < p.dim(); ++k) out.push_back(p.vector()(k).real());
  for (Eigen::Index k = 0; k < p.dim(); ++k) out.push_back(p.vector()(k).imag());
  return out;
}

inline FlowHandle<PureState> quantum_flow(const SpectralData& s) {
  return {
      [s](const PureState& p, double tau) { return evolve(s, p, tau); },
      [s](const PureState& p) { return in_reduced_space(p, s); },
      [](const PureState& a, const PureState& b) { return ray_distance(a, b); },
      [s](Rng& rng) { return random_reduced_state(s, rng); },
      [](const PureState& p) { return encode_state(p); },
  };
}

/// T_j relative to `ref_index`. Level partners share the j-th angle and
/// draw every other chart coordinate afresh.
inline TimeFunctionHandle<PureState> quantum_time_function(
    const SpectralData& s, int j, int ref_index) {
  const double period = time_function_period(s, j, ref_index);
  TimeFunctionHandle<PureState> t;
  t.name = "T_" + std::to_string(j) + " (ref " + std::to_string(ref_index) + ")";
  t.evaluate = [s, j, ref_index](const PureState& p) -> ClockValue {
    return time_function(p, s, j, ref_index);
  };
  t.period = period;
  t.level_partner = [s, j, ref_index](const PureState& p, Rng& rng) {
    ActionAngleChart c = chart(p, s, ref_index);
    const PureState fresh = random_reduced_state(s, rng);
    ActionAngleChart other = chart(fresh, s, ref_index);
    const auto keep = static_cast<std::size_t>(c.slot_of_index(j));
    other.angles[keep] = c.angles[keep];
    return chart_inverse(other, s);
  };
  return t;
}

/// The constant of motion e_j posed as a (failing) time-function candidate.
/// Level partners keep all actions and redraw the angles.
inline TimeFunctionHandle<PureState> quantum_population_candidate(
    const SpectralData& s, int j) {
  const std::vector<HermitianOperator> e = projectors(s);
  const HermitianOperator ej = e.at(static_cast<std::size_t>(j));
  TimeFunctionHandle<PureState> t;
  t.name = "e_" + std::to_string(j);
  t.evaluate = [ej](const PureState& p) -> ClockValue { return expectation(ej, p); };
  t.level_partner = [s](const PureState& p, Rng& rng) {
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    CVector c = s.eigenbasis.adjoint() * p.vector();
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, phase(rng));
    return PureState(s.eigenbasis * c);
  };
  return t;
}

// -------------------------------------------------------------- classical

namespace detail {

inline RVector uniform_vector(Eigen::Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  RVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = u(rng);
  return v;
}

/// Component of a random vector orthogonal to `axis`.
inline RVector random_orthogonal(const RVector& axis, double scale, Rng& rng) {
  RVector w = uniform_vector(axis.size(), -scale, scale, rng);
  return w - axis * (axis.dot(w) / axis.squaredNorm());
}

}  // namespace detail

/// Samples of the reduced space: positions in [−10,10]^d, free-particle
/// momenta with 0.5 ≤ ‖p‖, oscillator radii bounded away from the origin.
inline PhasePoint random_phase_point(const ClassicalSystem& sys, Rng& rng) {
  const Eigen::Index d = dimension(sys);
  PhasePoint x{detail::uniform_vector(d, -10.0, 10.0, rng),
               detail::uniform_vector(d, -5.0, 5.0, rng)};
  if (std::holds_alternative<FreeParticle>(sys)) {
    std::uniform_real_distribution<double> mag(0.5, 5.0);
    x.p = x.p.normalized() * mag(rng);
  } else if (std::holds_alternative<HarmonicOscillator>(sys)) {
    if (x.p.norm() + x.q.norm() < 0.1) x.p(0) = 1.0;
  }
  return x;
}

inline std::vector<double> encode_point(const PhasePoint& x) {
  std::vector<double> out(x.q.data(), x.q.data() + x.q.size());
  out.insert(out.end(), x.p.data(), x.p.data() + x.p.size());
  return out;
}

inline FlowHandle<PhasePoint> classical_flow(const ClassicalSystem& sys) {
  return {
      [sys](const PhasePoint& x, double tau) { return flow(sys, x, tau); },
      [sys](const PhasePoint& x) { return in_reduced_space_classical(sys, x); },
      [](const PhasePoint& a, const PhasePoint& b) { return phase_distance(a, b); },
      [sys](Rng& rng) { return random_phase_point(sys, rng); },
      [](const PhasePoint& x) { return encode_point(x); },
  };
}

/// Another point on the level set of the system's own time function.
inline PhasePoint classical_level_partner(const ClassicalSystem& sys,
                                          const PhasePoint& x, Rng& rng) {
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  if (const auto* fp = std::get_if<FreeParticle>(&sys)) {
    // m p·q / p² = t  ⇔  q = (t/m) p + w with w ⊥ p.
    const double t = std::get<double>(time_function_classical(sys, x));
    PhasePoint y = random_phase_point(sys, rng);
    y.q = y.p * (t / fp->mass) + detail::random_orthogonal(y.p, 10.0, rng);
    return y;
  }
  if (const auto* cf = std::get_if<ConstantForce>(&sys)) {
    // F·p / F² = t  ⇔  p = tF + w with w ⊥ F.
    const double t = std::get<double>(time_function_classical(sys, x));
    const RVector force = cf->force;
    PhasePoint y = random_phase_point(sys, rng);
    y.p = force * t + detail::random_orthogonal(force, 5.0, rng);
    return y;
  }
  // Oscillator leaves are open rays from the origin.
  const double k = scale(rng);
  return {x.q * k, x.p * k};
}

inline TimeFunctionHandle<PhasePoint> classical_time_function(
    const ClassicalSystem& sys) {
  TimeFunctionHandle<PhasePoint> t;
  t.name = "T[" + system_name(sys) + "]";
  t.evaluate = [sys](const PhasePoint& x) { return time_function_classical(sys, x); };
  if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) t.period = ho_period(*ho);
  t.level_partner = [sys](const PhasePoint& x, Rng& rng) {
    return classical_level_partner(sys, x, rng);
  };
  return t;
}

/// A constant of motion posed as a time-function candidate: ‖p‖ for the
/// free particle, the energy otherwise.
inline TimeFunctionHandle<PhasePoint> classical_constant_candidate(
    const ClassicalSystem& sys) {
  TimeFunctionHandle<PhasePoint> t;
  const bool free = std::holds_alternative<FreeParticle>(sys);
  t.name = free ? "|p|" : "H[" + system_name(sys) + "]";
  t.evaluate = [sys, free](const PhasePoint& x) -> ClockValue {
    return free ? x.p.norm() : energy(sys, x);
  };
  if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) t.period = ho_period(*ho);
  t.level_partner = [sys](const PhasePoint& x, Rng& rng) {
    PhasePoint y = x;
    if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) {
      // Same energy ellipse, different phase.
      std::uniform_real_distribution<double> tau(0.1, 0.9);
      return flow(sys, x, tau(rng) * ho_period(*ho));
    }
    if (const auto* cf = std::get_if<ConstantForce>(&sys)) {
      y.q += detail::random_orthogonal(RVector(cf->force), 5.0, rng);
      return y;
    }
    y.q += detail::uniform_vector(y.q.size(), -5.0, 5.0, rng);
    return y;
  };
  return t;
}

}  // namespace simul
