#pragma once
/*
 * classical.hpp - three canonical Hamiltonian systems with closed-form
 * flows and their time functions.
 *
 *   free particle      T = m (p·q) / p²           T(φ_τ x) = T(x) + τ
 *   constant force     T = (F·p) / F²             T(φ_τ x) = T(x) + τ
 *   harmonic osc.      T = e^{iϑ}                 T(φ_τ x) = e^{iντ} T(x)
 *
 * with ϑ = atan2(mνq, p) ∈ [0, 2π) and period 2π/ν.
 */

#include <string>
#include <variant>

#include "simul/clock.hpp"
#include "simul/errors.hpp"
#include "simul/types.hpp"

namespace simul {

/// Point (q, p) of T*R^d, d ∈ {1, 3}.
struct PhasePoint {
  RVector q;
  RVector p;

  Eigen::Index dim() const noexcept { return q.size(); }

  static PhasePoint one_d(double q, double p) {
    PhasePoint x{RVector(1), RVector(1)};
    x.q(0) = q;
    x.p(0) = p;
    return x;
  }

  static PhasePoint three_d(const Eigen::Vector3d& q, const Eigen::Vector3d& p) {
    return {q, p};
  }
};

struct FreeParticle {
  double mass = 1.0;
};

struct ConstantForce {
  double mass = 1.0;
  Eigen::Vector3d force = Eigen::Vector3d::UnitX();
};

struct HarmonicOscillator {
  double mass = 1.0;
  double frequency = 1.0;
};

using ClassicalSystem =
    std::variant<FreeParticle, ConstantForce, HarmonicOscillator>;

inline Eigen::Index dimension(const ClassicalSystem& sys) {
  return std::holds_alternative<HarmonicOscillator>(sys) ? 1 : 3;
}

inline std::string system_name(const ClassicalSystem& sys) {
  switch (sys.index()) {
    case 0: return "free";
    case 1: return "constant_force";
    default: return "harmonic";
  }
}

/// Throws simul::Error if a parameter is outside its physical range.
inline void validate(const ClassicalSystem& sys) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if (!(s.mass > 0.0) || !std::isfinite(s.mass)) {
          throw Error("mass must be positive and finite");
        }
        if constexpr (std::is_same_v<S, ConstantForce>) {
          if (!s.force.allFinite() || !(s.force.norm() > 0.0)) {
            throw Error("force must be a finite non-zero vector");
          }
        }
        if constexpr (std::is_same_v<S, HarmonicOscillator>) {
          if (!(s.frequency > 0.0) || !std::isfinite(s.frequency)) {
            throw Error("frequency must be positive and finite");
          }
        }
      },
      sys);
}

namespace detail {

inline void require_phase_dim(const ClassicalSystem& sys, const PhasePoint& x,
                              const char* what) {
  if (x.q.size() != x.p.size()) {
    throw DimensionMismatch(std::string(what) +
                            ": q and p have different lengths");
  }
  require_same_dim(dimension(sys), x.dim(), what);
}

}  // namespace detail

/// Hamiltonian. The constant-force potential is −F·q.
inline double energy(const ClassicalSystem& sys, const PhasePoint& x) {
  detail::require_phase_dim(sys, x, "energy");
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        const double kinetic = x.p.squaredNorm() / (2.0 * s.mass);
        if constexpr (std::is_same_v<S, FreeParticle>) {
          return kinetic;
        } else if constexpr (std::is_same_v<S, ConstantForce>) {
          return kinetic - s.force.dot(x.q);
        } else {
          return kinetic +
                 0.5 * s.mass * s.frequency * s.frequency * x.q.squaredNorm();
        }
      },
      sys);
}

/// Dynamical vector field Γ(x) = (q̇, ṗ).
inline PhasePoint vector_field(const ClassicalSystem& sys, const PhasePoint& x) {
  detail::require_phase_dim(sys, x, "vector_field");
  return std::visit(
      [&](const auto& s) -> PhasePoint {
        using S = std::decay_t<decltype(s)>;
        const RVector qdot = x.p / s.mass;
        if constexpr (std::is_same_v<S, FreeParticle>) {
          return {qdot, RVector::Zero(x.dim())};
        } else if constexpr (std::is_same_v<S, ConstantForce>) {
          return {qdot, s.force};
        } else {
          return {qdot, -s.mass * s.frequency * s.frequency * x.q};
        }
      },
      sys);
}

/// Closed-form flow φ_τ.
inline PhasePoint flow(const ClassicalSystem& sys, const PhasePoint& x,
                       double tau) {
  detail::require_phase_dim(sys, x, "flow");
  return std::visit(
      [&](const auto& s) -> PhasePoint {
        using S = std::decay_t<decltype(s)>;
        const double m = s.mass;
        if constexpr (std::is_same_v<S, FreeParticle>) {
          return {x.q + x.p * (tau / m), x.p};
        } else if constexpr (std::is_same_v<S, ConstantForce>) {
          return {x.q + x.p * (tau / m) + s.force * (tau * tau / (2.0 * m)),
                  x.p + s.force * tau};
        } else {
          const double nu = s.frequency;
          const double c = std::cos(nu * tau);
          const double sn = std::sin(nu * tau);
          return {x.q * c + x.p * (sn / (m * nu)),
                  x.p * c - x.q * (m * nu * sn)};
        }
      },
      sys);
}

/// Complement of the fixed-point set: always true under a constant force,
/// ‖p‖ > tol for the free particle, ‖(q,p)‖ > tol for the oscillator.
inline bool in_reduced_space_classical(const ClassicalSystem& sys,
                                       const PhasePoint& x,
                                       double tol = 1e-12) {
  if (std::holds_alternative<ConstantForce>(sys)) return true;
  if (std::holds_alternative<FreeParticle>(sys)) return x.p.norm() > tol;
  return std::hypot(x.q.norm(), x.p.norm()) > tol;
}

/// Angle ϑ ∈ [0, 2π) and energy H of an oscillator state.
struct OscillatorChart {
  double angle;
  double energy;
};

inline OscillatorChart ho_chart(const HarmonicOscillator& sys,
                                const PhasePoint& x) {
  const ClassicalSystem s = sys;
  detail::require_phase_dim(s, x, "ho_chart");
  if (!in_reduced_space_classical(s, x)) {
    throw NotInReducedSpace("the oscillator's origin has no angle");
  }
  const double angle =
      wrap_angle(std::atan2(sys.mass * sys.frequency * x.q(0), x.p(0)));
  return {angle, energy(s, x)};
}

/// Coefficients (∂ϑ/∂q, ∂ϑ/∂p) of the exact differential dϑ.
inline PhasePoint angle_differential(const HarmonicOscillator& sys,
                                     const PhasePoint& x) {
  const ClassicalSystem s = sys;
  detail::require_phase_dim(s, x, "angle_differential");
  if (!in_reduced_space_classical(s, x)) {
    throw NotInReducedSpace("dϑ is singular at the origin");
  }
  const double k = sys.mass * sys.frequency;
  const double y = k * x.q(0);
  const double r2 = x.p(0) * x.p(0) + y * y;
  return PhasePoint::one_d(k * x.p(0) / r2, -y / r2);
}

/// dϑ(Γ)(x): the angle one-form evaluated on the dynamical vector field.
inline double theta_pairing(const HarmonicOscillator& sys,
                            const PhasePoint& x) {
  const PhasePoint form = angle_differential(sys, x);
  const PhasePoint gamma = vector_field(ClassicalSystem{sys}, x);
  return form.q.dot(gamma.q) + form.p.dot(gamma.p);
}

/// Time function of the system: real-valued for the free particle and the
/// constant force, circle-valued for the oscillator.
inline ClockValue time_function_classical(const ClassicalSystem& sys,
                                          const PhasePoint& x) {
  detail::require_phase_dim(sys, x, "time_function_classical");
  if (!in_reduced_space_classical(sys, x)) {
    throw NotInReducedSpace("state is a fixed point of the flow");
  }
  return std::visit(
      [&](const auto& s) -> ClockValue {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FreeParticle>) {
          return s.mass * x.p.dot(x.q) / x.p.squaredNorm();
        } else if constexpr (std::is_same_v<S, ConstantForce>) {
          return s.force.dot(x.p) / s.force.squaredNorm();
        } else {
          // e^{iϑ} = (p + i mνq) / |p + i mνq|
          const Complex z(x.p(0), s.mass * s.frequency * x.q(0));
          return TimeFunctionValue{z / std::abs(z)};
        }
      },
      sys);
}

/// Period of the oscillator's circle-valued time function.
inline double ho_period(const HarmonicOscillator& sys) {
  return kTwoPi / sys.frequency;
}

/// Euclidean distance in phase space.
inline double phase_distance(const PhasePoint& a, const PhasePoint& b) {
  return std::hypot((a.q - b.q).norm(), (a.p - b.p).norm());
}

}  // namespace simul
