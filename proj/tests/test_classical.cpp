#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "simul/classical.hpp"
#include "simul/systems.hpp"

namespace simul {
namespace {

constexpr double kPi = std::numbers::pi;

PhasePoint p3(double qx, double qy, double qz, double px, double py, double pz) {
  return PhasePoint::three_d({qx, qy, qz}, {px, py, pz});
}

double unwrap(double d) {
  while (d > kPi) d -= 2 * kPi;
  while (d < -kPi) d += 2 * kPi;
  return d;
}

TEST(Flow, IdentityAtZero) {
  const PhasePoint x = p3(1, -2, 3, 0.5, 0.1, -4);
  for (ClassicalSystem sys : {ClassicalSystem{FreeParticle{2.0}},
                              ClassicalSystem{ConstantForce{1.5, {0.0, 2.0, 1.0}}}}) {
    const PhasePoint y = flow(sys, x, 0.0);
    EXPECT_EQ(y.q, x.q);
    EXPECT_EQ(y.p, x.p);
  }
  const PhasePoint h = PhasePoint::one_d(0.3, -0.7);
  const PhasePoint hy = flow(HarmonicOscillator{2.0, 3.0}, h, 0.0);
  EXPECT_EQ(hy.q, h.q);
  EXPECT_EQ(hy.p, h.p);
}

TEST(Flow, ConstantForceExample) {
  const PhasePoint y = flow(ConstantForce{1.0, {1.0, 0.0, 0.0}}, p3(0, 0, 0, 0, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(y.q(0), 0.5);
  EXPECT_DOUBLE_EQ(y.p(0), 1.0);
  EXPECT_DOUBLE_EQ(y.q(1), 0.0);
}

TEST(Flow, OscillatorQuarterTurn) {
  const PhasePoint y = flow(HarmonicOscillator{1.0, 1.0}, PhasePoint::one_d(1.0, 0.0), kPi / 2);
  EXPECT_NEAR(y.q(0), 0.0, 1e-15);
  EXPECT_NEAR(y.p(0), -1.0, 1e-15);
}

TEST(Flow, DimensionMismatch) {
  EXPECT_THROW(flow(FreeParticle{}, PhasePoint::one_d(0, 1), 1.0), DimensionMismatch);
  EXPECT_THROW(flow(HarmonicOscillator{}, p3(0, 0, 0, 1, 0, 0), 1.0), DimensionMismatch);
}

TEST(Flow, GroupLawAndEnergy) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  const std::vector<ClassicalSystem> systems{FreeParticle{0.7}, ConstantForce{2.0, {1.0, -0.5, 0.3}},
                                             HarmonicOscillator{1.3, 2.2}};
  for (const auto& sys : systems) {
    for (int trial = 0; trial < 200; ++trial) {
      const PhasePoint x = random_phase_point(sys, rng);
      const double a = t(rng), b = t(rng);
      const PhasePoint lhs = flow(sys, flow(sys, x, a), b);
      const PhasePoint rhs = flow(sys, x, a + b);
      EXPECT_LT(phase_distance(lhs, rhs), 1e-9 * (1 + rhs.q.norm() + rhs.p.norm()));
      const double e0 = energy(sys, x);
      EXPECT_NEAR(energy(sys, flow(sys, x, a)), e0, 1e-12 * std::max(1.0, std::abs(e0)) * 100);
    }
  }
}

TEST(Flow, OscillatorEnergyTight) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  const HarmonicOscillator ho{1.0, 1.0};
  for (int trial = 0; trial < 500; ++trial) {
    const PhasePoint x = PhasePoint::one_d(std::uniform_real_distribution<double>(-1, 1)(rng),
                                           std::uniform_real_distribution<double>(-1, 1)(rng));
    EXPECT_NEAR(energy(ho, flow(ho, x, t(rng))), energy(ho, x), 1e-12);
  }
}

TEST(ClassicalTimeFunction, Examples) {
  EXPECT_DOUBLE_EQ(std::get<double>(time_function_classical(FreeParticle{1.0}, p3(2, 0, 0, 1, 0, 0))), 2.0);
  EXPECT_DOUBLE_EQ(
      std::get<double>(time_function_classical(ConstantForce{1.0, {1.0, 0, 0}}, p3(0, 0, 0, 3, 0, 0))),
      3.0);
  EXPECT_THROW(time_function_classical(FreeParticle{1.0}, p3(1, 2, 3, 0, 0, 0)), NotInReducedSpace);
  EXPECT_THROW(time_function_classical(HarmonicOscillator{}, PhasePoint::one_d(0, 0)), NotInReducedSpace);
}

TEST(ClassicalTimeFunction, ClockLaws) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> t(-100.0, 100.0);
  for (ClassicalSystem sys : {ClassicalSystem{FreeParticle{1.7}},
                              ClassicalSystem{ConstantForce{0.9, {0.2, 1.0, -2.0}}}}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const PhasePoint x = random_phase_point(sys, rng);
      const double tau = t(rng);
      const double t0 = std::get<double>(time_function_classical(sys, x));
      const double t1 = std::get<double>(time_function_classical(sys, flow(sys, x, tau)));
      EXPECT_NEAR(t1 - t0 - tau, 0.0, 1e-12);
      EXPECT_NE(t1, t0);
    }
  }
  const HarmonicOscillator ho{0.8, 3.0};
  for (int trial = 0; trial < 1000; ++trial) {
    const PhasePoint x = random_phase_point(ho, rng);
    const double tau = t(rng);
    const auto z0 = std::get<TimeFunctionValue>(time_function_classical(ho, x)).value;
    const auto z1 = std::get<TimeFunctionValue>(time_function_classical(ho, flow(ho, x, tau))).value;
    EXPECT_LT(std::abs(z1 - std::polar(1.0, ho.frequency * tau) * z0), 1e-12);
  }
}

TEST(ReducedSpaceClassical, Examples) {
  EXPECT_TRUE(in_reduced_space_classical(ConstantForce{}, p3(0, 0, 0, 0, 0, 0)));
  EXPECT_FALSE(in_reduced_space_classical(FreeParticle{}, p3(1, 1, 1, 0, 0, 0)));
  EXPECT_TRUE(in_reduced_space_classical(FreeParticle{}, p3(0, 0, 0, 0, 1e-3, 0)));
  EXPECT_FALSE(in_reduced_space_classical(HarmonicOscillator{}, PhasePoint::one_d(0, 0)));
  EXPECT_TRUE(in_reduced_space_classical(HarmonicOscillator{}, PhasePoint::one_d(0, 1e-6)));
}

TEST(HoChart, Examples) {
  const HarmonicOscillator ho{1.0, 1.0};
  const auto a = ho_chart(ho, PhasePoint::one_d(0.0, 1.0));
  EXPECT_DOUBLE_EQ(a.angle, 0.0);
  EXPECT_DOUBLE_EQ(a.energy, 0.5);
  const auto b = ho_chart(ho, PhasePoint::one_d(1.0, 0.0));
  EXPECT_DOUBLE_EQ(b.angle, kPi / 2);
  EXPECT_DOUBLE_EQ(b.energy, 0.5);
  EXPECT_THROW(ho_chart(ho, PhasePoint::one_d(0.0, 0.0)), NotInReducedSpace);
  // Third and fourth quadrants land in [π, 2π).
  EXPECT_NEAR(ho_chart(ho, PhasePoint::one_d(0.0, -1.0)).angle, kPi, 1e-15);
  EXPECT_NEAR(ho_chart(ho, PhasePoint::one_d(-1.0, 0.0)).angle, 3 * kPi / 2, 1e-15);
}

TEST(HoChart, AngleAdvancesAtFrequency) {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> t(-30.0, 30.0);
  for (double nu : {0.5, 1.0, 3.0}) {
    const HarmonicOscillator ho{1.4, nu};
    for (int trial = 0; trial < 200; ++trial) {
      const PhasePoint x = random_phase_point(ho, rng);
      const double tau = t(rng);
      const auto c0 = ho_chart(ho, x);
      const auto c1 = ho_chart(ho, flow(ho, x, tau));
      EXPECT_NEAR(unwrap(c1.angle - c0.angle - nu * tau), 0.0, 1e-9);
      EXPECT_NEAR(c1.energy, c0.energy, 1e-12 * std::max(1.0, c0.energy));
      const double h = 1e-6;
      const double rate = unwrap(ho_chart(ho, flow(ho, x, h)).angle - c0.angle) / h;
      EXPECT_NEAR(rate, nu, 1e-5);
    }
  }
}

TEST(HoChart, RadialLeavesStayAligned) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> scale(0.1, 10.0), t(-20.0, 20.0);
  const HarmonicOscillator ho{2.0, 1.5};
  for (int trial = 0; trial < 200; ++trial) {
    const PhasePoint x = random_phase_point(ho, rng);
    const double k = scale(rng);
    const PhasePoint y{x.q * k, x.p * k};
    ASSERT_NEAR(ho_chart(ho, x).angle, ho_chart(ho, y).angle, 1e-12);
    EXPECT_GT(std::abs(energy(ho, x) - energy(ho, y)), 0.0);
    const double tau = t(rng);
    EXPECT_NEAR(unwrap(ho_chart(ho, flow(ho, x, tau)).angle - ho_chart(ho, flow(ho, y, tau)).angle), 0.0,
                1e-12);
  }
}

TEST(ThetaPairing, EqualsFrequency) {
  EXPECT_NEAR(theta_pairing(HarmonicOscillator{1.0, 1.0}, PhasePoint::one_d(0.0, 1.0)), 1.0, 1e-15);
  std::mt19937_64 rng(97);
  for (double nu : {0.5, 1.0, 3.0}) {
    const HarmonicOscillator ho{0.6, nu};
    for (int trial = 0; trial < 200; ++trial) {
      const PhasePoint x = random_phase_point(ho, rng);
      EXPECT_NEAR(theta_pairing(ho, x), nu, 1e-12);
      const PhasePoint x2{2.0 * x.q, 2.0 * x.p};
      EXPECT_NEAR(theta_pairing(ho, x2), theta_pairing(ho, x), 1e-12);
    }
  }
  EXPECT_THROW(theta_pairing(HarmonicOscillator{}, PhasePoint::one_d(0, 0)), NotInReducedSpace);
}

TEST(ThetaPairing, DifferentialMatchesFiniteDifferences) {
  std::mt19937_64 rng(101);
  const HarmonicOscillator ho{1.3, 2.0};
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const PhasePoint x = random_phase_point(ho, rng);
    const PhasePoint d = angle_differential(ho, x);
    const double a0 = ho_chart(ho, x).angle;
    const double dq = unwrap(ho_chart(ho, PhasePoint::one_d(x.q(0) + h, x.p(0))).angle - a0) / h;
    const double dp = unwrap(ho_chart(ho, PhasePoint::one_d(x.q(0), x.p(0) + h)).angle - a0) / h;
    EXPECT_NEAR(d.q(0), dq, 1e-4 * std::max(1.0, std::abs(dq)));
    EXPECT_NEAR(d.p(0), dp, 1e-4 * std::max(1.0, std::abs(dp)));
  }
}

TEST(Validate, RejectsBadParameters) {
  EXPECT_THROW(validate(FreeParticle{0.0}), Error);
  EXPECT_THROW(validate(ConstantForce{1.0, Eigen::Vector3d::Zero()}), Error);
  EXPECT_THROW(validate(HarmonicOscillator{1.0, -1.0}), Error);
  EXPECT_NO_THROW(validate(HarmonicOscillator{1.0, 2.0}));
}

}  // namespace
}  // namespace simul
