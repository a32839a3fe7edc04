#include <gtest/gtest.h>

#include <numbers>

#include "simul/action_angle.hpp"
#include "simul/systems.hpp"
#include "support.hpp"

namespace simul {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

SpectralData diag(std::vector<double> v) {
  return spectral_decompose(HermitianOperator::diagonal(v));
}

double angle_gap(Complex a, Complex b) { return std::abs(a - b); }

TEST(ReducedSpace, Examples) {
  const auto s = diag({1.0, -1.0});
  EXPECT_TRUE(in_reduced_space(PureState{1.0, 1.0}, s));
  EXPECT_FALSE(in_reduced_space(PureState{1.0, 0.0}, s));
  EXPECT_FALSE(in_reduced_space(PureState{1.0, 1e-12}, s, 1e-9));
  EXPECT_THROW(in_reduced_space(PureState{1.0, 1.0, 1.0}, s), DimensionMismatch);
}

TEST(EnergyCoordinates, Examples) {
  const auto s3 = diag({0.0, 1.0, 3.0});
  const auto c = energy_coordinates(PureState{1.0, 0.0, 0.0}, s3);
  EXPECT_NEAR(c.moduli(0), 1.0, 1e-15);
  EXPECT_NEAR(c.moduli(1), 0.0, 1e-15);
  EXPECT_NEAR(c.phases(0), 0.0, 1e-15);

  const auto s = diag({-1.0, 1.0});
  const auto d = energy_coordinates(PureState{1.0, kI}, s);
  EXPECT_NEAR(d.moduli(0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d.moduli(1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d.phases(0), 0.0, 1e-15);
  EXPECT_NEAR(d.phases(1), kPi / 2, 1e-15);

  // A gauge shift moves every phase by α.
  const auto g = energy_coordinates(PureState{1.0, kI}.with_phase(0.4), s);
  EXPECT_NEAR(g.phases(0), 0.4, 1e-14);
  EXPECT_NEAR(g.phases(1), kPi / 2 + 0.4, 1e-14);
}

TEST(EnergyCoordinates, ReconstructsState) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 8; ++n) {
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = testing::random_state(n, rng);
    const auto c = energy_coordinates(p, s);
    EXPECT_NEAR(c.moduli.squaredNorm(), 1.0, 1e-12);
    CVector v = CVector::Zero(n);
    for (int j = 0; j < n; ++j) v += std::polar(c.moduli(j), c.phases(j)) * s.eigenbasis.col(j);
    EXPECT_TRUE(ray_equal(PureState(v), p, 1e-12));
    for (int j = 0; j < n; ++j) {
      EXPECT_GE(c.phases(j), 0.0);
      EXPECT_LT(c.phases(j), 2 * kPi);
    }
  }
}

TEST(Chart, SymmetricState) {
  const auto s = diag({0.0, 1.0, 3.0});
  const auto c = chart(PureState{1.0, 1.0, 1.0}, s, 2);
  ASSERT_EQ(c.angles.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    EXPECT_LT(angle_gap(c.angles[k], 1.0), 1e-15);
    EXPECT_NEAR(c.actions[k], 1.0 / 3.0, 1e-15);
  }
  EXPECT_TRUE(ray_equal(chart_inverse(c, s), PureState{1.0, 1.0, 1.0}, 1e-14));
}

TEST(Chart, PolarExample) {
  const auto s = diag({-1.0, 1.0});
  const auto c = chart(PureState{1.0, kI}, s, 1);
  EXPECT_LT(angle_gap(c.angles[0], -kI), 1e-15);
  EXPECT_NEAR(c.actions[0], 0.5, 1e-15);

  ActionAngleChart given{1, {-kI}, {0.5}};
  const PureState back = chart_inverse(given, s);
  EXPECT_TRUE(ray_equal(back, PureState{-kI, 1.0}, 1e-14));
  EXPECT_TRUE(ray_equal(back, PureState{1.0, kI}, 1e-14));
}

TEST(Chart, Errors) {
  const auto s = diag({-1.0, 1.0});
  EXPECT_THROW(chart(PureState{1.0, 0.0}, s, 1), NotInReducedSpace);
  EXPECT_THROW(chart(PureState{1.0, 1.0}, s, 2), InvalidChart);
  EXPECT_THROW(chart_inverse(ActionAngleChart{1, {1.0}, {0.0}}, s), InvalidChart);
  EXPECT_THROW(chart_inverse(ActionAngleChart{1, {1.0}, {1.0}}, s), InvalidChart);
  EXPECT_THROW(chart_inverse(ActionAngleChart{1, {2.0}, {0.5}}, s), InvalidChart);
  EXPECT_THROW(chart_inverse(ActionAngleChart{1, {1.0, 1.0}, {0.2, 0.2}}, s), InvalidChart);
  const auto s3 = diag({0.0, 1.0, 2.0});
  EXPECT_THROW(chart_inverse(ActionAngleChart{0, {1.0, 1.0}, {0.6, 0.5}}, s3), InvalidChart);
}

TEST(Chart, RoundTripsAndGauge) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> alpha(0.0, 2 * kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = random_reduced_state(s, rng);
    const int ref = trial % n;
    const auto c = chart(p, s, ref);
    double sum = 0;
    for (std::size_t k = 0; k < c.actions.size(); ++k) {
      EXPECT_NEAR(std::abs(c.angles[k]), 1.0, 1e-12);
      EXPECT_GT(c.actions[k], 0.0);
      EXPECT_LT(c.actions[k], 1.0);
      sum += c.actions[k];
    }
    EXPECT_LT(sum, 1.0);
    EXPECT_TRUE(ray_equal(chart_inverse(c, s), p, 1e-10));
    const auto c2 = chart(chart_inverse(c, s), s, ref);
    const auto cg = chart(p.with_phase(alpha(rng)), s, ref);
    for (std::size_t k = 0; k < c.actions.size(); ++k) {
      EXPECT_LT(angle_gap(c2.angles[k], c.angles[k]), 1e-10);
      EXPECT_NEAR(c2.actions[k], c.actions[k], 1e-10);
      EXPECT_LT(angle_gap(cg.angles[k], c.angles[k]), 1e-12);
      EXPECT_NEAR(cg.actions[k], c.actions[k], 1e-12);
    }
  }
}

TEST(TimeFunction, QubitExamples) {
  const auto s = diag({1.0, -1.0});  // ν_0 = −1 (|e_2⟩), ν_1 = 1 (|e_1⟩)
  const PureState plus{1.0, 1.0};
  EXPECT_LT(angle_gap(time_function(plus, s, 1, 0).value, 1.0), 1e-15);
  // Direct propagation: components pick up e^{−iπ/4}, e^{+iπ/4}.
  const PureState moved = evolve(s, plus, kPi / 4);
  EXPECT_LT(angle_gap(time_function(moved, s, 1, 0).value, -kI), 1e-15);

  const auto h = diag({-1.0, 1.0});
  EXPECT_LT(angle_gap(time_function(PureState{1.0, kI}, h, 0, 1).value, -kI), 1e-15);
}

TEST(TimeFunction, DegenerateAndExcluded) {
  const auto s = diag({1.0, 1.0, 2.0});
  EXPECT_THROW(time_function(PureState{1.0, 1.0, 1.0}, s, 0, 1), DegenerateFrequency);
  EXPECT_THROW(time_function(PureState{1.0, 1.0, 1.0}, s, 2, 2), DegenerateFrequency);
  EXPECT_THROW(time_function_period(s, 1, 0), DegenerateFrequency);
  EXPECT_NO_THROW(time_function(PureState{1.0, 1.0, 1.0}, s, 0, 2));
  EXPECT_THROW(time_function(PureState{1.0, 0.0, 1.0}, s, 0, 2), NotInReducedSpace);
  EXPECT_EQ(admissible_indices(s, 2), (std::vector<int>{0, 1}));
  EXPECT_EQ(admissible_indices(s, 0), (std::vector<int>{2}));
  EXPECT_TRUE(admissible_indices(spectral_decompose(HermitianOperator::identity(4)), 1).empty());
}

TEST(TimeFunction, Periods) {
  EXPECT_NEAR(time_function_period(diag({1.0, -1.0}), 1, 0), kPi, 1e-15);
  EXPECT_NEAR(time_function_period(diag({0.0, 1.0, 3.0}), 1, 2), kPi, 1e-15);
}

TEST(TimeFunction, EquivarianceAndActionInvariance) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = random_reduced_state(s, rng);
    const int ref = trial % n;
    const double tau = t(rng);
    const auto q = evolve(s, p, tau);
    for (int j : admissible_indices(s, ref)) {
      const Complex rot = std::polar(1.0, -relative_frequency(s, j, ref) * tau);
      EXPECT_LT(angle_gap(time_function(q, s, j, ref).value,
                          rot * time_function(p, s, j, ref).value),
                1e-8);
    }
    const auto a0 = chart(p, s, ref).actions;
    const auto a1 = chart(q, s, ref).actions;
    for (std::size_t k = 0; k < a0.size(); ++k) EXPECT_NEAR(a0[k], a1[k], 1e-10);
  }
}

TEST(TimeFunction, LevelSetsMoveTogether) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const int ref = n - 1;
    const int j = trial % (n - 1);
    auto c1 = chart(random_reduced_state(s, rng), s, ref);
    auto c2 = chart(random_reduced_state(s, rng), s, ref);
    c2.angles[static_cast<std::size_t>(j)] = c1.angles[static_cast<std::size_t>(j)];
    const auto p1 = chart_inverse(c1, s);
    const auto p2 = chart_inverse(c2, s);
    for (int m = 0; m < 5; ++m) {
      const double tau = t(rng);
      EXPECT_LT(angle_gap(time_function(evolve(s, p1, tau), s, j, ref).value,
                          time_function(evolve(s, p2, tau), s, j, ref).value),
                1e-8);
    }
  }
}

TEST(TimeFunction, InjectiveModuloPeriod) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  std::uniform_int_distribution<int> k(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = random_reduced_state(s, rng);
    const int ref = 0;
    for (int j : admissible_indices(s, ref)) {
      const double period = time_function_period(s, j, ref);
      const double t1 = t(rng);
      auto value = [&](double tau) { return time_function(evolve(s, p, tau), s, j, ref).value; };
      EXPECT_LT(angle_gap(value(t1), value(t1 + k(rng) * period)), 1e-8);
      const double t2 = t(rng);
      const double d = t2 - t1;
      const bool on_lattice = std::abs(d - std::round(d / period) * period) < 1e-6;
      EXPECT_EQ(angle_gap(value(t1), value(t2)) < 1e-8, on_lattice);
    }
  }
}

TEST(ReducedSpace, IndependentOfReference) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = testing::random_state(n, rng);
    const bool inside = in_reduced_space(p, s);
    for (int ref = 0; ref < n; ++ref) {
      bool chart_ok = true;
      try {
        chart(p, s, ref);
      } catch (const NotInReducedSpace&) {
        chart_ok = false;
      }
      EXPECT_EQ(chart_ok, inside);
    }
  }
}

TEST(Intertwine, QubitSwapsReference) {
  const auto s = diag({-1.0, 1.0});
  const ActionAngleChart c{1, {std::polar(1.0, 0.7)}, {0.3}};
  const auto d = intertwine(1, 0, c, s);
  EXPECT_EQ(d.ref_index, 0);
  EXPECT_LT(angle_gap(d.angles[0], std::polar(1.0, -0.7)), 1e-14);
  EXPECT_NEAR(d.actions[0], 0.7, 1e-14);
  const auto same = intertwine(1, 1, c, s);
  EXPECT_EQ(same.angles, c.angles);
  EXPECT_EQ(same.actions, c.actions);
  EXPECT_THROW(intertwine(0, 1, c, s), InvalidChart);
}

TEST(Intertwine, RoundTripAndPullback) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const auto s = spectral_decompose(testing::random_hermitian(n, rng));
    const auto p = random_reduced_state(s, rng);
    const int a = trial % n;
    const int b = (trial / 7) % n;
    const auto c = chart(p, s, a);
    const auto back = intertwine(b, a, intertwine(a, b, c, s), s);
    for (std::size_t k = 0; k < c.angles.size(); ++k) {
      EXPECT_LT(angle_gap(back.angles[k], c.angles[k]), 1e-10);
      EXPECT_NEAR(back.actions[k], c.actions[k], 1e-10);
    }
    // Slot-wise pullback through the state intertwiner.
    const auto moved = intertwine_state(a, b, p, s);
    const auto cm = chart(moved, s, b);
    for (std::size_t k = 0; k < c.angles.size(); ++k) {
      EXPECT_LT(angle_gap(cm.angles[k], c.angles[k]), 1e-10);
    }
    EXPECT_TRUE(ray_equal(intertwine_state(b, a, moved, s), p, 1e-10));
  }
}

}  // namespace
}  // namespace simul
