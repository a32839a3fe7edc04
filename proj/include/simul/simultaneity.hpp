#pragma once
/*
 * simultaneity.hpp - system-agnostic checks of the time-function axioms.
 *
 * A candidate T is a time function for a flow φ when
 *   (1) T(φ_τ p) ≠ T(p) for every τ ≠ 0
 *       (periodic case: T(φ_τ1 p) = T(φ_τ2 p) iff τ2 − τ1 ∈ τ_T·Z), and
 *   (2) T(p1) = T(p2)  ⇒  T(φ_τ p1) = T(φ_τ p2).
 *
 * Both are universally quantified over a continuum, so the verifier samples:
 * it certifies "no counterexample at tolerance", never a proof. Every sample
 * draws its states from its own seed, which makes reports independent of
 * evaluation order and lets any counterexample be replayed in isolation.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "simul/clock.hpp"
#include "simul/errors.hpp"

namespace simul {

using Rng = std::mt19937_64;

/// splitmix64 finalizer applied to (seed, index).
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class State>
struct FlowHandle {
  std::function<State(const State&, double)> evolve;
  std::function<bool(const State&)> in_reduced_space;
  /// Metric on states, used for fixed-point and return detection.
  std::function<double(const State&, const State&)> distance;
  /// Draws a state from the reduced space.
  std::function<State(Rng&)> sample;
  /// Flattens a state for reports. Optional.
  std::function<std::vector<double>(const State&)> encode;
};

template <class State>
struct TimeFunctionHandle {
  std::string name;
  std::function<ClockValue(const State&)> evaluate;
  /// Period τ_T of a circle-valued candidate.
  std::optional<double> period;
  /// Produces another state on the level set of its argument. Optional;
  /// without it level sets are found by matching values in a sample pool.
  std::function<State(const State&, Rng&)> level_partner;
};

enum class OrbitKind { Fixed, Periodic, NonPeriodicUpToHorizon };

struct OrbitClass {
  OrbitKind kind = OrbitKind::NonPeriodicUpToHorizon;
  double period = 0.0;  ///< set when kind == Periodic
};

inline std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Fixed: return "fixed";
    case OrbitKind::Periodic: return "periodic";
    default: return "non_periodic_up_to_horizon";
  }
}

struct Counterexample {
  int condition = 1;
  std::uint64_t sample_index = 0;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_second = 0;  ///< partner seed (condition 2 only)
  double tau1 = 0.0;
  double tau2 = 0.0;
  /// Clock distance observed at the offending times.
  double observed = 0.0;
  /// True when the two values should have coincided, false when they
  /// should have differed.
  bool expected_equal = false;
  std::vector<double> state;
  std::vector<double> partner;
};

struct ConditionResult {
  bool passed = true;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// First few violations, ordered by sample index.
  std::vector<Counterexample> counterexamples;
};

struct VerificationTolerances {
  double value = 1e-8;       ///< clock-distance threshold
  double level_set = 1e-9;   ///< max |T(x1) − T(x2)| for level-set pairs
  double period_guard = 1e-6;  ///< |Δτ − kτ_T| below which a pair is skipped
};

struct VerificationReport {
  std::string time_function;
  bool periodic = false;
  std::optional<double> period;
  ConditionResult condition_1;
  ConditionResult condition_2;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  VerificationTolerances tolerances;
  /// Largest group-law defect d(φ_a φ_b x, φ_{a+b} x) seen while sampling.
  double group_law_defect = 0.0;

  bool passed() const { return condition_1.passed && condition_2.passed; }
};

template <class State>
struct LevelSetPair {
  State first;
  State second;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_second = 0;
};

namespace detail {

inline constexpr std::size_t kMaxStoredCounterexamples = 16;
inline constexpr int kPartnerAttempts = 8;

inline void record(ConditionResult& r, Counterexample cx) {
  r.passed = false;
  ++r.violations;
  if (r.counterexamples.size() < kMaxStoredCounterexamples) {
    r.counterexamples.push_back(std::move(cx));
  }
}

/// Stratified grid over [−h, h] plus uniform draws; |τ| ≤ min_abs skipped.
inline std::vector<double> time_samples(std::size_t n, double horizon,
                                        Rng& rng, double min_abs) {
  std::vector<double> out;
  const std::size_t grid = n / 2;
  for (std::size_t k = 0; k < grid; ++k) {
    const double tau =
        -horizon + (static_cast<double>(k) + 0.5) * 2.0 * horizon /
                       static_cast<double>(grid);
    if (std::abs(tau) > min_abs) out.push_back(tau);
  }
  std::uniform_real_distribution<double> u(-horizon, horizon);
  while (out.size() < n) {
    const double tau = u(rng);
    if (std::abs(tau) > min_abs) out.push_back(tau);
  }
  return out;
}

inline double golden_minimize(const std::function<double(double)>& f,
                              double lo, double hi, double width) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo);
  double d = lo + g * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

template <class State>
std::vector<double> encode_or_empty(const FlowHandle<State>& f,
                                    const State& x) {
  return f.encode ? f.encode(x) : std::vector<double>{};
}

}  // namespace detail

/// d(φ_a(φ_b x), φ_{a+b} x).
template <class State>
double group_law_defect(const FlowHandle<State>& f, const State& x, double a,
                        double b) {
  return f.distance(f.evolve(f.evolve(x, b), a), f.evolve(x, a + b));
}

/// Fixed, Periodic with its minimal period (refined by a golden-section
/// search on the return distance), or NonPeriodicUpToHorizon when no return
/// was seen on (0, horizon].
template <class State>
OrbitClass classify_orbit(const FlowHandle<State>& f, const State& x,
                          double horizon, double tol,
                          std::size_t grid_steps = 4096) {
  auto gap = [&](double tau) { return f.distance(f.evolve(x, tau), x); };

  bool fixed = true;
  for (double frac : {1e-3, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0}) {
    if (gap(frac * horizon) >= tol) {
      fixed = false;
      break;
    }
  }
  if (fixed) return {OrbitKind::Fixed, 0.0};

  const double step = horizon / static_cast<double>(grid_steps);
  std::vector<double> d(grid_steps + 1);
  for (std::size_t k = 0; k <= grid_steps; ++k) {
    d[k] = gap(step * static_cast<double>(k));
  }
  for (std::size_t k = 1; k < grid_steps; ++k) {
    if (d[k] > d[k - 1] || d[k] > d[k + 1]) continue;
    const double lo = step * static_cast<double>(k - 1);
    const double hi = step * static_cast<double>(k + 1);
    const double tau =
        detail::golden_minimize(gap, lo, hi, 1e-14 * std::max(1.0, hi));
    if (gap(tau) < tol) return {OrbitKind::Periodic, tau};
  }
  return {OrbitKind::NonPeriodicUpToHorizon, 0.0};
}

/// Pairs (x1, x2) with |T(x1) − T(x2)| < value_tol. Uses the candidate's
/// level_partner when present, otherwise matches neighbouring values in a
/// pool of sampled states. Throws InsufficientSamples if fewer than `count`
/// pairs can be built.
template <class State>
std::vector<LevelSetPair<State>> level_set_pairs(
    const TimeFunctionHandle<State>& t,
    const std::function<State(Rng&)>& sampler, double value_tol,
    std::size_t count, std::uint64_t seed,
    const std::function<double(const State&, const State&)>& distance = {}) {
  std::vector<LevelSetPair<State>> out;
  if (count == 0) return out;
  auto distinct = [&](const State& a, const State& b) {
    return !distance || distance(a, b) > value_tol;
  };

  if (t.level_partner) {
    for (std::size_t i = 0; i < count; ++i) {
      bool found = false;
      for (int attempt = 0; attempt < detail::kPartnerAttempts && !found;
           ++attempt) {
        const std::uint64_t s = sample_seed(
            seed + static_cast<std::uint64_t>(attempt) * 0x632be59bd9b4e019ULL,
            i);
        Rng rng(s);
        State a = sampler(rng);
        State b = t.level_partner(a, rng);
        if (clock_distance(t.evaluate(a), t.evaluate(b)) < value_tol &&
            distinct(a, b)) {
          out.push_back({std::move(a), std::move(b), s, s});
          found = true;
        }
      }
      if (!found) {
        throw InsufficientSamples("could not build level-set pair " +
                                  std::to_string(i) + " for " + t.name);
      }
    }
    return out;
  }

  const std::size_t pool_size = std::max<std::size_t>(1024, 64 * count);
  struct Entry {
    double key;
    ClockValue value;
    std::uint64_t seed;
  };
  std::vector<Entry> pool;
  pool.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) {
    const std::uint64_t s = sample_seed(seed, i);
    Rng rng(s);
    const ClockValue v = t.evaluate(sampler(rng));
    pool.push_back({clock_key(v), v, s});
  }
  std::sort(pool.begin(), pool.end(), [](const Entry& a, const Entry& b) {
    return a.key < b.key || (a.key == b.key && a.seed < b.seed);
  });
  for (std::size_t k = 0; k + 1 < pool.size() && out.size() < count; ++k) {
    if (clock_distance(pool[k].value, pool[k + 1].value) >= value_tol) continue;
    Rng ra(pool[k].seed);
    Rng rb(pool[k + 1].seed);
    State a = sampler(ra);
    State b = sampler(rb);
    if (!distinct(a, b)) continue;
    out.push_back({std::move(a), std::move(b), pool[k].seed, pool[k + 1].seed});
    ++k;
  }
  if (out.size() < count) {
    throw InsufficientSamples("only " + std::to_string(out.size()) + " of " +
                              std::to_string(count) +
                              " level-set pairs found for " + t.name);
  }
  return out;
}

/// Checks both axioms on `n_states` sampled states (condition 1) and
/// `n_states` level-set pairs (condition 2), each against `n_times` times.
/// The time horizon is 10 periods for periodic candidates and 100 time
/// units otherwise, unless `horizon` is given.
template <class State>
VerificationReport verify_time_function(
    const FlowHandle<State>& f, const TimeFunctionHandle<State>& t,
    bool periodic, std::size_t n_states, std::size_t n_times, double tol,
    std::uint64_t seed, std::optional<double> horizon = std::nullopt) {
  if (periodic && !(t.period && *t.period > 0.0)) {
    throw Error("periodic verification of " + t.name +
                " needs a positive period");
  }
  VerificationReport rep;
  rep.time_function = t.name;
  rep.periodic = periodic;
  if (periodic) rep.period = t.period;
  rep.seed = seed;
  rep.tolerances.value = tol;
  rep.tolerances.level_set = 0.1 * tol;
  rep.horizon = horizon.value_or(periodic ? 10.0 * *t.period : 100.0);
  const double guard = rep.tolerances.period_guard;

  // Condition 1: injectivity along orbits, modulo the period if any.
  for (std::size_t i = 0; i < n_states; ++i) {
    const std::uint64_t s = sample_seed(seed, i);
    Rng state_rng(s);
    const State x = f.sample(state_rng);
    Rng time_rng(sample_seed(~seed, i));
    const ClockValue t0 = t.evaluate(x);
    auto make_cx = [&](double tau1, double tau2, double observed, bool eq) {
      Counterexample cx;
      cx.condition = 1;
      cx.sample_index = i;
      cx.seed_first = cx.seed_second = s;
      cx.tau1 = tau1;
      cx.tau2 = tau2;
      cx.observed = observed;
      cx.expected_equal = eq;
      cx.state = detail::encode_or_empty(f, x);
      return cx;
    };

    const auto taus = detail::time_samples(n_times, rep.horizon, time_rng, guard);
    if (!taus.empty()) {
      rep.group_law_defect = std::max(
          rep.group_law_defect, group_law_defect(f, x, taus.front(), taus.back()));
    }
    if (!periodic) {
      for (double tau : taus) {
        const double dist = clock_distance(t.evaluate(f.evolve(x, tau)), t0);
        ++rep.condition_1.checks;
        if (!(dist > tol)) detail::record(rep.condition_1, make_cx(0.0, tau, dist, false));
      }
      continue;
    }

    const double period = *t.period;
    // Returns at whole multiples of the period.
    const long max_k = std::max<long>(1, static_cast<long>(rep.horizon / period));
    std::uniform_int_distribution<long> kdist(-max_k, max_k);
    for (std::size_t m = 0; m < std::max<std::size_t>(2, n_times / 4); ++m) {
      long k = (m < 2) ? (m == 0 ? 1 : -1) : kdist(time_rng);
      if (k == 0) k = 1;
      const double tau = static_cast<double>(k) * period;
      const double dist = clock_distance(t.evaluate(f.evolve(x, tau)), t0);
      ++rep.condition_1.checks;
      if (!(dist <= tol)) detail::record(rep.condition_1, make_cx(0.0, tau, dist, true));
    }
    // Distinct values off the lattice τ_T·Z.
    std::uniform_real_distribution<double> u(-rep.horizon, rep.horizon);
    for (double tau2 : taus) {
      const double tau1 = u(time_rng);
      const double delta = tau2 - tau1;
      const double off = std::abs(delta - std::round(delta / period) * period);
      if (off < guard) continue;
      const double dist = clock_distance(t.evaluate(f.evolve(x, tau1)),
                                         t.evaluate(f.evolve(x, tau2)));
      ++rep.condition_1.checks;
      if (!(dist > tol)) detail::record(rep.condition_1, make_cx(tau1, tau2, dist, false));
    }
  }

  // Condition 2: level sets are carried to level sets.
  const auto pairs = level_set_pairs(t, f.sample, rep.tolerances.level_set,
                                     n_states, seed ^ 0x5bd1e995ULL, f.distance);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pr = pairs[i];
    Rng time_rng(sample_seed(~(seed ^ 0x5bd1e995ULL), i));
    for (double tau : detail::time_samples(n_times, rep.horizon, time_rng, 0.0)) {
      const double dist = clock_distance(t.evaluate(f.evolve(pr.first, tau)),
                                         t.evaluate(f.evolve(pr.second, tau)));
      ++rep.condition_2.checks;
      if (dist > tol) {
        Counterexample cx;
        cx.condition = 2;
        cx.sample_index = i;
        cx.seed_first = pr.seed_first;
        cx.seed_second = pr.seed_second;
        cx.tau1 = cx.tau2 = tau;
        cx.observed = dist;
        cx.expected_equal = true;
        cx.state = detail::encode_or_empty(f, pr.first);
        cx.partner = detail::encode_or_empty(f, pr.second);
        detail::record(rep.condition_2, std::move(cx));
      }
    }
  }
  rep.samples_used = n_states + pairs.size();
  return rep;
}

/// Rebuilds the states behind `cx` from its seeds and re-measures the clock
/// distance it reports.
template <class State>
double replay(const FlowHandle<State>& f, const TimeFunctionHandle<State>& t,
              const Counterexample& cx) {
  Rng rng(cx.seed_first);
  const State x = f.sample(rng);
  if (cx.condition == 1) {
    return clock_distance(t.evaluate(f.evolve(x, cx.tau1)),
                          t.evaluate(f.evolve(x, cx.tau2)));
  }
  State y = [&] {
    if (t.level_partner) return t.level_partner(x, rng);
    Rng other(cx.seed_second);
    return f.sample(other);
  }();
  return clock_distance(t.evaluate(f.evolve(x, cx.tau1)),
                        t.evaluate(f.evolve(y, cx.tau1)));
}

}  // namespace simul
