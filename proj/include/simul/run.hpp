#pragma once
/*
 * run.hpp - executes a RunConfig and writes its dataset.
 *
 * Exit codes: 0 success, 2 validation error, 3 verification failure.
 *
 * CSV column layouts (n = Hilbert dimension, j over admissible indices):
 *   simulate   quantum    tau, re_0..re_{n-1}, im_0..im_{n-1}, e_0..e_{n-1}, energy
 *              classical  tau, q_0.., p_0.., energy
 *   timefn     quantum    tau, T{j}_re, T{j}_im, T{j}_angle  (per j)
 *              classical  tau, T                (free, constant_force)
 *                         tau, T_re, T_im, T_angle           (harmonic)
 *   foliation  quantum    leaf, T_angle, T_re, T_im, re_k.., im_k.., action_k..
 *                         [, bloch_x, bloch_y, bloch_z when n = 2]
 *              classical  leaf, T | T_angle, T_re, T_im, q_k.., p_k..
 *   qubit-demo            tau, T_re, T_im, T_angle, action, e_0, e_1,
 *                         bloch_x, bloch_y, bloch_z
 * JSON tables carry {"command", "columns", "rows"}; verify always writes
 * {"passed", "reports": [VerificationReport...]}.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "simul/config.hpp"
#include "simul/systems.hpp"

namespace simul {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitVerificationFailed = 3 };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json_text(const Table& t, Command cmd) {
  io::Json j = {{"command", to_string(cmd)}, {"columns", t.columns}, {"rows", t.rows}};
  return j.dump(1) + "\n";
}

namespace detail {

inline SpectralData spectrum_of(const QuantumSetup& q) {
  return spectral_decompose(q.hamiltonian);
}

/// Configured state, or the uniform superposition over the energy basis.
inline PureState initial_state(const QuantumSetup& q, const SpectralData& s) {
  if (q.state) return *q.state;
  return PureState(s.eigenbasis * CVector::Ones(s.dim()));
}

inline PhasePoint initial_point(const ClassicalSetup& c) {
  if (c.state) return *c.state;
  if (std::holds_alternative<HarmonicOscillator>(c.system)) return PhasePoint::one_d(1.0, 0.0);
  PhasePoint x{RVector::Zero(3), RVector::Zero(3)};
  if (std::holds_alternative<FreeParticle>(c.system)) x.p(0) = 1.0;
  return x;
}

inline int reference_index(const RunConfig& cfg, const SpectralData& s) {
  return cfg.ref_index.value_or(static_cast<int>(s.dim()) - 1);
}

inline void push_complex(std::vector<double>& row, Complex z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

inline void push_circle(std::vector<double>& row, const TimeFunctionValue& v) {
  row.push_back(v.value.real());
  row.push_back(v.value.imag());
  row.push_back(v.angle());
}

inline void push_state(std::vector<double>& row, const PureState& p) {
  for (Eigen::Index k = 0; k < p.dim(); ++k) row.push_back(p.vector()(k).real());
  for (Eigen::Index k = 0; k < p.dim(); ++k) row.push_back(p.vector()(k).imag());
}

inline void push_bloch(std::vector<double>& row, const PureState& p) {
  const Complex a = p.vector()(0);
  const Complex b = p.vector()(1);
  const Complex ab = std::conj(a) * b;
  row.push_back(2.0 * ab.real());
  row.push_back(2.0 * ab.imag());
  row.push_back(std::norm(a) - std::norm(b));
}

inline void state_columns(std::vector<std::string>& cols, Eigen::Index n) {
  for (Eigen::Index k = 0; k < n; ++k) cols.push_back("re_" + std::to_string(k));
  for (Eigen::Index k = 0; k < n; ++k) cols.push_back("im_" + std::to_string(k));
}

inline void point_columns(std::vector<std::string>& cols, Eigen::Index d) {
  for (Eigen::Index k = 0; k < d; ++k) cols.push_back("q_" + std::to_string(k));
  for (Eigen::Index k = 0; k < d; ++k) cols.push_back("p_" + std::to_string(k));
}

inline void push_point(std::vector<double>& row, const PhasePoint& x) {
  for (Eigen::Index k = 0; k < x.dim(); ++k) row.push_back(x.q(k));
  for (Eigen::Index k = 0; k < x.dim(); ++k) row.push_back(x.p(k));
}

inline Table simulate(const RunConfig& cfg) {
  Table t{{"tau"}, {}};
  if (const auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
    const SpectralData s = spectrum_of(*q);
    const PureState p0 = initial_state(*q, s);
    const auto e = projectors(s);
    state_columns(t.columns, s.dim());
    for (Eigen::Index j = 0; j < s.dim(); ++j) t.columns.push_back("e_" + std::to_string(j));
    t.columns.push_back("energy");
    for (int k = 0; k <= cfg.tau_grid.steps; ++k) {
      const double tau = cfg.tau_grid.at(k);
      const PureState p = evolve(s, p0, tau);
      std::vector<double> row{tau};
      push_state(row, p);
      for (const auto& ej : e) row.push_back(expectation(ej, p));
      row.push_back(expectation(q->hamiltonian, p));
      t.rows.push_back(std::move(row));
    }
    return t;
  }
  const auto& c = std::get<ClassicalSetup>(cfg.system);
  const PhasePoint x0 = initial_point(c);
  point_columns(t.columns, x0.dim());
  t.columns.push_back("energy");
  for (int k = 0; k <= cfg.tau_grid.steps; ++k) {
    const double tau = cfg.tau_grid.at(k);
    const PhasePoint x = flow(c.system, x0, tau);
    std::vector<double> row{tau};
    push_point(row, x);
    row.push_back(energy(c.system, x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table timefn(const RunConfig& cfg, std::ostream& log) {
  Table t{{"tau"}, {}};
  if (const auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
    const SpectralData s = spectrum_of(*q);
    const int ref = reference_index(cfg, s);
    const PureState p0 = initial_state(*q, s);
    if (!in_reduced_space(p0, s)) {
      throw NotInReducedSpace("initial state has a vanishing energy component");
    }
    const auto js = admissible_indices(s, ref);
    if (js.empty()) log << "warning: the Hamiltonian has no admissible time functions\n";
    for (int j : js) {
      for (const char* suffix : {"_re", "_im", "_angle"}) {
        t.columns.push_back("T" + std::to_string(j) + suffix);
      }
    }
    for (int k = 0; k <= cfg.tau_grid.steps; ++k) {
      const double tau = cfg.tau_grid.at(k);
      const PureState p = evolve(s, p0, tau);
      std::vector<double> row{tau};
      for (int j : js) push_circle(row, time_function(p, s, j, ref));
      t.rows.push_back(std::move(row));
    }
    return t;
  }
  const auto& c = std::get<ClassicalSetup>(cfg.system);
  const PhasePoint x0 = initial_point(c);
  if (!in_reduced_space_classical(c.system, x0)) {
    throw NotInReducedSpace("initial state is a fixed point of the flow");
  }
  const bool circle = std::holds_alternative<HarmonicOscillator>(c.system);
  if (circle) {
    t.columns.insert(t.columns.end(), {"T_re", "T_im", "T_angle"});
  } else {
    t.columns.push_back("T");
  }
  for (int k = 0; k <= cfg.tau_grid.steps; ++k) {
    const double tau = cfg.tau_grid.at(k);
    const ClockValue v = time_function_classical(c.system, flow(c.system, x0, tau));
    std::vector<double> row{tau};
    if (circle) {
      push_circle(row, std::get<TimeFunctionValue>(v));
    } else {
      row.push_back(std::get<double>(v));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table foliation(const RunConfig& cfg) {
  Table t{{"leaf"}, {}};
  Rng rng(cfg.seed);
  if (const auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
    const SpectralData s = spectrum_of(*q);
    const int ref = reference_index(cfg, s);
    const auto js = admissible_indices(s, ref);
    if (js.empty()) throw DegenerateFrequency("the Hamiltonian has no admissible time functions");
    const int j = cfg.index.value_or(js.front());
    relative_frequency(s, j, ref);
    const Eigen::Index n = s.dim();
    t.columns.insert(t.columns.end(), {"T_angle", "T_re", "T_im"});
    state_columns(t.columns, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != ref) t.columns.push_back("action_" + std::to_string(k));
    }
    if (n == 2) t.columns.insert(t.columns.end(), {"bloch_x", "bloch_y", "bloch_z"});
    for (int leaf = 0; leaf < cfg.leaves; ++leaf) {
      const double angle = kTwoPi * leaf / cfg.leaves;
      for (int m = 0; m < cfg.leaf_samples; ++m) {
        ActionAngleChart c = chart(random_reduced_state(s, rng), s, ref);
        c.angles[static_cast<std::size_t>(c.slot_of_index(j))] = std::polar(1.0, angle);
        const PureState p = chart_inverse(c, s);
        std::vector<double> row{static_cast<double>(leaf)};
        push_circle(row, time_function(p, s, j, ref));
        // push_circle writes re, im, angle; reorder to the documented layout.
        std::rotate(row.begin() + 1, row.begin() + 3, row.end());
        push_state(row, p);
        for (double a : chart(p, s, ref).actions) row.push_back(a);
        if (n == 2) push_bloch(row, p);
        t.rows.push_back(std::move(row));
      }
    }
    return t;
  }
  const auto& c = std::get<ClassicalSetup>(cfg.system);
  const bool circle = std::holds_alternative<HarmonicOscillator>(c.system);
  const Eigen::Index d = dimension(c.system);
  if (circle) {
    t.columns.insert(t.columns.end(), {"T_angle", "T_re", "T_im"});
  } else {
    t.columns.push_back("T");
  }
  point_columns(t.columns, d);
  const auto tf = classical_time_function(c.system);
  for (int leaf = 0; leaf < cfg.leaves; ++leaf) {
    // Anchor of the leaf: a point whose clock reads the leaf's value.
    PhasePoint anchor = random_phase_point(c.system, rng);
    if (circle) {
      const double angle = kTwoPi * leaf / cfg.leaves;
      const auto& ho = std::get<HarmonicOscillator>(c.system);
      anchor = PhasePoint::one_d(std::sin(angle) / (ho.mass * ho.frequency), std::cos(angle));
    } else {
      const double value = cfg.leaves == 1
                               ? cfg.tau_grid.start
                               : cfg.tau_grid.start + (cfg.tau_grid.stop - cfg.tau_grid.start) *
                                                          leaf / (cfg.leaves - 1);
      const double current = std::get<double>(tf.evaluate(anchor));
      anchor = flow(c.system, anchor, value - current);
    }
    for (int m = 0; m < cfg.leaf_samples; ++m) {
      const PhasePoint x = tf.level_partner(anchor, rng);
      std::vector<double> row{static_cast<double>(leaf)};
      const ClockValue v = tf.evaluate(x);
      if (circle) {
        const auto& cv = std::get<TimeFunctionValue>(v);
        row.insert(row.end(), {cv.angle(), cv.value.real(), cv.value.imag()});
      } else {
        row.push_back(std::get<double>(v));
      }
      push_point(row, x);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

inline Table qubit_demo(const RunConfig& cfg) {
  const auto& q = std::get<QuantumSetup>(cfg.system);
  const SpectralData s = spectrum_of(q);
  const int ref = cfg.ref_index.value_or(1);
  const int j = 1 - ref;
  relative_frequency(s, j, ref);
  const PureState p0 = initial_state(q, s);
  if (!in_reduced_space(p0, s)) {
    throw NotInReducedSpace("qubit-demo needs a state off the two poles");
  }
  const auto e = projectors(s);
  Table t{{"tau", "T_re", "T_im", "T_angle", "action", "e_0", "e_1", "bloch_x",
           "bloch_y", "bloch_z"},
          {}};
  for (int k = 0; k <= cfg.tau_grid.steps; ++k) {
    const double tau = cfg.tau_grid.at(k);
    const PureState p = evolve(s, p0, tau);
    std::vector<double> row{tau};
    push_circle(row, time_function(p, s, j, ref));
    row.push_back(chart(p, s, ref).actions.front());
    row.push_back(expectation(e[0], p));
    row.push_back(expectation(e[1], p));
    push_bloch(row, p);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct VerifyOutcome {
  io::Json document;
  bool passed;
};

inline VerifyOutcome verify(const RunConfig& cfg) {
  const auto n_states = static_cast<std::size_t>(cfg.n_states);
  const auto n_times = static_cast<std::size_t>(cfg.n_times);
  io::Json reports = io::Json::array();
  bool passed = true;
  std::string note;
  auto add = [&](const VerificationReport& r) {
    passed = passed && r.passed();
    reports.push_back(io::to_json(r));
  };
  if (const auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
    const SpectralData s = spectrum_of(*q);
    const int ref = reference_index(cfg, s);
    const auto f = quantum_flow(s);
    if (cfg.candidate == Candidate::TimeFunction) {
      std::vector<int> js = admissible_indices(s, ref);
      if (cfg.index) js = {*cfg.index};
      if (js.empty()) {
        passed = false;
        note = "no admissible time functions: the Hamiltonian is a multiple of the identity";
      }
      for (int j : js) {
        add(verify_time_function(f, quantum_time_function(s, j, ref), true, n_states,
                                 n_times, cfg.tol, cfg.seed));
      }
    } else {
      for (int j = 0; j < s.dim(); ++j) {
        if (cfg.index && *cfg.index != j) continue;
        add(verify_time_function(f, quantum_population_candidate(s, j), false, n_states,
                                 n_times, cfg.tol, cfg.seed));
      }
    }
  } else {
    const auto& c = std::get<ClassicalSetup>(cfg.system);
    const bool periodic = std::holds_alternative<HarmonicOscillator>(c.system);
    const auto f = classical_flow(c.system);
    const auto t = cfg.candidate == Candidate::TimeFunction
                       ? classical_time_function(c.system)
                       : classical_constant_candidate(c.system);
    add(verify_time_function(f, t, periodic, n_states, n_times, cfg.tol, cfg.seed));
  }
  io::Json doc = {{"passed", passed}, {"reports", std::move(reports)}};
  if (!note.empty()) doc["note"] = note;
  return {std::move(doc), passed};
}

inline void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("output", "cannot open '" + cfg.output + "' for writing");
  out << text;
  if (!out) throw ParseError("output", "write to '" + cfg.output + "' failed");
}

}  // namespace detail

/// Runs the configured command, writes its artifact and returns the exit
/// code. Diagnostics go to `log`.
inline int run(const RunConfig& cfg, std::ostream& log = std::cerr) {
  try {
    if (cfg.command == Command::Verify) {
      const auto outcome = detail::verify(cfg);
      detail::write_output(cfg, outcome.document.dump(2) + "\n");
      if (!outcome.passed) {
        log << "verification failed\n";
        return kExitVerificationFailed;
      }
      return kExitOk;
    }
    Table t;
    switch (cfg.command) {
      case Command::Simulate: t = detail::simulate(cfg); break;
      case Command::TimeFn: t = detail::timefn(cfg, log); break;
      case Command::Foliation: t = detail::foliation(cfg); break;
      default: t = detail::qubit_demo(cfg); break;
    }
    detail::write_output(cfg, cfg.format == OutputFormat::Csv
                                  ? to_csv(t)
                                  : to_json_text(t, cfg.command));
    return kExitOk;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace simul
