#pragma once
/*
 * config.hpp - run configuration for the command-line tool.
 *
 * {
 *   "command":  "simulate" | "timefn" | "verify" | "foliation" | "qubit-demo",
 *   "system":   operator or classical record (see io.hpp),
 *   "state":    {"re","im"} (quantum) or {"q","p"} (classical),   optional
 *   "tau_grid": {"start": 0, "stop": 10, "steps": 100},
 *   "seed": 0, "output": "-", "format": "csv" | "json", "tol": 1e-8,
 *   "ref_index": n-1, "index": j,                      quantum only, optional
 *   "candidate": "time_function" | "constant",        verify
 *   "n_states": 32, "n_times": 32,                     verify
 *   "leaves": 32, "leaf_samples": 256                  foliation
 * }
 *
 * Unknown fields are rejected. Defaults are resolved at parse time so that
 * serialize_config emits a complete, self-describing document.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "simul/io.hpp"

namespace simul {

enum class Command { Simulate, TimeFn, Verify, Foliation, QubitDemo };
enum class OutputFormat { Csv, Json };
enum class Candidate { TimeFunction, Constant };

struct TauGrid {
  double start = 0.0;
  double stop = 10.0;
  int steps = 100;

  /// start + k (stop − start) / steps, k = 0..steps.
  double at(int k) const {
    return k == steps ? stop
                      : start + (stop - start) * static_cast<double>(k) /
                                    static_cast<double>(steps);
  }
};

struct QuantumSetup {
  HermitianOperator hamiltonian;
  std::optional<PureState> state;
};

struct ClassicalSetup {
  ClassicalSystem system;
  std::optional<PhasePoint> state;
};

struct RunConfig {
  Command command = Command::Simulate;
  std::variant<QuantumSetup, ClassicalSetup> system =
      QuantumSetup{HermitianOperator::diagonal({1.0, -1.0}), std::nullopt};
  TauGrid tau_grid;
  std::uint64_t seed = 0;
  std::string output = "-";
  OutputFormat format = OutputFormat::Csv;
  double tol = 1e-8;
  std::optional<int> ref_index;
  std::optional<int> index;
  Candidate candidate = Candidate::TimeFunction;
  int n_states = 32;
  int n_times = 32;
  int leaves = 32;
  int leaf_samples = 256;

  bool is_quantum() const { return std::holds_alternative<QuantumSetup>(system); }
};

inline std::string to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::TimeFn: return "timefn";
    case Command::Verify: return "verify";
    case Command::Foliation: return "foliation";
    default: return "qubit-demo";
  }
}

inline std::optional<Command> command_from_string(const std::string& s) {
  for (Command c : {Command::Simulate, Command::TimeFn, Command::Verify,
                    Command::Foliation, Command::QubitDemo}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

namespace detail {

inline int read_int(const io::Json& j, const std::string& path, int min_value) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < min_value || v > 100000000) {
    throw ParseError(path, "must be at least " + std::to_string(min_value));
  }
  return static_cast<int>(v);
}

inline std::string read_string(const io::Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

/// Validates and resolves a parsed JSON document. `command_override` wins
/// over the document's own "command" field.
inline RunConfig config_from_json(const io::Json& j,
                                  std::optional<Command> command_override = {}) {
  io::reject_unknown(j, "",
                     {"command", "system", "state", "tau_grid", "seed", "output",
                      "format", "tol", "ref_index", "index", "candidate",
                      "n_states", "n_times", "leaves", "leaf_samples"});
  RunConfig cfg;

  if (j.contains("command")) {
    const auto c = command_from_string(detail::read_string(j.at("command"), "command"));
    if (!c) throw ParseError("command", "unknown command");
    cfg.command = *c;
  } else if (!command_override) {
    throw ParseError("command", "missing field");
  }
  if (command_override) cfg.command = *command_override;
  const bool demo = cfg.command == Command::QubitDemo;

  if (j.contains("system")) {
    const io::Json& js = j.at("system");
    if (js.is_object() && js.contains("system")) {
      cfg.system = ClassicalSetup{io::classical_from_json(js, "system"), std::nullopt};
    } else {
      cfg.system = QuantumSetup{io::hermitian_from_json(js, "system"), std::nullopt};
    }
  } else if (!demo) {
    throw ParseError("system", "missing field");
  }
  if (demo) {
    const auto* q = std::get_if<QuantumSetup>(&cfg.system);
    if (!q || q->hamiltonian.dim() != 2) {
      throw ParseError("system", "qubit-demo needs a 2x2 Hamiltonian");
    }
  }

  if (j.contains("state")) {
    if (auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
      q->state = io::state_from_json(j.at("state"), q->hamiltonian.dim(), "state");
    } else {
      auto& c = std::get<ClassicalSetup>(cfg.system);
      c.state = io::phase_point_from_json(j.at("state"), dimension(c.system), "state");
    }
  } else if (demo) {
    std::get<QuantumSetup>(cfg.system).state = PureState{1.0, 1.0};
  }

  cfg.tau_grid = demo ? TauGrid{0.0, std::numbers::pi, 100} : TauGrid{};
  if (j.contains("tau_grid")) {
    const io::Json& g = j.at("tau_grid");
    io::reject_unknown(g, "tau_grid", {"start", "stop", "steps"});
    if (g.contains("start")) cfg.tau_grid.start = io::read_number(g.at("start"), "tau_grid.start");
    if (g.contains("stop")) cfg.tau_grid.stop = io::read_number(g.at("stop"), "tau_grid.stop");
    if (g.contains("steps")) cfg.tau_grid.steps = detail::read_int(g.at("steps"), "tau_grid.steps", 1);
  }
  if (!(cfg.tau_grid.start < cfg.tau_grid.stop)) {
    throw ParseError("tau_grid.stop", "must exceed tau_grid.start");
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("seed", "expected a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) {
    cfg.output = detail::read_string(j.at("output"), "output");
    if (cfg.output.empty()) throw ParseError("output", "must not be empty");
  }
  if (j.contains("format")) {
    const std::string f = detail::read_string(j.at("format"), "format");
    if (f == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ParseError("format", "expected csv or json");
    }
  }
  if (j.contains("tol")) {
    cfg.tol = io::read_number(j.at("tol"), "tol");
    if (!(cfg.tol > 0.0)) throw ParseError("tol", "must be positive");
  }

  const bool quantum = cfg.is_quantum();
  for (const char* key : {"ref_index", "index"}) {
    if (!j.contains(key)) continue;
    if (!quantum) throw ParseError(key, "only meaningful for quantum systems");
    const int n = static_cast<int>(std::get<QuantumSetup>(cfg.system).hamiltonian.dim());
    const int v = detail::read_int(j.at(key), key, 0);
    if (v >= n) throw ParseError(key, "must be below the dimension " + std::to_string(n));
    (key[0] == 'r' ? cfg.ref_index : cfg.index) = v;
  }
  if (j.contains("candidate")) {
    const std::string c = detail::read_string(j.at("candidate"), "candidate");
    if (c == "time_function") {
      cfg.candidate = Candidate::TimeFunction;
    } else if (c == "constant") {
      cfg.candidate = Candidate::Constant;
    } else {
      throw ParseError("candidate", "expected time_function or constant");
    }
  }
  if (j.contains("n_states")) cfg.n_states = detail::read_int(j.at("n_states"), "n_states", 1);
  if (j.contains("n_times")) cfg.n_times = detail::read_int(j.at("n_times"), "n_times", 2);
  if (j.contains("leaves")) cfg.leaves = detail::read_int(j.at("leaves"), "leaves", 1);
  if (j.contains("leaf_samples")) cfg.leaf_samples = detail::read_int(j.at("leaf_samples"), "leaf_samples", 1);
  return cfg;
}

/// Parses configuration text. Malformed JSON raises ParseError with an
/// empty field path and the parser's line/column diagnostic.
inline RunConfig parse_config(const std::string& text,
                              std::optional<Command> command_override = {}) {
  io::Json j;
  try {
    j = io::Json::parse(text);
  } catch (const io::Json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j, command_override);
}

inline io::Json config_to_json(const RunConfig& cfg) {
  io::Json j;
  j["command"] = to_string(cfg.command);
  if (const auto* q = std::get_if<QuantumSetup>(&cfg.system)) {
    j["system"] = io::to_json(q->hamiltonian);
    if (q->state) j["state"] = io::to_json(*q->state);
  } else {
    const auto& c = std::get<ClassicalSetup>(cfg.system);
    j["system"] = io::to_json(c.system);
    if (c.state) j["state"] = io::to_json(*c.state);
  }
  j["tau_grid"] = {{"start", cfg.tau_grid.start},
                   {"stop", cfg.tau_grid.stop},
                   {"steps", cfg.tau_grid.steps}};
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  j["tol"] = cfg.tol;
  if (cfg.ref_index) j["ref_index"] = *cfg.ref_index;
  if (cfg.index) j["index"] = *cfg.index;
  j["candidate"] = cfg.candidate == Candidate::TimeFunction ? "time_function" : "constant";
  j["n_states"] = cfg.n_states;
  j["n_times"] = cfg.n_times;
  j["leaves"] = cfg.leaves;
  j["leaf_samples"] = cfg.leaf_samples;
  return j;
}

inline std::string serialize_config(const RunConfig& cfg) {
  return config_to_json(cfg).dump(2);
}

}  // namespace simul
