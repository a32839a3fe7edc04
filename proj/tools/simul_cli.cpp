// simul - construct and verify time functions from the command line.
//
//   simul <command> --config cfg.json [--out path] [--format csv|json]
//                   [--seed N] [--tol X]
//
// <command> is one of simulate, timefn, verify, foliation, qubit-demo and
// may be omitted when the config names it. qubit-demo runs without a config.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "simul/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify dynamical time functions"};
  std::string command;
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  app.add_option("command", command,
                 "simulate | timefn | verify | foliation | qubit-demo");
  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--out", out, "Output path, '-' for stdout");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--tol", tol, "Verification tolerance")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : simul::kExitInvalid;
  }

  std::optional<simul::Command> override_cmd;
  if (!command.empty()) {
    override_cmd = simul::command_from_string(command);
    if (!override_cmd) {
      std::cerr << "error: unknown command '" << command << "'\n";
      return simul::kExitInvalid;
    }
  }

  std::string text = "{}";
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return simul::kExitInvalid;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (override_cmd != simul::Command::QubitDemo) {
    std::cerr << "error: --config is required for " << command << "\n";
    return simul::kExitInvalid;
  }

  simul::RunConfig cfg;
  try {
    cfg = simul::parse_config(text, override_cmd);
  } catch (const simul::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return simul::kExitInvalid;
  }
  if (out) cfg.output = *out;
  if (format) cfg.format = *format == "csv" ? simul::OutputFormat::Csv : simul::OutputFormat::Json;
  if (seed) cfg.seed = *seed;
  if (tol) cfg.tol = *tol;
  return simul::run(cfg, std::cerr);
}
