#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "harness/config.hpp"
#include "harness/tasks.hpp"

using gapgrad::cli::ConfigError;
using gapgrad::cli::RunConfig;
using gapgrad::cli::Task;

int main(int argc, char** argv) {
  CLI::App app{"Gradient blow-up in an eccentric disk pair: solvers, sweeps and validation"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::optional<unsigned> threads;
  std::optional<double> tol;
  app.add_option("--config", config_path, "YAML config file");
  app.add_option("--out", out_path, "output file (default: config 'output' or stdout)");
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  app.add_option("--tol", tol, "required agreement between the two exact solvers")
      ->check(CLI::PositiveNumber);

  const std::pair<const char*, const char*> commands[] = {
      {"solve", "evaluate both exact solvers at points"},
      {"boundary-profile", "theta-trace on the inclusion boundary with asymptotics"},
      {"field-grid", "|grad| on a Cartesian grid over the outer disk"},
      {"sweep", "directional sup-norms over an eps sweep"},
      {"validate", "run the invariant suite and write a JSON report"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gapgrad::cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const Task task = *gapgrad::cli::parse_task(command);
  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = gapgrad::cli::load_config(config_path);
    } else if (task != Task::Validate) {
      throw ConfigError("--config", "a config file is required for '" + command + "'");
    }
    if (cfg.task && *cfg.task != task) {
      throw ConfigError("task", std::string("config says '") + to_string(*cfg.task) +
                                    "' but the command is '" + command + "'");
    }
    cfg.task = task;
    if (threads) cfg.threads = *threads;
    if (tol) cfg.agreement_tol = *tol;
    if (!out_path.empty()) cfg.output = out_path;
    cfg.validate();

    if (cfg.output.empty()) return gapgrad::cli::run_task(cfg, std::cout, std::cerr);
    std::ofstream out(cfg.output);
    if (!out) throw ConfigError("--out", "cannot open '" + cfg.output + "' for writing");
    const int rc = gapgrad::cli::run_task(cfg, out, std::cerr);
    out.close();
    if (!out) {
      std::cerr << "error: writing '" << cfg.output << "' failed\n";
      return gapgrad::cli::kExitFailure;
    }
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gapgrad::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gapgrad::cli::kExitFailure;
  }
}
