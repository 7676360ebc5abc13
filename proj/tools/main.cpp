#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

enum Exit { ok = 0, config_error = 2, validation_error = 3, non_convergence = 4, internal = 5 };

int exit_for(agenda::ErrorCode c) {
  using agenda::ErrorCode;
  switch (c) {
    case ErrorCode::non_convergence:
    case ErrorCode::bracket_failure:
    case ErrorCode::regime:
      return non_convergence;
    case ErrorCode::internal:
      return internal;
    default:
      return validation_error;
  }
}

int fail(int code, const std::string& kind, const std::string& msg) {
  nlohmann::json e = {{"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}};
  std::cerr << e.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic agenda-setting solver: equilibria, benchmarks, sweeps, simulation"};
  app.require_subcommand(1);

  std::string config_path, out_dir, name;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_periods, threads;
  std::optional<std::int64_t> episodes;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--name", name, "output file stem");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--tol", tol, "solver tolerance");
  app.add_option("--max-periods", max_periods, "period horizon for outcome enumeration");
  app.add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
  app.add_option("--episodes", episodes, "Monte Carlo episodes");

  auto* run = app.add_subcommand("run", "run the task named in the config");
  std::string sweep_name, suite, profile;
  auto* sweep = app.add_subcommand("sweep", "grid sweep: coase-figure, region, convergence");
  sweep->add_option("name", sweep_name)->required();
  auto* verify = app.add_subcommand("verify", "property suites: poisson, ranking, all");
  verify->add_option("suite", suite)->required();
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo on a constructed profile");
  simulate->add_option("profile", profile)->required();
  for (auto* s : {run, sweep, verify, simulate}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return config_error;
  }

  try {
    agenda::cli::Config cfg =
        config_path.empty() ? agenda::cli::Config{} : agenda::cli::load_config(config_path);
    if (sweep->parsed()) {
      cfg.task.kind = "sweep";
      cfg.task.sweep = sweep_name;
    } else if (verify->parsed()) {
      cfg.task.kind = "verify";
      cfg.task.suite = suite;
    } else if (simulate->parsed()) {
      cfg.task.kind = "simulate";
      cfg.task.profile = profile;
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!name.empty()) cfg.output.name = name;
    if (seed) cfg.task.seed = *seed;
    if (tol) cfg.tolerances.tol = *tol;
    if (max_periods) cfg.tolerances.max_periods = *max_periods;
    if (threads) cfg.tolerances.threads = *threads;
    if (episodes) cfg.task.episodes = *episodes;
    if (cfg.tolerances.max_periods < 1 || cfg.tolerances.threads < 0 || cfg.task.episodes < 1)
      throw agenda::cli::ConfigError("max-periods, episodes must be >= 1 and threads >= 0");

    const auto rep = agenda::cli::execute(cfg);
    for (const auto& f : agenda::cli::write_outputs(cfg, rep)) std::cout << f << '\n';
    if (rep.failed) return fail(internal, "verification", "property checks reported failures");
    return ok;
  } catch (const agenda::cli::ConfigError& e) {
    return fail(config_error, "config", e.what());
  } catch (const agenda::Error& e) {
    return fail(exit_for(e.code()), agenda::to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(internal, "internal", e.what());
  }
}
