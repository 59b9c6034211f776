// hyperorbit: experiment runner for densities, weighted shifts, the c0
// counterexample and the frequently hypercyclic vector construction.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "experiment_config.hpp"
#include "hyperorbit/errors.hpp"
#include "hyperorbit/parallel.hpp"

#ifndef HYPERORBIT_VERSION
#define HYPERORBIT_VERSION "unknown"
#endif

namespace {

using namespace hyperorbit;
using namespace hyperorbit::cli;

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::FamilyExhausted ? kVerificationFailure : kUsage;
}

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config, const RunResult& result,
                    double wall_ms) {
  std::ofstream out(dir / "manifest.txt");
  out << "tool hyperorbit\nversion " << HYPERORBIT_VERSION << "\ncompiler " << __VERSION__ << "\nsubcommand "
      << config.subcommand << "\nconfig-hash " << config.hash() << "\nworkers " << workers() << "\nwall-ms "
      << static_cast<long long>(wall_ms) << "\nstatus " << result.status << "\nexit-code " << result.code << '\n';
  for (const auto& f : result.files) out << "output " << f << '\n';
}

}  // namespace

std::string summary(const std::string& name) {
  static const std::map<std::string, std::string> text{
      {"densities", "lower/upper and Banach density estimates of a set"},
      {"make-set", "serialize a set and list its members up to a horizon"},
      {"check-family", "gap property |j' - j| >= max{k, k'} of a set family"},
      {"verify-counterexample", "Fact 1, the c0 block family and its Banach window counts"},
      {"dj-scan", "prefix densities of D_j against the decay bound"},
      {"construct", "A-frequently hypercyclic vector with certificates and orbit bounds"},
      {"orbit", "hitting times N(x, V) for target balls"},
      {"classify", "recurrence labels from hitting-time densities"},
      {"return-set", "verified subset of N(U, V) and its syndeticity"},
      {"correlate", "correlation densities eta_k, the set F and an antichain R"},
      {"beta", "growth of beta_n for a set and a profile alpha"},
      {"eqbeta", "left and right weight-product sums on a set"},
      {"series-tests", "frequent-hypercyclicity series and mixing evidence for weights"},
  };
  const auto it = text.find(name);
  return it == text.end() ? std::string() : it->second;
}

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon experiments on hypercyclic weighted shifts"};
  app.require_subcommand(1);
  int worker_count = 0;
  std::string out_dir = ".", config_path;
  app.add_option("--workers", worker_count, "worker threads (default: HYPERORBIT_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir, "directory for outputs and manifest.txt");
  app.add_option("--config", config_path, "config file; flags override its values");

  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, summary(name));
    subs[name] = sub;
    for (const auto& spec : options_for(name))
      sub->add_option("--" + spec.key, flag_values[name][spec.key], spec.help + " [" + spec.default_value + "]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (worker_count > 0) set_workers(worker_count);
    ExperimentConfig config{name, {}};
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + config_path);
      std::ostringstream text;
      text << in.rdbuf();
      config = ExperimentConfig::parse(text.str());
      if (config.subcommand != name)
        throw Error(ErrorKind::InvalidArgument, "config is for '" + config.subcommand + "', not '" + name + "'");
    }
    for (const auto& spec : options_for(name))
      if (subs[name]->count("--" + spec.key) > 0) config.values[spec.key] = flag_values[name][spec.key];
    config = config.materialized();

    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(config, out_dir, std::cout);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_manifest(out_dir, config, result, ms);
    if (result.code != kOk) std::cerr << result.status << '\n';
    return result.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
