#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "app/app.hpp"

using namespace qillum;
using namespace qillum::app;

namespace {

// Flags shared by the sweep-like subcommands; values are kept as text and
// applied on top of the config file through the same key parser.
struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  std::vector<std::string> states;
  std::vector<std::string> pairs;

  void add(CLI::App* cmd, bool with_pairs) {
    cmd->add_option("--config", config, "key = value file (a sweep/ratio CSV works too)");
    cmd->add_option("--state", states, "probe state(s): coherent, ds, tmsv, cct")->delimiter(',');
    if (with_pairs) cmd->add_option("--pair", pairs, "ratio pair(s) a/b")->delimiter(',');
    for (const char* name : {"detector", "method", "kappa", "nb", "ni", "modes", "split", "ns-min", "ns-max",
                             "ns-count", "out"})
      cmd->add_option(std::string("--") + name, values[name]);
  }

  SweepConfig resolve(CLI::App* cmd) const {
    SweepConfig c;
    if (!config.empty()) load_config_file(config, c);
    for (const auto& [key, value] : values)
      if (cmd->count("--" + key) > 0) apply_entry(c, key, value);
    if (!states.empty()) c.states = states;
    if (!pairs.empty()) c.pairs = pairs;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum illumination SNR engine"};
  app.require_subcommand(1);
  unsigned jobs = 0;
  bool json = false;
  app.add_option("--jobs", jobs, "worker threads (0 = hardware)");

  Flags sweep_flags, ratio_flags, cross_flags, opt_flags;
  auto* sweep = app.add_subcommand("sweep", "SNR of each state over an N_S grid, as CSV");
  sweep_flags.add(sweep, false);
  auto* ratio = app.add_subcommand("ratio", "SNR ratios of state pairs over an N_S grid, as CSV");
  ratio_flags.add(ratio, true);

  auto* cross = app.add_subcommand("crossover", "N_S where two states exchange order");
  cross_flags.add(cross, false);
  std::vector<std::string> cross_states;
  cross->add_option("states", cross_states, "two states")->expected(2)->required();
  cross->add_flag("--json", json);

  auto* opt = app.add_subcommand("optimize", "best coherent/squeezed split of a DS probe");
  opt_flags.add(opt, false);
  double opt_ns = 1.0;
  opt->add_option("--ns", opt_ns, "signal photon number");
  opt->add_flag("--json", json);

  auto* check = app.add_subcommand("check", "invariant suite over the parameter lattice");
  check->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      SweepConfig c = sweep_flags.resolve(sweep);
      c.jobs = jobs;
      return cmd_sweep(c, std::cout, std::cerr);
    }
    if (ratio->parsed()) {
      SweepConfig c = ratio_flags.resolve(ratio);
      c.jobs = jobs;
      return cmd_ratio(c, std::cout, std::cerr);
    }
    if (cross->parsed()) {
      SweepConfig c = cross_flags.resolve(cross);
      c.jobs = jobs;
      return cmd_crossover(c, cross_states[0], cross_states[1], json, std::cout, std::cerr);
    }
    if (opt->parsed()) {
      SweepConfig c = opt_flags.resolve(opt);
      c.jobs = jobs;
      return cmd_optimize(c, opt_ns, json, std::cout, std::cerr);
    }
    if (check->parsed()) return cmd_check(jobs, json, std::cout, std::cerr);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kNoConvergence;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
