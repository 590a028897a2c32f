#pragma once

#include <array>

#include "qillum/bargmann.hpp"
#include "qillum/probe.hpp"

namespace qillum {

/// Click statistics. Two-mode probes fill p_joint in the order
/// (on,on), (on,off), (off,on), (off,off) with (signal, idler); single-mode
/// probes use p_joint[0] = P(on), p_joint[1] = P(off).
struct OnOffStats {
  std::array<double, 4> p_joint{};
  int n_outcomes = 4;
  double mean_obs = 0.0;
  double var_obs = 0.0;
};

struct PnrStats {
  double mean_obs = 0.0;
  double var_obs = 0.0;
};

/// Outcome probabilities as analytic functions of kappa (finite kappa of
/// either sign, for difference stencils).
OnOffStats onoff_probabilities(const ProbeSpec& probe, double kappa, double n_bath);

/// Statistics for the scenario's probe and bath at reflectivity kappa_override.
OnOffStats onoff_stats(const Scenario& scenario, double kappa_override);
inline OnOffStats onoff_stats(const Scenario& scenario) { return onoff_stats(scenario, scenario.kappa); }

/// <O>_kappa - <O>_0 evaluated without cancellation.
double onoff_mean_shift(const Scenario& scenario);

/// Coarse-grains a Fock grid into click outcomes. Throws if the grid tail
/// exceeds tol.
OnOffStats onoff_joint_from_grid(const ProbabilityGrid& grid, double tol = 1e-6);

PnrStats pnr_stats_single(const Scenario& scenario, double kappa_override);
PnrStats pnr_stats_joint(const Scenario& scenario, double kappa_override);
PnrStats pnr_stats(const Scenario& scenario, double kappa_override);

/// <n>_kappa - <n>_0 (signal counts, or coincidence counts for two modes).
double pnr_mean_shift(const Scenario& scenario);

}  // namespace qillum
