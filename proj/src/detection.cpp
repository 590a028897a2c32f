#include "qillum/detection.hpp"

#include <cmath>

#include "qillum/moments.hpp"

namespace qillum {
namespace {

struct DsVacuum {
  double log_p_off;  // log P(off)
  double g;          // exponent
  double u;          // L = (N_B + 1)^2 (1 + u)
};

DsVacuum ds_vacuum(const ProbeSpec& p, double kappa, double nb) {
  const double n_sq = p.squeezed_photons();
  const double a1 = 1.0 + 2.0 * nb + 2.0 * kappa * n_sq;
  const double a2 = 2.0 * kappa * std::sqrt(n_sq * (n_sq + 1.0));
  const double u = kappa * n_sq * (2.0 + 2.0 * nb - kappa) / ((nb + 1.0) * (nb + 1.0));
  if (!(u > -1.0)) throw DomainError("DS vacuum normalisation L must be positive");
  const double l = (nb + 1.0) * (nb + 1.0) * (1.0 + u);
  const double g = -kappa * p.alpha_sq() * (a1 + 1.0 + a2 * std::cos(p.squeeze_phase - 2.0 * p.alpha_phase)) / (2.0 * l);
  return {g - std::log1p(nb) - 0.5 * std::log1p(u), g, u};
}

OnOffStats from_marginals(double p_signal_off, double p_idler_off, double p_both_off) {
  OnOffStats s;
  s.n_outcomes = 4;
  s.p_joint = {1.0 - p_signal_off - p_idler_off + p_both_off, p_idler_off - p_both_off,
               p_signal_off - p_both_off, p_both_off};
  s.mean_obs = s.p_joint[0];
  s.var_obs = s.mean_obs * (1.0 - s.mean_obs);
  return s;
}

OnOffStats from_single(double p_off) {
  OnOffStats s;
  s.n_outcomes = 2;
  s.p_joint = {1.0 - p_off, p_off, 0.0, 0.0};
  s.mean_obs = s.p_joint[0];
  s.var_obs = s.mean_obs * (1.0 - s.mean_obs);
  return s;
}

}  // namespace

OnOffStats onoff_probabilities(const ProbeSpec& probe, double kappa, double nb) {
  probe.validate();
  require_bath(nb);
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  const double ns = probe.n_signal;
  switch (probe.kind) {
    case ProbeKind::DisplacedSqueezed:
      return from_single(std::exp(ds_vacuum(probe, kappa, nb).log_p_off));
    case ProbeKind::Tmsv:
      return from_marginals(1.0 / (1.0 + nb + kappa * ns), 1.0 / (1.0 + ns),
                            1.0 / ((1.0 + ns) * (1.0 + nb)));
    case ProbeKind::Cct: {
      const double ni = probe.n_idler;
      return from_marginals(1.0 / (1.0 + nb + kappa * ns), 1.0 / (1.0 + ni),
                            1.0 / ((1.0 + ni) * (1.0 + nb) + kappa * ns));
    }
  }
  throw DomainError("unknown probe kind");
}

OnOffStats onoff_stats(const Scenario& scenario, double kappa_override) {
  scenario.validate();
  require_kappa(kappa_override);
  return onoff_probabilities(scenario.probe, kappa_override, scenario.n_bath);
}

double onoff_mean_shift(const Scenario& scenario) {
  scenario.validate();
  const ProbeSpec& p = scenario.probe;
  const double k = scenario.kappa;
  const double nb = scenario.n_bath;
  const double x = k * p.n_signal;
  const double a = 1.0 + nb;
  switch (p.kind) {
    case ProbeKind::DisplacedSqueezed: {
      const DsVacuum v = ds_vacuum(p, k, nb);
      return -std::expm1(v.g - 0.5 * std::log1p(v.u)) / a;
    }
    case ProbeKind::Tmsv:
      return x / (a * (a + x));
    case ProbeKind::Cct: {
      const double ni = p.n_idler;
      const double b = a * (1.0 + ni);
      // x/(a(a+x)) - x/(b(b+x)) with b - a = a N_I
      return x * ni * (a + b + x) / ((a + x) * b * (b + x));
    }
  }
  throw DomainError("unknown probe kind");
}

OnOffStats onoff_joint_from_grid(const ProbabilityGrid& grid, double tol) {
  if (grid.tail_mass > tol) throw ConvergenceError("grid tail exceeds the requested tolerance", grid.tail_mass);
  if (grid.n_modes() == 1) return from_single(grid.prob(0));
  if (grid.n_modes() != 2) throw DomainError("grid must cover one or two modes");
  double off_on = 0.0, on_off = 0.0;
  for (int m = 1; m < grid.cols(); ++m) off_on += grid.prob(0, m);
  for (int n = 1; n < grid.rows(); ++n) on_off += grid.prob(n, 0);
  const double both_off = grid.prob(0, 0);
  OnOffStats s;
  s.n_outcomes = 4;
  s.p_joint = {1.0 - on_off - off_on - both_off, on_off, off_on, both_off};
  s.mean_obs = s.p_joint[0];
  s.var_obs = s.mean_obs * (1.0 - s.mean_obs);
  return s;
}

PnrStats pnr_stats_single(const Scenario& scenario, double kappa_override) {
  scenario.validate();
  require_kappa(kappa_override);
  if (scenario.probe.two_mode()) throw DomainError("pnr_stats_single needs a single-mode probe");
  const double nb = scenario.n_bath;
  const double k = kappa_override;
  const double n_in = scenario.probe.n_signal;
  PnrStats s;
  s.mean_obs = k * n_in + nb;
  s.var_obs = nb * (1.0 + nb);
  if (n_in > 0.0) s.var_obs += k * n_in * (1.0 + 2.0 * nb + k * mandel_q(scenario.probe));
  return s;
}

PnrStats pnr_stats_joint(const Scenario& scenario, double kappa_override) {
  scenario.validate();
  require_kappa(kappa_override);
  if (!scenario.probe.two_mode()) throw DomainError("pnr_stats_joint needs a two-mode probe");
  const InputMoments in = input_moments(scenario.probe);
  const double nb = scenario.n_bath;
  const double k = kappa_override;
  PnrStats s;
  s.mean_obs = k * in.n_si + nb * in.n_i;
  s.var_obs = k * k * (in.n_si_sq - in.n_si * in.n_si) + nb * in.n_i2 +
              nb * nb * (2.0 * in.n_i2 - in.n_i * in.n_i) - 2.0 * k * nb * in.n_si * in.n_i +
              k * (1.0 - k + 4.0 * nb) * in.n_s_n_i2;
  return s;
}

PnrStats pnr_stats(const Scenario& scenario, double kappa_override) {
  return scenario.probe.two_mode() ? pnr_stats_joint(scenario, kappa_override)
                                   : pnr_stats_single(scenario, kappa_override);
}

double pnr_mean_shift(const Scenario& scenario) {
  scenario.validate();
  if (!scenario.probe.two_mode()) return scenario.kappa * scenario.probe.n_signal;
  return scenario.kappa * input_moments(scenario.probe).n_si;
}

}  // namespace qillum
