#include <array>
#include <cmath>
#include <limits>

#include "qillum/oracle.hpp"

namespace qillum::oracle {
namespace {

double sum_fi(const OnOffStats& base, const std::array<double, 4>& deriv) {
  double fi = 0.0;
  for (int i = 0; i < base.n_outcomes; ++i) {
    if (deriv[i] == 0.0) continue;
    if (base.p_joint[i] <= 0.0) return std::numeric_limits<double>::infinity();
    fi += deriv[i] * deriv[i] / base.p_joint[i];
  }
  return fi;
}

}  // namespace

double fi_analytic_check(const Scenario& scenario, Detector detector) {
  if (detector != Detector::OnOff) throw UnsupportedError("analytic FI is only available for on-off detection");
  scenario.validate();
  const ProbeSpec& p = scenario.probe;
  const double nb = scenario.n_bath;
  const double ns = p.n_signal;
  const double b1 = 1.0 + nb;
  const OnOffStats base = onoff_probabilities(p, 0.0, nb);

  if (p.kind == ProbeKind::DisplacedSqueezed) {
    // P_off = exp(g) / sqrt(L); g(0) = 0, L(0) = (N_B + 1)^2
    const double g1 = -p.alpha_sq() * (2.0 + 2.0 * nb) / (2.0 * b1 * b1);
    const double l1 = p.squeezed_photons() * (2.0 + 2.0 * nb);
    const double off = base.p_joint[1] * g1 - 0.5 * l1 / (b1 * b1 * b1);
    return sum_fi(base, {-off, off, 0.0, 0.0});
  }

  // signal vacuum 1/(1 + N_B + kappa N_S)
  const double ps1 = -ns / (b1 * b1);
  double p00_1 = 0.0;
  if (p.kind == ProbeKind::Cct) {
    const double f0 = (1.0 + p.n_idler) * b1;
    p00_1 = -ns / (f0 * f0);
  }
  // (on,on) = 1 - ps - pi + p00, (on,off) = pi - p00, (off,on) = ps - p00, (off,off) = p00
  return sum_fi(base, {-ps1 + p00_1, -p00_1, ps1 - p00_1, p00_1});
}

}  // namespace qillum::oracle
