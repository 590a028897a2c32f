#include "qillum/metrics.hpp"

#include <cmath>

namespace qillum {

SnrReport snr_cc(const Scenario& scenario, Detector detector) {
  scenario.validate();
  SnrReport r;
  r.method = Method::Coincidence;
  r.detector = detector;
  r.scenario = scenario;
  double shift = 0.0, v1 = 0.0, v0 = 0.0;
  if (detector == Detector::OnOff) {
    shift = onoff_mean_shift(scenario);
    v1 = onoff_stats(scenario, scenario.kappa).var_obs;
    v0 = onoff_stats(scenario, 0.0).var_obs;
  } else {
    shift = pnr_mean_shift(scenario);
    v1 = pnr_stats(scenario, scenario.kappa).var_obs;
    v0 = pnr_stats(scenario, 0.0).var_obs;
  }
  const double root = std::sqrt(std::max(v1, 0.0)) + std::sqrt(std::max(v0, 0.0));
  const double m = static_cast<double>(scenario.modes);
  if (root == 0.0) {
    r.infinite = shift != 0.0;
    r.exact = r.infinite ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    r.exact = m * shift * shift / (2.0 * root * root);
  }
  r.asymptotic = asymptotic_snr(scenario, Method::Coincidence, detector);
  return r;
}

SnrReport snr_fi(const Scenario& scenario, Detector detector, const FisherOptions& options) {
  const FisherResult fi = fisher_information(scenario, detector, options);
  SnrReport r;
  r.method = Method::Fisher;
  r.detector = detector;
  r.scenario = scenario;
  r.diagnostics = fi.diagnostics;
  const double pre = static_cast<double>(scenario.modes) * scenario.kappa * scenario.kappa / 8.0;
  r.infinite = std::isinf(fi.value) && pre > 0.0;
  r.exact = pre == 0.0 ? 0.0 : pre * fi.value;
  r.asymptotic = asymptotic_snr(scenario, Method::Fisher, detector);
  return r;
}

SnrReport snr(const Scenario& scenario, Method method, Detector detector, const FisherOptions& options) {
  return method == Method::Coincidence ? snr_cc(scenario, detector) : snr_fi(scenario, detector, options);
}

ErrorProb error_prob(double snr) {
  if (std::isnan(snr) || snr < 0.0) throw DomainError("snr must be >= 0");
  ErrorProb e;
  const double v = std::exp(-snr);
  e.clamped = v >= 0.5;
  e.value = e.clamped ? 0.5 : v;
  return e;
}

}  // namespace qillum
