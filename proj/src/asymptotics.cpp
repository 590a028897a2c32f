#include <cmath>

#include "qillum/metrics.hpp"
#include "qillum/moments.hpp"

namespace qillum {
namespace {

// SNR / (M kappa^2) in the deep limit
double table_cell(ProbeKind kind, Method method, Detector detector, double ns, double ni, double nb) {
  const double nb2 = nb * nb, nb3 = nb2 * nb, nb4 = nb3 * nb;
  const bool cc = method == Method::Coincidence;
  const bool onoff = detector == Detector::OnOff;
  switch (kind) {
    case ProbeKind::DisplacedSqueezed:
      return ns * ns / (8.0 * (onoff ? nb3 : nb2));
    case ProbeKind::Cct:
      if (cc) return onoff ? ns * ns * ni / (2.0 * nb4) : ns * ns * ni / (4.0 * nb2);
      return ns * ns / (8.0 * (onoff ? nb3 : nb2));
    case ProbeKind::Tmsv:
      if (cc) return onoff ? ns / (8.0 * nb4) : ns / (16.0 * nb2);
      return ns / (8.0 * (onoff ? nb3 : nb2));
  }
  throw DomainError("unknown probe kind");
}

double refined_cell(const ProbeSpec& p, Method method, Detector detector, double nb) {
  const double ns = p.n_signal, ni = p.n_idler;
  const double b1 = nb + 1.0;
  if (method == Method::Coincidence) {
    // two-mode PNR coincidences, general input moments
    const InputMoments in = input_moments(p);
    const double den = 8.0 * (nb * nb * (2.0 * in.n_i2 - in.n_i * in.n_i) + nb * in.n_i2);
    return in.n_si * in.n_si / den;
  }
  if (detector == Detector::OnOff) {
    const double base = 8.0 * nb * b1 * b1;
    switch (p.kind) {
      case ProbeKind::DisplacedSqueezed: return ns * ns / base;
      case ProbeKind::Tmsv: return ns * (ns + 1.0) / base;
      case ProbeKind::Cct: return ns * ns / base * (1.0 + ni / ((1.0 + ni) * (1.0 + ni)));
    }
  } else {
    const double base = 8.0 * nb * b1;
    switch (p.kind) {
      case ProbeKind::DisplacedSqueezed: return ns * ns / base;
      case ProbeKind::Tmsv: return ns * (1.0 + 2.0 * ns) / base;
      case ProbeKind::Cct: return ns * ns * (1.0 + 2.0 * ni) / (base * (1.0 + ni));
    }
  }
  throw DomainError("unknown probe kind");
}

}  // namespace

bool has_refined_form(ProbeKind kind, Method method, Detector detector) {
  if (method == Method::Fisher) return true;
  return detector == Detector::Pnr && kind != ProbeKind::DisplacedSqueezed;
}

double asymptotic_snr(const Scenario& scenario, Method method, Detector detector, AsymptoticForm form) {
  scenario.validate();
  const ProbeSpec& p = scenario.probe;
  const double nb = scenario.n_bath;
  const double pre = static_cast<double>(scenario.modes) * scenario.kappa * scenario.kappa;
  if (pre == 0.0) return 0.0;
  double cell;
  if (form == AsymptoticForm::Refined && has_refined_form(p.kind, method, detector))
    cell = refined_cell(p, method, detector, nb);
  else
    cell = table_cell(p.kind, method, detector, p.n_signal, p.n_idler, nb);
  return std::isfinite(cell) ? pre * cell : std::numeric_limits<double>::infinity();
}

}  // namespace qillum
