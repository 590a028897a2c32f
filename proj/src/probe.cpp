#include "qillum/probe.hpp"

#include <cmath>

namespace qillum {

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::DisplacedSqueezed: return "ds";
    case ProbeKind::Tmsv: return "tmsv";
    case ProbeKind::Cct: return "cct";
  }
  return "?";
}

std::string_view to_string(Detector detector) {
  return detector == Detector::OnOff ? "onoff" : "pnr";
}

std::string_view to_string(Method method) {
  return method == Method::Coincidence ? "cc" : "fi";
}

Detector parse_detector(std::string_view text) {
  if (text == "onoff" || text == "on-off") return Detector::OnOff;
  if (text == "pnr") return Detector::Pnr;
  throw DomainError("unknown detector '" + std::string(text) + "'");
}

Method parse_method(std::string_view text) {
  if (text == "cc") return Method::Coincidence;
  if (text == "fi") return Method::Fisher;
  throw DomainError("unknown method '" + std::string(text) + "'");
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw DomainError(std::string(name) + " must be finite and >= 0");
}

void require_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw DomainError("kappa must lie in [0, 1]");
}

void require_bath(double n_bath) { require_nonnegative(n_bath, "n_bath"); }

ProbeSpec ProbeSpec::coherent(double n_signal, double alpha_phase) {
  require_nonnegative(n_signal, "n_signal");
  return displaced_squeezed(std::sqrt(n_signal), alpha_phase, 0.0, 0.0);
}

ProbeSpec ProbeSpec::displaced_squeezed(double alpha_mag, double alpha_phase,
                                        double squeeze_mag,
                                        double squeeze_phase) {
  require_nonnegative(alpha_mag, "alpha_mag");
  require_nonnegative(squeeze_mag, "squeeze_mag");
  ProbeSpec p;
  p.kind = ProbeKind::DisplacedSqueezed;
  p.alpha_mag = alpha_mag;
  p.alpha_phase = alpha_phase;
  p.squeeze_mag = squeeze_mag;
  p.squeeze_phase = squeeze_phase;
  p.n_signal = p.alpha_sq() + p.squeezed_photons();
  return p;
}

ProbeSpec ProbeSpec::displaced_squeezed_split(double n_signal, double split,
                                              double alpha_phase,
                                              double squeeze_phase) {
  require_nonnegative(n_signal, "n_signal");
  if (!(split >= 0.0 && split <= 1.0))
    throw DomainError("split must lie in [0, 1]");
  const double n_sq = (1.0 - split) * n_signal;
  ProbeSpec p = displaced_squeezed(std::sqrt(split * n_signal), alpha_phase,
                                   std::asinh(std::sqrt(n_sq)), squeeze_phase);
  // keep N_S exact rather than round-tripping through asinh/sinh
  p.n_signal = n_signal;
  return p;
}

ProbeSpec ProbeSpec::tmsv(double n_signal) {
  require_nonnegative(n_signal, "n_signal");
  ProbeSpec p;
  p.kind = ProbeKind::Tmsv;
  p.n_signal = n_signal;
  return p;
}

ProbeSpec ProbeSpec::cct(double n_signal, double n_idler) {
  require_nonnegative(n_signal, "n_signal");
  require_nonnegative(n_idler, "n_idler");
  ProbeSpec p;
  p.kind = ProbeKind::Cct;
  p.n_signal = n_signal;
  p.n_idler = n_idler;
  return p;
}

double ProbeSpec::squeezed_photons() const noexcept {
  const double s = std::sinh(squeeze_mag);
  return s * s;
}

double ProbeSpec::signal_photons() const noexcept { return n_signal; }

double ProbeSpec::idler_photons() const noexcept {
  switch (kind) {
    case ProbeKind::DisplacedSqueezed: return 0.0;
    case ProbeKind::Tmsv: return n_signal;
    case ProbeKind::Cct: return n_idler;
  }
  return 0.0;
}

void ProbeSpec::validate() const {
  require_nonnegative(n_signal, "n_signal");
  if (kind == ProbeKind::DisplacedSqueezed) {
    require_nonnegative(alpha_mag, "alpha_mag");
    require_nonnegative(squeeze_mag, "squeeze_mag");
    if (!std::isfinite(alpha_phase) || !std::isfinite(squeeze_phase))
      throw DomainError("phases must be finite");
    const double expected = alpha_sq() + squeezed_photons();
    if (std::abs(expected - n_signal) > 1e-9 * (1.0 + expected))
      throw DomainError("DS probe violates N_S = |alpha|^2 + sinh^2 r");
  }
  if (kind == ProbeKind::Cct) require_nonnegative(n_idler, "n_idler");
}

void Scenario::validate() const {
  probe.validate();
  require_kappa(kappa);
  require_bath(n_bath);
  if (modes < 1) throw DomainError("modes must be >= 1");
}

}  // namespace qillum
