#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qillum {

/// Parameter outside the admissible domain (negative photon numbers,
/// reflectivity outside [0, 1], bad mode index, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Requested a feature the engine deliberately does not cover.
class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A numerical procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// A truncation or memory cap was hit before the target accuracy.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

enum class ProbeKind { DisplacedSqueezed, Tmsv, Cct };

enum class Detector { OnOff, Pnr };

enum class Method { Coincidence, Fisher };

std::string_view to_string(ProbeKind kind);
std::string_view to_string(Detector detector);
std::string_view to_string(Method method);

Detector parse_detector(std::string_view text);
Method parse_method(std::string_view text);

/// Input probe. Single-mode probes are displaced squeezed states
/// D(alpha) S(xi)|0>, alpha = alpha_mag e^{i alpha_phase},
/// xi = squeeze_mag e^{i squeeze_phase}. Two-mode probes carry a signal
/// photon number and, for CCT, an idler photon number.
struct ProbeSpec {
  ProbeKind kind = ProbeKind::DisplacedSqueezed;
  double alpha_mag = 0.0;
  double alpha_phase = 0.0;
  double squeeze_mag = 0.0;
  double squeeze_phase = 0.0;
  double n_signal = 0.0;
  double n_idler = 0.0;  // CCT only

  static ProbeSpec coherent(double n_signal, double alpha_phase = 0.0);
  static ProbeSpec displaced_squeezed(double alpha_mag, double alpha_phase,
                                      double squeeze_mag,
                                      double squeeze_phase);
  /// Splits n_signal into |alpha|^2 = split * n_signal and
  /// sinh^2 r = (1 - split) * n_signal.
  static ProbeSpec displaced_squeezed_split(double n_signal, double split,
                                            double alpha_phase = 0.0,
                                            double squeeze_phase = 0.0);
  static ProbeSpec tmsv(double n_signal);
  static ProbeSpec cct(double n_signal, double n_idler);

  bool two_mode() const noexcept { return kind != ProbeKind::DisplacedSqueezed; }
  double alpha_sq() const noexcept { return alpha_mag * alpha_mag; }
  /// sinh^2 r
  double squeezed_photons() const noexcept;
  /// N_S; for DS this is |alpha|^2 + sinh^2 r.
  double signal_photons() const noexcept;
  /// Effective idler photon number (0 for single-mode, N_S for TMSV).
  double idler_photons() const noexcept;

  void validate() const;
};

struct Scenario {
  ProbeSpec probe;
  double kappa = 0.0;
  double n_bath = 0.0;
  std::uint64_t modes = 1;

  Scenario with_kappa(double k) const {
    Scenario s = *this;
    s.kappa = k;
    return s;
  }
  void validate() const;
};

void require_kappa(double kappa);
void require_bath(double n_bath);
void require_nonnegative(double value, const char* name);

}  // namespace qillum
