#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qillum/bargmann.hpp"
#include "qillum/detection.hpp"
#include "qillum/probe.hpp"

namespace qillum {

struct Diagnostics {
  double step = 0.0;            // final difference step in kappa
  int halvings = 0;
  double richardson_gap = 0.0;  // relative FI change between refinement levels
  double grid_tail = 0.0;
  std::vector<int> grid_dims;
  double shell_fraction = 0.0;  // estimated FI share beyond the grid
};

struct SnrReport {
  Method method = Method::Coincidence;
  Detector detector = Detector::OnOff;
  double exact = 0.0;
  double asymptotic = 0.0;
  bool infinite = false;
  Scenario scenario;
  Diagnostics diagnostics;
};

struct FisherOptions {
  double rel_tol = 1e-6;
  double pnr_tail = 1e-10;
  double shell_tol = 1e-8;
  int max_halvings = 10;
  GridOptions grid;
};

struct FisherResult {
  double value = 0.0;         // classical FI at kappa = 0
  double onoff_coarse = 0.0;  // PNR: FI of the click coarse-graining of the same grid
  Diagnostics diagnostics;
};

/// Initial central-difference step in kappa for the probe.
double fisher_step(const ProbeSpec& probe, double n_bath);

/// Sum_i [d_kappa P_i]^2 / P_i at kappa = 0 by Richardson-refined central
/// differences. On-off uses the closed-form click probabilities; PNR sums
/// over a certified Fock grid. Infinite when an outcome impossible at
/// kappa = 0 acquires probability at first order.
FisherResult fisher_information(const Scenario& scenario, Detector detector, const FisherOptions& options = {});

/// Coincidence-counting SNR, M (<O>_k - <O>_0)^2 / (2 [sqrt(V_k) + sqrt(V_0)]^2).
SnrReport snr_cc(const Scenario& scenario, Detector detector);

/// Fisher-information SNR, (M kappa^2 / 8) FI.
SnrReport snr_fi(const Scenario& scenario, Detector detector, const FisherOptions& options = {});

SnrReport snr(const Scenario& scenario, Method method, Detector detector, const FisherOptions& options = {});

enum class AsymptoticForm { Table, Refined };

/// Closed-form limits N_S, N_I, kappa << 1 << N_B. Refined forms keep the
/// (N_B + 1) factors and exist for every FI cell and for two-mode PNR
/// coincidences; elsewhere Refined falls back to the Table form.
double asymptotic_snr(const Scenario& scenario, Method method, Detector detector,
                      AsymptoticForm form = AsymptoticForm::Refined);
bool has_refined_form(ProbeKind kind, Method method, Detector detector);

struct ErrorProb {
  double value = 0.5;
  bool clamped = false;
};

/// exp(-snr), clamped to 1/2.
ErrorProb error_prob(double snr);

struct SplitOptimum {
  double split = 1.0;     // |alpha|^2 / N_S
  double alpha_sq = 0.0;
  double snr = 0.0;
  bool degenerate = false;  // objective flat over the split
  bool unimodal = true;     // coarse scan found a single maximum
};

/// Maximises the DS SNR over the split at cos(phi_sq - 2 phi) = 1.
SplitOptimum optimize_ds_split(double n_signal, double kappa, double n_bath, Detector detector,
                               Method method, std::uint64_t modes = 1);

/// Golden-section maximum of a unimodal function on [lo, hi].
double golden_max(const std::function<double(double)>& fn, double lo, double hi, double tol);

/// Probe families parameterised by N_S.
struct ProbeFamily {
  ProbeKind kind = ProbeKind::DisplacedSqueezed;
  double n_idler = 1e6;  // CCT
  double split = 1.0;    // DS; 1 = coherent

  static ProbeFamily coherent() { return {}; }
  static ProbeFamily ds(double split) { return {ProbeKind::DisplacedSqueezed, 0.0, split}; }
  static ProbeFamily tmsv() { return {ProbeKind::Tmsv, 0.0, 1.0}; }
  static ProbeFamily cct(double n_idler) { return {ProbeKind::Cct, n_idler, 1.0}; }
  static ProbeFamily parse(const std::string& name, double n_idler);

  ProbeSpec at(double n_signal) const;
  std::string name() const;
};

/// N_S where SNR_a - SNR_b changes sign on [ns_min, ns_max], bisected in
/// log N_S to relative width 1e-3. nullopt when no sign change is found.
std::optional<double> find_crossover(const ProbeFamily& a, const ProbeFamily& b, double ns_min, double ns_max,
                                     const Scenario& base, Method method, Detector detector,
                                     const FisherOptions& options = {});

}  // namespace qillum
