#pragma once

// Exponential generating functions (Bargmann kernels) of the reflected
// states, and extraction of their diagonal Fock-basis elements.
//
// A K-mode kernel is written over the 2K variables (z_1..z_K, w*_1..w*_K) as
//
//   K(v) = exp(log_prefactor) * exp(const_term + sum_i lin_i v_i
//                                   + sum_{i<=j} quad(i, j) v_i v_j)
//
// (quad is stored symmetric, the i != j coefficient appearing once in the
// exponent). <n|rho|m> = sqrt(n! m!) * [coefficient of z^n w*^m].

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qillum/probe.hpp"

namespace qillum {

/// Geometric envelope of one mode's photon-number marginal, P(n > N) <=
/// factor * ratio^(N + 1).
struct ModeEnvelope {
  double ratio = 0.0;
  double factor = 1.0;
};

struct BargmannForm {
  int n_modes = 1;
  double log_prefactor = 0.0;
  Eigen::MatrixXcd quad;
  Eigen::VectorXcd lin;
  std::complex<double> const_term = 0.0;
  std::vector<ModeEnvelope> envelopes;
  /// Optional closed forms of 1 - quad(z_i, w*_i) per mode. When present the
  /// extractor takes log(1 - gap) via log1p, which keeps a^n accurate for
  /// a close to 1 and n large.
  std::vector<double> diag_gap;

  int n_vars() const noexcept { return 2 * n_modes; }
  int z(int mode) const noexcept { return mode; }
  int w(int mode) const noexcept { return n_modes + mode; }
  /// Coefficient of v_i v_j as it appears in the exponent.
  std::complex<double> pair(int i, int j) const { return quad(i, j); }
};

/// Kernel of the reflected state for a validated scenario.
BargmannForm bargmann_of(const Scenario& scenario);

/// Kernel as an analytic function of kappa. The diagonal elements depend on
/// kappa only through integer powers of sqrt(kappa) pairs, so any finite kappa
/// is accepted (sqrt(kappa) is continued to i sqrt(|kappa|) below zero); used
/// by finite-difference stencils around kappa = 0. Outside [0, 1] the
/// "probabilities" are analytic values and may be negative.
BargmannForm bargmann_at(const ProbeSpec& probe, double kappa, double n_bath);

/// Single-mode thermal kernel with mean photon number n.
BargmannForm thermal_form(double n);

/// Invariance under z_i <-> w*_i with complex conjugation.
bool is_hermitian(const BargmannForm& form, double tol = 1e-12);

/// A diagonal element as sign * exp(log_abs). imag_ratio is |Im| / |value|
/// of the accumulated coefficient before the imaginary part is dropped.
/// Sums that cancel below ~1e-13 of their largest term are reported as 0.
struct DiagonalValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;
  double imag_ratio = 0.0;
  double value() const;
};

/// Closed multinomial summation of diagonal coefficients. Supported
/// structures: one mode with arbitrary quadratic and linear terms; two modes
/// with z_1 w*_1, z_2 w*_2, z_1 z_2, w*_1 w*_2, z_1 w*_2, z_2 w*_1 couplings
/// and no linear or squared terms.
class DiagonalExtractor {
public:
  explicit DiagonalExtractor(const BargmannForm& form);

  /// Precomputes tables up to the given occupation. Not thread safe; call
  /// before concurrent use of operator().
  void reserve(int max_occupation);
  int reserved() const noexcept { return reserved_; }

  DiagonalValue operator()(std::span<const int> occ) const;
  DiagonalValue operator()(int n) const;
  DiagonalValue operator()(int n, int m) const;

  const BargmannForm& form() const noexcept { return form_; }

private:
  struct LogCoeff {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;
    bool zero() const noexcept { return log_mag == -std::numeric_limits<double>::infinity(); }
  };
  static LogCoeff to_log(std::complex<double> c);

  DiagonalValue single(int n) const;
  DiagonalValue pair(int n, int m) const;
  DiagonalValue finish(double log_mag, double phase, double peak) const;
  void extend_hermite(int upto);

  BargmannForm form_;
  int reserved_ = -1;
  std::vector<double> log_factorial_;
  // single mode: exp(a z w + b z^2 + b2 w^2 + c z + c2 w)
  LogCoeff a_, b_, b2_, c_, c2_;
  std::vector<LogCoeff> h_, h2_;  // Taylor coefficients of exp(b z^2 + c z), exp(b2 w^2 + c2 w)
  // two modes: a z1w1 + b z2w2 + g1 z1z2 + g2 w1w2 + f1 z1w2 + f2 z2w1
  LogCoeff g_, f_;  // products g1 g2 and f1 f2
};

/// log <n|rho|n> for the occupation vector occ (one entry per mode).
double number_prob(const BargmannForm& form, std::span<const int> occ);
inline double number_prob(const BargmannForm& form, std::initializer_list<int> occ) {
  return number_prob(form, std::span<const int>(occ.begin(), occ.size()));
}

/// Truncated diagonal distribution. Single-mode grids store dims = {N},
/// two-mode grids dims = {N_signal, N_idler}, row-major in the signal index.
struct ProbabilityGrid {
  std::vector<int> dims;
  std::vector<double> log_probs;
  double tail_mass = 0.0;

  int n_modes() const noexcept { return static_cast<int>(dims.size()); }
  int rows() const noexcept { return dims.empty() ? 0 : dims[0] + 1; }
  int cols() const noexcept { return dims.size() < 2 ? 1 : dims[1] + 1; }
  std::size_t index(int n, int m = 0) const noexcept {
    return static_cast<std::size_t>(n) * cols() + m;
  }
  double log_prob(int n, int m = 0) const { return log_probs[index(n, m)]; }
  double prob(int n, int m = 0) const;
  double total() const;
};

struct GridOptions {
  int max_per_mode = 4'000'000;
  std::size_t max_entries = 60'000'000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Grows per-mode truncation until the certified tail bound is at most
/// target_tail. Two-mode grids report the union of the per-mode envelope
/// bounds; single-mode grids report the exact deficit 1 - sum (the kernel is
/// trace normalised) after the envelope has certified the truncation.
ProbabilityGrid prob_grid(const BargmannForm& form, double target_tail, const GridOptions& options = {});

/// Smallest N with factor * ratio^(N + 1) <= tail.
int envelope_cutoff(const ModeEnvelope& envelope, double tail);

void write_grid_csv(std::ostream& out, const ProbabilityGrid& grid,
                    const std::map<std::string, std::string>& params = {});
ProbabilityGrid read_grid_csv(std::istream& in, std::map<std::string, std::string>* params = nullptr);

}  // namespace qillum
