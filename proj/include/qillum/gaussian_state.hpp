#pragma once

// Post-target Gaussian states for the three probe families.
//
// Quadrature ordering is (x_1, p_1, x_2, p_2, ...), a = (x + i p)/sqrt(2),
// and the covariance is sigma_ij = <R_i R_j + R_j R_i> - 2<R_i><R_j>, so the
// vacuum has sigma = I and a coherent amplitude alpha has mean
// sqrt(2) (Re alpha, Im alpha).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

#include "qillum/probe.hpp"

namespace qillum {

template <typename Scalar>
struct GaussianState {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int n_modes = 0;
  Vector mean;
  Matrix cov;

  GaussianState() = default;
  explicit GaussianState(int modes)
      : n_modes(modes),
        mean(Vector::Zero(2 * modes)),
        cov(Matrix::Identity(2 * modes, 2 * modes)) {}

  /// Reduced state of one mode.
  GaussianState reduced(int mode) const {
    if (mode < 0 || mode >= n_modes) throw DomainError("mode index out of range");
    GaussianState out(1);
    out.mean = mean.template segment<2>(2 * mode);
    out.cov = cov.template block<2, 2>(2 * mode, 2 * mode);
    return out;
  }
};

using GaussianStated = GaussianState<double>;

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> symplectic_form(int n_modes) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> omega =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

template <typename Scalar>
bool is_symmetric(const GaussianState<Scalar>& state, Scalar rel_tol = Scalar(1e-12)) {
  const Scalar scale = state.cov.cwiseAbs().maxCoeff();
  return (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

/// Eigenvalues of the Hermitian matrix sigma + i Omega (ascending).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> uncertainty_eigenvalues(const GaussianState<Scalar>& state) {
  using Complex = std::complex<Scalar>;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const CMatrix h = state.cov.template cast<Complex>() +
                    Complex(0, 1) * symplectic_form<Scalar>(state.n_modes).template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Symplectic eigenvalues nu_k (ascending), from the spectrum of the Hermitian
/// matrix sigma^{1/2} (i Omega) sigma^{1/2}, whose eigenvalues are +-nu_k.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> symplectic_eigenvalues(const GaussianState<Scalar>& state) {
  using Complex = std::complex<Scalar>;
  using Matrix = typename GaussianState<Scalar>::Matrix;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Matrix> root(state.cov);
  const Matrix half = root.operatorSqrt();
  const CMatrix h = Complex(0, 1) * (half * symplectic_form<Scalar>(state.n_modes) * half).template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  // eigenvalues come in +-nu pairs; the upper half are the nu_k
  return solver.eigenvalues().tail(state.n_modes);
}

/// sigma + i Omega >= 0 within tol.
template <typename Scalar>
bool is_physical(const GaussianState<Scalar>& state, Scalar tol = Scalar(1e-9)) {
  return is_symmetric(state) && uncertainty_eigenvalues(state).minCoeff() >= -tol;
}

/// <a^dag a> of one mode.
template <typename Scalar>
Scalar mean_photon(const GaussianState<Scalar>& state, int mode) {
  if (mode < 0 || mode >= state.n_modes) throw DomainError("mode index out of range");
  const int x = 2 * mode;
  const int p = x + 1;
  return (state.cov(x, x) + state.cov(p, p) - Scalar(2)) / Scalar(4) +
         (state.mean(x) * state.mean(x) + state.mean(p) * state.mean(p)) / Scalar(2);
}

/// Reflected DS probe: sigma = [[A1 - A2 cos t, -A2 sin t], [-A2 sin t, A1 + A2 cos t]]
/// with A1 = 1 + 2 N_B + 2 kappa N_sq, A2 = 2 kappa sqrt(N_sq (N_sq + 1)),
/// t the squeezing phase; mean sqrt(2 kappa) |alpha| (cos phi, sin phi).
template <typename Scalar = double>
GaussianState<Scalar> build_ds_output(const ProbeSpec& spec, Scalar kappa, Scalar n_bath) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (spec.kind != ProbeKind::DisplacedSqueezed) throw DomainError("build_ds_output needs a DS probe");
  require_kappa(static_cast<double>(kappa));
  require_bath(static_cast<double>(n_bath));
  const Scalar n_sq = static_cast<Scalar>(spec.squeezed_photons());
  const Scalar a1 = Scalar(1) + Scalar(2) * n_bath + Scalar(2) * kappa * n_sq;
  const Scalar a2 = Scalar(2) * kappa * sqrt(n_sq * (n_sq + Scalar(1)));
  const Scalar t = static_cast<Scalar>(spec.squeeze_phase);
  const Scalar phi = static_cast<Scalar>(spec.alpha_phase);

  GaussianState<Scalar> out(1);
  out.cov << a1 - a2 * cos(t), -a2 * sin(t),
             -a2 * sin(t), a1 + a2 * cos(t);
  const Scalar amp = sqrt(Scalar(2) * kappa) * static_cast<Scalar>(spec.alpha_mag);
  out.mean << amp * cos(phi), amp * sin(phi);
  return out;
}

/// Reflected TMSV: signal block B I, idler block (1 + 2 N_S) I, correlation
/// diag(C, -C), B = 1 + 2 N_B + 2 kappa N_S, C = 2 sqrt(kappa N_S (N_S + 1)).
template <typename Scalar = double>
GaussianState<Scalar> build_tmsv_output(Scalar n_signal, Scalar kappa, Scalar n_bath) {
  using std::sqrt;
  require_nonnegative(static_cast<double>(n_signal), "n_signal");
  require_kappa(static_cast<double>(kappa));
  require_bath(static_cast<double>(n_bath));
  const Scalar b = Scalar(1) + Scalar(2) * n_bath + Scalar(2) * kappa * n_signal;
  const Scalar c = Scalar(2) * sqrt(kappa * n_signal * (n_signal + Scalar(1)));
  const Scalar idler = Scalar(1) + Scalar(2) * n_signal;
  GaussianState<Scalar> out(2);
  out.cov << b, 0, c, 0,
             0, b, 0, -c,
             c, 0, idler, 0,
             0, -c, 0, idler;
  return out;
}

/// Reflected CCT: as TMSV but correlation diag(D, D), D = 2 sqrt(kappa N_S N_I),
/// idler block (1 + 2 N_I) I.
template <typename Scalar = double>
GaussianState<Scalar> build_cct_output(Scalar n_signal, Scalar n_idler, Scalar kappa, Scalar n_bath) {
  using std::sqrt;
  require_nonnegative(static_cast<double>(n_signal), "n_signal");
  require_nonnegative(static_cast<double>(n_idler), "n_idler");
  require_kappa(static_cast<double>(kappa));
  require_bath(static_cast<double>(n_bath));
  const Scalar b = Scalar(1) + Scalar(2) * n_bath + Scalar(2) * kappa * n_signal;
  const Scalar d = Scalar(2) * sqrt(kappa * n_signal * n_idler);
  const Scalar idler = Scalar(1) + Scalar(2) * n_idler;
  GaussianState<Scalar> out(2);
  out.cov << b, 0, d, 0,
             0, b, 0, d,
             d, 0, idler, 0,
             0, d, 0, idler;
  return out;
}

template <typename Scalar = double>
GaussianState<Scalar> build_output(const ProbeSpec& spec, Scalar kappa, Scalar n_bath) {
  switch (spec.kind) {
    case ProbeKind::DisplacedSqueezed:
      return build_ds_output<Scalar>(spec, kappa, n_bath);
    case ProbeKind::Tmsv:
      return build_tmsv_output<Scalar>(static_cast<Scalar>(spec.n_signal), kappa, n_bath);
    case ProbeKind::Cct:
      return build_cct_output<Scalar>(static_cast<Scalar>(spec.n_signal),
                                      static_cast<Scalar>(spec.n_idler), kappa, n_bath);
  }
  throw DomainError("unknown probe kind");
}

template <typename Scalar = double>
GaussianState<Scalar> build_output(const Scenario& scenario) {
  return build_output<Scalar>(scenario.probe, static_cast<Scalar>(scenario.kappa),
                              static_cast<Scalar>(scenario.n_bath));
}

/// The probe itself, before the target: unit reflectivity and no bath.
template <typename Scalar = double>
GaussianState<Scalar> build_input(const ProbeSpec& spec) {
  return build_output<Scalar>(spec, Scalar(1), Scalar(0));
}

}  // namespace qillum
