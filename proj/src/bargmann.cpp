#include "qillum/bargmann.hpp"

#include <algorithm>
#include <cmath>

namespace qillum {
namespace {

using Complex = std::complex<double>;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// terms this far below the running peak (about 1e-20) no longer matter
constexpr double kNegligible = 46.0;
// a sum this far below its largest term (about 1e-13) is rounding noise
constexpr double kCancelled = 30.0;

// Complex accumulator with a shared log scale.
class ScaledSum {
public:
  void add(double log_mag, double phase) {
    if (log_mag == kNegInf) return;
    if (log_mag > scale_) {
      acc_ = scale_ == kNegInf ? Complex(0.0) : acc_ * std::exp(scale_ - log_mag);
      scale_ = log_mag;
    }
    acc_ += std::polar(std::exp(log_mag - scale_), phase);
    peak_ = std::max(peak_, log_mag);
  }
  double log_abs() const {
    const double m = std::abs(acc_);
    return m == 0.0 ? kNegInf : scale_ + std::log(m);
  }
  double arg() const { return std::arg(acc_); }
  double peak() const { return peak_; }

private:
  double scale_ = kNegInf;
  double peak_ = kNegInf;
  Complex acc_ = 0.0;
};

// Sums term(k) over [lo, hi] for a unimodal sequence whose successive ratio
// log(term(k+1)/term(k)) = log_ratio(k) is non-increasing in k.
template <class Term, class LogRatio>
void sum_unimodal(int lo, int hi, Term&& term, LogRatio&& log_ratio, ScaledSum& acc) {
  if (lo > hi) return;
  int left = lo, right = hi;
  while (left < right) {
    const int mid = left + (right - left) / 2;
    if (log_ratio(mid) < 0.0) right = mid;
    else left = mid + 1;
  }
  const int peak = left;
  double phase = 0.0;
  const double top = term(peak, phase);
  acc.add(top, phase);
  for (int k = peak - 1; k >= lo; --k) {
    const double lm = term(k, phase);
    acc.add(lm, phase);
    if (lm < top - kNegligible) break;
  }
  for (int k = peak + 1; k <= hi; ++k) {
    const double lm = term(k, phase);
    acc.add(lm, phase);
    if (lm < top - kNegligible) break;
  }
}

Complex sqrt_kappa(double kappa) {
  return kappa >= 0.0 ? Complex(std::sqrt(kappa), 0.0) : Complex(0.0, std::sqrt(-kappa));
}

double envelope_ratio(double lambda) {
  return std::clamp((lambda - 1.0) / (lambda + 1.0), 0.0, 1.0);
}

BargmannForm ds_form(const ProbeSpec& p, double kappa, double nb) {
  const double n_sq = p.squeezed_photons();
  const double a1 = 1.0 + 2.0 * nb + 2.0 * kappa * n_sq;
  const double a2 = 2.0 * kappa * std::sqrt(n_sq * (n_sq + 1.0));
  const double l = (nb + 1.0) * (nb + 1.0) + kappa * n_sq * (2.0 + 2.0 * nb - kappa);
  if (!(l > 0.0)) throw DomainError("DS kernel normalisation L must be positive");
  const double t = p.squeeze_phase;
  const Complex alpha = std::polar(p.alpha_mag, p.alpha_phase);
  const Complex sk = sqrt_kappa(kappa);
  const Complex et = std::polar(1.0, t);

  BargmannForm f;
  f.n_modes = 1;
  f.quad = Eigen::MatrixXcd::Zero(2, 2);
  f.lin = Eigen::VectorXcd::Zero(2);
  f.quad(0, 1) = f.quad(1, 0) = (nb * (nb + 1.0) + kappa * n_sq * (1.0 + 2.0 * nb - kappa)) / l;
  f.diag_gap = {(nb + 1.0 + kappa * n_sq) / l};
  f.quad(0, 0) = -a2 * et / (4.0 * l);
  f.quad(1, 1) = -a2 * std::conj(et) / (4.0 * l);
  f.lin(0) = sk * (alpha * (a1 + 1.0) + std::conj(alpha) * et * a2) / (2.0 * l);
  f.lin(1) = sk * (std::conj(alpha) * (a1 + 1.0) + alpha * std::conj(et) * a2) / (2.0 * l);
  f.const_term = -kappa * p.alpha_sq() * (a1 + 1.0 + a2 * std::cos(2.0 * p.alpha_phase - t)) / (2.0 * l);
  f.log_prefactor = -0.5 * std::log(l);
  const bool thermal = a2 == 0.0 && (kappa == 0.0 || p.alpha_mag == 0.0);
  f.envelopes = {{envelope_ratio(a1 + std::abs(a2)), thermal ? 1.0 : 2.0}};
  return f;
}

BargmannForm tmsv_form(double ns, double kappa, double nb) {
  const double b = 1.0 + 2.0 * kappa * ns + 2.0 * nb;
  const Complex c = 2.0 * sqrt_kappa(kappa) * std::sqrt(ns * (ns + 1.0));
  const double e = (nb + 1.0) * (ns + 1.0);

  BargmannForm f;
  f.n_modes = 2;
  f.quad = Eigen::MatrixXcd::Zero(4, 4);
  f.lin = Eigen::VectorXcd::Zero(4);
  f.quad(0, 2) = f.quad(2, 0) = nb * (ns + 1.0) / e;
  f.quad(1, 3) = f.quad(3, 1) = ns * (1.0 + nb - kappa) / e;
  f.diag_gap = {1.0 / (nb + 1.0), (nb + 1.0 + kappa * ns) / e};
  f.quad(0, 1) = f.quad(1, 0) = c / (2.0 * e);
  f.quad(2, 3) = f.quad(3, 2) = c / (2.0 * e);
  f.log_prefactor = -std::log(e);
  f.envelopes = {{envelope_ratio(b), 1.0}, {envelope_ratio(1.0 + 2.0 * ns), 1.0}};
  return f;
}

BargmannForm cct_form(double ns, double ni, double kappa, double nb) {
  const double b = 1.0 + 2.0 * kappa * ns + 2.0 * nb;
  const Complex d = 2.0 * sqrt_kappa(kappa) * std::sqrt(ns * ni);
  const double fnorm = (nb + 1.0) * (ni + 1.0) + kappa * ns;
  if (!(fnorm > 0.0)) throw DomainError("CCT kernel normalisation F must be positive");

  BargmannForm f;
  f.n_modes = 2;
  f.quad = Eigen::MatrixXcd::Zero(4, 4);
  f.lin = Eigen::VectorXcd::Zero(4);
  f.quad(0, 2) = f.quad(2, 0) = (kappa * ns + nb * (ni + 1.0)) / fnorm;
  f.quad(1, 3) = f.quad(3, 1) = ni * (1.0 + nb) / fnorm;
  f.diag_gap = {(ni + 1.0) / fnorm, (nb + 1.0 + kappa * ns) / fnorm};
  f.quad(0, 3) = f.quad(3, 0) = d / (2.0 * fnorm);
  f.quad(1, 2) = f.quad(2, 1) = d / (2.0 * fnorm);
  f.log_prefactor = -std::log(fnorm);
  f.envelopes = {{envelope_ratio(b), 1.0}, {envelope_ratio(1.0 + 2.0 * ni), 1.0}};
  return f;
}

}  // namespace

BargmannForm bargmann_at(const ProbeSpec& probe, double kappa, double n_bath) {
  probe.validate();
  require_bath(n_bath);
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  switch (probe.kind) {
    case ProbeKind::DisplacedSqueezed: return ds_form(probe, kappa, n_bath);
    case ProbeKind::Tmsv: return tmsv_form(probe.n_signal, kappa, n_bath);
    case ProbeKind::Cct: return cct_form(probe.n_signal, probe.n_idler, kappa, n_bath);
  }
  throw DomainError("unknown probe kind");
}

BargmannForm bargmann_of(const Scenario& scenario) {
  scenario.validate();
  return bargmann_at(scenario.probe, scenario.kappa, scenario.n_bath);
}

BargmannForm thermal_form(double n) {
  require_nonnegative(n, "n");
  BargmannForm f;
  f.n_modes = 1;
  f.quad = Eigen::MatrixXcd::Zero(2, 2);
  f.lin = Eigen::VectorXcd::Zero(2);
  f.quad(0, 1) = f.quad(1, 0) = n / (n + 1.0);
  f.diag_gap = {1.0 / (n + 1.0)};
  f.log_prefactor = -std::log1p(n);
  f.envelopes = {{n / (n + 1.0), 1.0}};
  return f;
}

bool is_hermitian(const BargmannForm& form, double tol) {
  const int k = form.n_modes;
  const int nv = form.n_vars();
  const auto swap = [k](int i) { return i < k ? i + k : i - k; };
  const double scale = std::max({1.0, form.quad.cwiseAbs().maxCoeff(),
                                 form.lin.size() ? form.lin.cwiseAbs().maxCoeff() : 0.0});
  for (int i = 0; i < nv; ++i) {
    if (std::abs(form.lin(swap(i)) - std::conj(form.lin(i))) > tol * scale) return false;
    for (int j = 0; j < nv; ++j) {
      if (std::abs(form.quad(i, j) - form.quad(j, i)) > tol * scale) return false;
      if (std::abs(form.quad(swap(i), swap(j)) - std::conj(form.quad(i, j))) > tol * scale) return false;
    }
  }
  return std::abs(form.const_term.imag()) <= tol * std::max(1.0, std::abs(form.const_term));
}

double DiagonalValue::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

DiagonalExtractor::LogCoeff DiagonalExtractor::to_log(Complex c) {
  LogCoeff out;
  const double m = std::abs(c);
  if (m == 0.0) return out;
  out.log_mag = std::log(m);
  out.phase = std::arg(c);
  return out;
}

DiagonalExtractor::DiagonalExtractor(const BargmannForm& form) : form_(form) {
  const int nv = form.n_vars();
  if (form.quad.rows() != nv || form.quad.cols() != nv || form.lin.size() != nv)
    throw DomainError("Bargmann form has inconsistent dimensions");
  const auto diagonal = [&](int mode, std::complex<double> q) {
    if (mode < static_cast<int>(form.diag_gap.size())) {
      const double gap = form.diag_gap[mode];
      if (gap < 1.0) return LogCoeff{std::log1p(-gap), 0.0};
    }
    return to_log(q);
  };
  if (form.n_modes == 1) {
    a_ = diagonal(0, form.quad(0, 1));
    b_ = to_log(form.quad(0, 0));
    b2_ = to_log(form.quad(1, 1));
    c_ = to_log(form.lin(0));
    c2_ = to_log(form.lin(1));
  } else if (form.n_modes == 2) {
    if (form.lin.cwiseAbs().maxCoeff() != 0.0)
      throw UnsupportedError("two-mode extraction requires zero linear terms");
    for (int i = 0; i < nv; ++i)
      if (form.quad(i, i) != Complex(0.0))
        throw UnsupportedError("two-mode extraction requires no squared terms");
    if (form.quad(0, 1) != Complex(0.0) && form.quad(1, 0) != form.quad(0, 1))
      throw DomainError("quad must be symmetric");
    a_ = diagonal(0, form.quad(0, 2));
    b_ = diagonal(1, form.quad(1, 3));
    g_ = to_log(form.quad(0, 1) * form.quad(2, 3));
    f_ = to_log(form.quad(0, 3) * form.quad(1, 2));
    // the summand is symmetric under (k, g) <-> (j, f)
    if (g_.zero() && !f_.zero()) std::swap(g_, f_);
  } else {
    throw UnsupportedError("diagonal extraction supports one or two modes");
  }
}

void DiagonalExtractor::reserve(int max_occupation) {
  if (max_occupation <= reserved_) return;
  const int old = static_cast<int>(log_factorial_.size());
  log_factorial_.resize(max_occupation + 1);
  for (int n = std::max(old, 0); n <= max_occupation; ++n)
    log_factorial_[n] = n == 0 ? 0.0 : log_factorial_[n - 1] + std::log(static_cast<double>(n));
  if (form_.n_modes == 1) extend_hermite(max_occupation);
  reserved_ = max_occupation;
}

// h_k = sum_j b^j c^(k-2j) / (j! (k-2j)!), coefficients of exp(b x^2 + c x).
void DiagonalExtractor::extend_hermite(int upto) {
  const auto fill = [&](const LogCoeff& b, const LogCoeff& c, std::vector<LogCoeff>& h) {
    const int start = static_cast<int>(h.size());
    h.resize(upto + 1);
    const auto& lf = log_factorial_;
    for (int k = start; k <= upto; ++k) {
      LogCoeff out;
      if (b.zero() && c.zero()) {
        if (k == 0) out.log_mag = 0.0;
      } else if (b.zero()) {
        out.log_mag = k * c.log_mag - lf[k];
        out.phase = k * c.phase;
      } else if (c.zero()) {
        if (k % 2 == 0) {
          out.log_mag = (k / 2) * b.log_mag - lf[k / 2];
          out.phase = (k / 2) * b.phase;
        }
      } else {
        ScaledSum acc;
        const auto term = [&](int j, double& phase) {
          phase = j * b.phase + (k - 2 * j) * c.phase;
          return j * b.log_mag + (k - 2 * j) * c.log_mag - lf[j] - lf[k - 2 * j];
        };
        const auto log_ratio = [&](int j) {
          const double r = static_cast<double>(k - 2 * j) * (k - 2 * j - 1);
          if (r <= 0.0) return kNegInf;
          return b.log_mag - 2.0 * c.log_mag + std::log(r) - std::log(j + 1.0);
        };
        sum_unimodal(0, k / 2, term, log_ratio, acc);
        out.log_mag = acc.log_abs();
        out.phase = acc.arg();
      }
      h[k] = out;
    }
  };
  fill(b_, c_, h_);
  fill(b2_, c2_, h2_);
}

DiagonalValue DiagonalExtractor::finish(double log_mag, double phase, double peak) const {
  DiagonalValue v;
  if (log_mag == kNegInf || log_mag < peak - kCancelled) return v;
  const double total_phase = phase + form_.const_term.imag();
  const double re = std::cos(total_phase);
  v.imag_ratio = std::abs(std::sin(total_phase));
  if (re == 0.0) return v;
  v.sign = re > 0.0 ? 1 : -1;
  v.log_abs = log_mag + form_.log_prefactor + form_.const_term.real() + std::log(std::abs(re));
  return v;
}

DiagonalValue DiagonalExtractor::single(int n) const {
  const auto& lf = log_factorial_;
  ScaledSum acc;
  const auto add_k = [&](int k) {
    const LogCoeff& h = h_[k];
    const LogCoeff& h2 = h2_[k];
    if (h.zero() || h2.zero()) return kNegInf;
    const int e = n - k;
    const double lm = lf[n] - lf[e] + (e > 0 ? e * a_.log_mag : 0.0) + h.log_mag + h2.log_mag;
    acc.add(lm, (e > 0 ? e * a_.phase : 0.0) + h.phase + h2.phase);
    return lm;
  };
  if (a_.zero()) {
    add_k(n);
  } else {
    // t_k = n!/(n-k)! a^(n-k) h_k h2_k; walk up from k = 0 until the terms
    // have fallen well past their peak
    int quiet = 0;
    int peak_k = 0;
    for (int k = 0; k <= n; ++k) {
      const double lm = add_k(k);
      if (lm >= acc.peak()) peak_k = k;
      if (k > peak_k && (lm == kNegInf || lm < acc.peak() - kNegligible)) {
        if (++quiet >= 4) break;
      } else {
        quiet = 0;
      }
    }
  }
  return finish(acc.log_abs(), acc.arg(), acc.peak());
}

DiagonalValue DiagonalExtractor::pair(int n, int m) const {
  const auto& lf = log_factorial_;
  ScaledSum acc;
  const int top = std::min(n, m);

  // inner sum over k (the g coupling) for fixed j (the f coupling)
  const auto inner = [&](int j) {
    const int kmax = top - j;
    if (kmax < 0) return kNegInf;
    int fixed = -1;
    const auto pin = [&](int k) {
      if (fixed == -2) return;
      if (fixed == -1) fixed = k;
      else if (fixed != k) fixed = -2;
    };
    if (a_.zero()) pin(n - j);
    if (b_.zero()) pin(m - j);
    if (g_.zero()) pin(0);
    if (fixed == -2 || fixed > kmax) return kNegInf;
    const double base_f = f_.zero() ? 0.0 : j * f_.log_mag - 2.0 * lf[j];
    const double phase_f = f_.zero() ? 0.0 : j * f_.phase;
    const auto term = [&](int k, double& phase) {
      const int ea = n - k - j;
      const int eb = m - k - j;
      double lm = lf[n] + lf[m] - lf[ea] - lf[eb] - 2.0 * lf[k] + base_f;
      phase = phase_f;
      if (ea > 0) { lm += ea * a_.log_mag; phase += ea * a_.phase; }
      if (eb > 0) { lm += eb * b_.log_mag; phase += eb * b_.phase; }
      if (k > 0) { lm += k * g_.log_mag; phase += k * g_.phase; }
      return lm;
    };
    ScaledSum local;
    if (fixed >= 0) {
      double phase = 0.0;
      const double lm = term(fixed, phase);
      acc.add(lm, phase);
      return lm;
    }
    const auto log_ratio = [&](int k) {
      const double r = static_cast<double>(n - j - k) * (m - j - k);
      if (r <= 0.0) return kNegInf;
      return g_.log_mag - a_.log_mag - b_.log_mag + std::log(r) - 2.0 * std::log(k + 1.0);
    };
    sum_unimodal(0, kmax, term, log_ratio, local);
    const double lm = local.log_abs();
    acc.add(lm, local.arg());
    return lm;
  };

  if (f_.zero()) {
    inner(0);
  } else {
    int quiet = 0;
    int peak_j = 0;
    for (int j = 0; j <= top; ++j) {
      const double lm = inner(j);
      if (lm >= acc.peak()) peak_j = j;
      if (j > peak_j && (lm == kNegInf || lm < acc.peak() - kNegligible)) {
        if (++quiet >= 4) break;
      } else {
        quiet = 0;
      }
    }
  }
  return finish(acc.log_abs(), acc.arg(), acc.peak());
}

DiagonalValue DiagonalExtractor::operator()(int n) const {
  if (form_.n_modes != 1) throw DomainError("occupation vector length must match the mode count");
  if (n < 0) throw DomainError("negative occupation");
  if (n > reserved_) throw DomainError("occupation beyond reserved tables");
  return single(n);
}

DiagonalValue DiagonalExtractor::operator()(int n, int m) const {
  if (form_.n_modes != 2) throw DomainError("occupation vector length must match the mode count");
  if (n < 0 || m < 0) throw DomainError("negative occupation");
  if (std::max(n, m) > reserved_) throw DomainError("occupation beyond reserved tables");
  return pair(n, m);
}

DiagonalValue DiagonalExtractor::operator()(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != form_.n_modes)
    throw DomainError("occupation vector length must match the mode count");
  return occ.size() == 1 ? (*this)(occ[0]) : (*this)(occ[0], occ[1]);
}

double number_prob(const BargmannForm& form, std::span<const int> occ) {
  for (int n : occ)
    if (n < 0) throw DomainError("negative occupation");
  DiagonalExtractor ex(form);
  ex.reserve(occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end()));
  const DiagonalValue v = ex(occ);
  if (v.imag_ratio > 1e-8) throw ConvergenceError("diagonal element is not real", v.imag_ratio);
  if (v.sign < 0) throw ConvergenceError("negative diagonal element", v.value());
  return v.sign == 0 ? kNegInf : v.log_abs;
}

}  // namespace qillum
