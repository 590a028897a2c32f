#include <algorithm>
#include <cmath>
#include <vector>

#include "qillum/metrics.hpp"

namespace qillum {

double golden_max(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

SplitOptimum optimize_ds_split(double n_signal, double kappa, double n_bath, Detector detector, Method method,
                               std::uint64_t modes) {
  if (!(n_signal > 0.0)) throw DomainError("n_signal must be > 0");
  require_kappa(kappa);
  require_bath(n_bath);
  const auto objective = [&](double s) {
    Scenario sc{ProbeSpec::displaced_squeezed_split(n_signal, std::clamp(s, 0.0, 1.0)), kappa, n_bath, modes};
    return snr(sc, method, detector).exact;
  };

  constexpr int kCoarse = 41;
  std::vector<double> grid(kCoarse), value(kCoarse);
  for (int i = 0; i < kCoarse; ++i) {
    grid[i] = static_cast<double>(i) / (kCoarse - 1);
    value[i] = objective(grid[i]);
  }
  const auto [lo_it, hi_it] = std::minmax_element(value.begin(), value.end());
  SplitOptimum out;
  if (*hi_it - *lo_it <= 1e-12 * std::abs(*hi_it)) {
    out.degenerate = true;
    out.split = 1.0;
    out.alpha_sq = n_signal;
    out.snr = objective(1.0);
    return out;
  }

  // unimodal: non-decreasing up to the maximum, non-increasing after it
  const int peak = static_cast<int>(hi_it - value.begin());
  for (int i = 0; i < kCoarse - 1; ++i) {
    const bool rising = value[i + 1] >= value[i];
    if ((i < peak && !rising) || (i >= peak && rising && value[i + 1] != value[i])) out.unimodal = false;
  }

  double lo, hi;
  if (out.unimodal) {
    lo = grid[std::max(peak - 1, 0)];
    hi = grid[std::min(peak + 1, kCoarse - 1)];
  } else {
    constexpr int kDense = 2001;
    int best = 0;
    double best_v = -1.0;
    for (int i = 0; i < kDense; ++i) {
      const double v = objective(static_cast<double>(i) / (kDense - 1));
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    lo = static_cast<double>(std::max(best - 1, 0)) / (kDense - 1);
    hi = static_cast<double>(std::min(best + 1, kDense - 1)) / (kDense - 1);
  }
  double s = golden_max(objective, lo, hi, 1e-6);
  // the maximum may sit on the boundary
  for (double edge : {lo, hi})
    if (objective(edge) > objective(s)) s = edge;
  out.split = s;
  out.alpha_sq = s * n_signal;
  out.snr = objective(s);
  return out;
}

ProbeFamily ProbeFamily::parse(const std::string& name, double n_idler) {
  if (name == "coherent") return coherent();
  if (name == "tmsv") return tmsv();
  if (name == "cct") return cct(n_idler);
  if (name == "ds") return ds(0.918);
  throw DomainError("unknown state '" + name + "'");
}

ProbeSpec ProbeFamily::at(double n_signal) const {
  switch (kind) {
    case ProbeKind::DisplacedSqueezed: return ProbeSpec::displaced_squeezed_split(n_signal, split);
    case ProbeKind::Tmsv: return ProbeSpec::tmsv(n_signal);
    case ProbeKind::Cct: return ProbeSpec::cct(n_signal, n_idler);
  }
  throw DomainError("unknown probe kind");
}

std::string ProbeFamily::name() const {
  switch (kind) {
    case ProbeKind::DisplacedSqueezed: return split == 1.0 ? "coherent" : "ds";
    case ProbeKind::Tmsv: return "tmsv";
    case ProbeKind::Cct: return "cct";
  }
  return "?";
}

std::optional<double> find_crossover(const ProbeFamily& a, const ProbeFamily& b, double ns_min, double ns_max,
                                     const Scenario& base, Method method, Detector detector,
                                     const FisherOptions& options) {
  if (!(ns_min > 0.0 && ns_min < ns_max)) throw DomainError("need 0 < ns_min < ns_max");
  const auto diff = [&](double ns) {
    Scenario sa = base, sb = base;
    sa.probe = a.at(ns);
    sb.probe = b.at(ns);
    return snr(sa, method, detector, options).exact - snr(sb, method, detector, options).exact;
  };
  constexpr int kScan = 64;
  const double la = std::log(ns_min), lb = std::log(ns_max);
  // last point with a nonzero difference; exact ties are not sign changes
  double prev_x = la;
  double prev = diff(ns_min);
  for (int i = 1; i < kScan; ++i) {
    const double x = la + (lb - la) * i / (kScan - 1);
    const double cur = diff(std::exp(x));
    if (cur == 0.0) continue;
    if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      double lo = prev_x, hi = x, flo = prev;
      while (hi - lo > std::log1p(1e-3)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = diff(std::exp(mid));
        if (fm != 0.0 && (fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return std::exp(0.5 * (lo + hi));
    }
    prev = cur;
    prev_x = x;
  }
  return std::nullopt;
}

}  // namespace qillum
