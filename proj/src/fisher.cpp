#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "qillum/metrics.hpp"
#include "qillum/parallel.hpp"

namespace qillum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// central differences at h, h/2, h/4
struct Stencil {
  std::array<double, 3> d{};
};

// FI from the Richardson combinations of (h, h/2) and (h/2, h/4)
struct TwoLevel {
  double coarse = 0.0;
  double fine = 0.0;
  bool infinite = false;

  void add(double p0, const Stencil& s) {
    const double ra = (4.0 * s.d[1] - s.d[0]) / 3.0;
    const double rb = (4.0 * s.d[2] - s.d[1]) / 3.0;
    if (p0 <= 0.0) {
      if (ra != 0.0 || rb != 0.0) infinite = true;
      return;
    }
    coarse += ra * ra / p0;
    fine += rb * rb / p0;
  }
  void merge(const TwoLevel& o) {
    coarse += o.coarse;
    fine += o.fine;
    infinite = infinite || o.infinite;
  }
  double gap() const {
    const double scale = std::max(std::abs(coarse), std::abs(fine));
    return scale == 0.0 ? 0.0 : std::abs(coarse - fine) / scale;
  }
};

double stencil_kappa(int level, int side, double h) {
  const double step = h / static_cast<double>(1 << level);
  return side == 0 ? step : -step;
}

TwoLevel onoff_pass(const Scenario& s, double h) {
  const ProbeSpec& p = s.probe;
  const OnOffStats base = onoff_probabilities(p, 0.0, s.n_bath);
  std::array<std::array<OnOffStats, 2>, 3> at;
  for (int l = 0; l < 3; ++l)
    for (int side = 0; side < 2; ++side) at[l][side] = onoff_probabilities(p, stencil_kappa(l, side, h), s.n_bath);
  TwoLevel fi;
  for (int i = 0; i < base.n_outcomes; ++i) {
    Stencil st;
    for (int l = 0; l < 3; ++l)
      st.d[l] = (at[l][0].p_joint[i] - at[l][1].p_joint[i]) / (2.0 * h / (1 << l));
    fi.add(base.p_joint[i], st);
  }
  return fi;
}

struct GridPass {
  TwoLevel full;
  TwoLevel coarse_grained;
  std::array<double, 2> shell{};  // fine-level FI of the last row and last column
};

GridPass grid_pass(const Scenario& s, const ProbabilityGrid& grid, double h) {
  std::vector<DiagonalExtractor> ex;
  const int reserve = *std::max_element(grid.dims.begin(), grid.dims.end());
  for (int l = 0; l < 3; ++l)
    for (int side = 0; side < 2; ++side) {
      ex.emplace_back(bargmann_at(s.probe, stencil_kappa(l, side, h), s.n_bath));
      ex.back().reserve(reserve);
    }
  const bool two = grid.n_modes() == 2;
  const int rows = grid.rows(), cols = grid.cols();

  struct RowAcc {
    TwoLevel full;
    std::array<double, 2> shell{};
    std::array<double, 4> p0{};
    std::array<Stencil, 4> region{};
  };
  std::vector<RowAcc> acc(rows);
  parallel_for(
      rows,
      [&](std::size_t row) {
        const int n = static_cast<int>(row);
        RowAcc& r = acc[row];
        for (int m = 0; m < cols; ++m) {
          const double lp0 = grid.log_prob(n, m);
          const double p0 = std::exp(lp0);
          Stencil st;
          for (int l = 0; l < 3; ++l) {
            double v[2];
            for (int side = 0; side < 2; ++side) {
              const DiagonalValue dv = two ? ex[2 * l + side](n, m) : ex[2 * l + side](n);
              if (dv.imag_ratio > 1e-8)
                throw ConvergenceError("stencil diagonal element is not real", dv.imag_ratio);
              v[side] = dv.sign == 0 ? 0.0 : dv.sign * std::exp(dv.log_abs);
            }
            st.d[l] = (v[0] - v[1]) / (2.0 * h / (1 << l));
          }
          const double before = r.full.fine;
          r.full.add(p0, st);
          if (n == rows - 1) r.shell[0] += r.full.fine - before;
          if (two && m == cols - 1) r.shell[1] += r.full.fine - before;
          const int region = two ? (n > 0 ? (m > 0 ? 0 : 1) : (m > 0 ? 2 : 3)) : (n > 0 ? 0 : 1);
          r.p0[region] += p0;
          for (int l = 0; l < 3; ++l) r.region[region].d[l] += st.d[l];
        }
      },
      0);

  GridPass out;
  std::array<double, 4> p0{};
  std::array<Stencil, 4> region{};
  for (const RowAcc& r : acc) {
    out.full.merge(r.full);
    out.shell[0] += r.shell[0];
    out.shell[1] += r.shell[1];
    for (int i = 0; i < 4; ++i) {
      p0[i] += r.p0[i];
      for (int l = 0; l < 3; ++l) region[i].d[l] += r.region[i].d[l];
    }
  }
  for (int i = 0; i < (two ? 4 : 2); ++i) out.coarse_grained.add(p0[i], region[i]);
  return out;
}

}  // namespace

double fisher_step(const ProbeSpec& probe, double n_bath) {
  double scale = probe.n_signal;
  if (probe.kind == ProbeKind::Tmsv) scale = probe.n_signal * (1.0 + probe.n_signal);
  if (probe.kind == ProbeKind::Cct) scale = probe.n_signal * (1.0 + probe.n_idler);
  return 1e-2 * (1.0 + n_bath) / (1.0 + 4.0 * scale);
}

FisherResult fisher_information(const Scenario& scenario, Detector detector, const FisherOptions& options) {
  scenario.validate();
  FisherResult out;
  const ProbeSpec& p = scenario.probe;
  if (p.n_signal == 0.0) return out;
  if (scenario.n_bath == 0.0) {
    // signal clicks are impossible at kappa = 0 but not at first order
    out.value = out.onoff_coarse = kInf;
    return out;
  }

  double h = fisher_step(p, scenario.n_bath);
  if (detector == Detector::OnOff) {
    for (int halving = 0;; ++halving, h *= 0.5) {
      const TwoLevel fi = onoff_pass(scenario, h);
      out.diagnostics.step = h;
      out.diagnostics.halvings = halving;
      out.diagnostics.richardson_gap = fi.gap();
      if (fi.infinite) {
        out.value = out.onoff_coarse = kInf;
        return out;
      }
      if (fi.gap() <= options.rel_tol) {
        out.value = out.onoff_coarse = fi.fine;
        return out;
      }
      if (halving >= options.max_halvings)
        throw ConvergenceError("on-off FI difference stencil did not converge", fi.gap());
    }
  }

  double tail = options.pnr_tail;
  for (int widen = 0;; ++widen, tail *= 1e-2) {
    const BargmannForm form0 = bargmann_at(p, 0.0, scenario.n_bath);
    const ProbabilityGrid grid = prob_grid(form0, tail, options.grid);
    out.diagnostics.grid_tail = grid.tail_mass;
    out.diagnostics.grid_dims = grid.dims;
    double step = h;
    GridPass pass;
    for (int halving = 0;; ++halving, step *= 0.5) {
      pass = grid_pass(scenario, grid, step);
      out.diagnostics.step = step;
      out.diagnostics.halvings = halving;
      out.diagnostics.richardson_gap = pass.full.gap();
      if (pass.full.infinite) {
        out.value = out.onoff_coarse = kInf;
        return out;
      }
      if (pass.full.gap() <= options.rel_tol && pass.coarse_grained.gap() <= options.rel_tol) break;
      if (halving >= options.max_halvings)
        throw ConvergenceError("PNR FI difference stencil did not converge", pass.full.gap());
    }
    // geometric continuation of the outermost shells estimates the omitted FI
    const double fine = pass.full.fine;
    double remainder = 0.0;
    for (int i = 0; i < grid.n_modes(); ++i) {
      const double r = form0.envelopes[i].ratio;
      if (r > 0.0) remainder += pass.shell[i] * r / (1.0 - r);
    }
    out.diagnostics.shell_fraction = fine > 0.0 ? remainder / fine : 0.0;
    if (out.diagnostics.shell_fraction <= options.shell_tol) {
      out.value = fine;
      out.onoff_coarse = pass.coarse_grained.fine;
      return out;
    }
    if (widen >= 3)
      throw ConvergenceError("PNR FI partial sums did not settle", out.diagnostics.shell_fraction);
  }
}

}  // namespace qillum
