// One PASS/FAIL line per reproduction criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "app/app.hpp"

using namespace qillum;

namespace {

struct Line {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1));
  return g;
}

double cc(const ProbeSpec& p, Detector d, double kappa = 0.01, double nb = 600.0) {
  return snr_cc({p, kappa, nb, 1'000'000}, d).exact;
}

Line crossover() {
  const auto t0 = Clock::now();
  const Scenario base{ProbeSpec::tmsv(1e-3), 0.01, 600.0, 1'000'000};
  const auto x = find_crossover(ProbeFamily::tmsv(), ProbeFamily::coherent(), 1e-4, 1.0, base, Method::Coincidence,
                                Detector::OnOff);
  const double dt = seconds_since(t0);
  if (!x) return {false, "no crossover found"};
  return {std::abs(*x / 0.0016 - 1.0) <= 0.25 && dt < 1.0, fmt("n_s = %.6g, %.3f s", *x, dt)};
}

Line ds_optimum() {
  const auto t0 = Clock::now();
  const SplitOptimum o = optimize_ds_split(1.0, 0.01, 600.0, Detector::OnOff, Method::Coincidence, 1'000'000);
  const double dt = seconds_since(t0);
  return {std::abs(o.alpha_sq - 0.918) <= 0.01 && dt < 1.0, fmt("|alpha|^2 = %.6f, %.3f s", o.alpha_sq, dt)};
}

Line fig1b() {
  double worst = 0.0;
  for (double ns : log_grid(1e-4, 1.0, 30)) {
    const double r = cc(ProbeSpec::coherent(ns), Detector::OnOff) / cc(ProbeSpec::cct(ns, 1e6), Detector::OnOff);
    worst = std::max(worst, std::abs(r - 1.0));
  }
  const double tc = cc(ProbeSpec::tmsv(1e-4), Detector::OnOff) / cc(ProbeSpec::coherent(1e-4), Detector::OnOff);
  return {worst <= 0.01 && tc > 5.0, fmt("max |coherent/cct - 1| = %.3g, tmsv/coherent(1e-4) = %.4g", worst, tc)};
}

Line fig2() {
  bool above = true;
  double min_margin = INFINITY;
  for (double ns : log_grid(1e-4, 1.0, 30)) {
    const double t = cc(ProbeSpec::tmsv(ns), Detector::Pnr);
    const double other = std::max(cc(ProbeSpec::coherent(ns), Detector::Pnr), cc(ProbeSpec::cct(ns, 1e6), Detector::Pnr));
    above = above && t > other;
    min_margin = std::min(min_margin, t / other);
  }
  const double tc = cc(ProbeSpec::tmsv(1e-4), Detector::Pnr) / cc(ProbeSpec::coherent(1e-4), Detector::Pnr);
  return {above && tc > 10.0, fmt("min tmsv/max(others) = %.4g, tmsv/coherent(1e-4) = %.4g", min_margin, tc)};
}

Line table1() {
  const auto t0 = Clock::now();
  struct Cell {
    const char* name;
    ProbeKind kind;
    Method method;
    Detector detector;
  };
  const Cell cells[] = {
      {"cc onoff ds", ProbeKind::DisplacedSqueezed, Method::Coincidence, Detector::OnOff},
      {"cc onoff tmsv", ProbeKind::Tmsv, Method::Coincidence, Detector::OnOff},
      {"cc onoff cct", ProbeKind::Cct, Method::Coincidence, Detector::OnOff},
      {"cc pnr ds", ProbeKind::DisplacedSqueezed, Method::Coincidence, Detector::Pnr},
      {"cc pnr tmsv", ProbeKind::Tmsv, Method::Coincidence, Detector::Pnr},
      {"cc pnr cct", ProbeKind::Cct, Method::Coincidence, Detector::Pnr},
      {"fi onoff ds", ProbeKind::DisplacedSqueezed, Method::Fisher, Detector::OnOff},
      {"fi onoff tmsv", ProbeKind::Tmsv, Method::Fisher, Detector::OnOff},
      {"fi onoff cct", ProbeKind::Cct, Method::Fisher, Detector::OnOff},
      {"fi pnr ds", ProbeKind::DisplacedSqueezed, Method::Fisher, Detector::Pnr},
      {"fi pnr tmsv", ProbeKind::Tmsv, Method::Fisher, Detector::Pnr},
      {"fi pnr cct", ProbeKind::Cct, Method::Fisher, Detector::Pnr},
  };
  const double ns = 1e-3, ni = 1e-3, kappa = 1e-4;
  const auto probe = [&](ProbeKind k) {
    if (k == ProbeKind::Tmsv) return ProbeSpec::tmsv(ns);
    if (k == ProbeKind::Cct) return ProbeSpec::cct(ns, ni);
    return ProbeSpec::coherent(ns);
  };
  // relative error against the printed form, and against the refined form
  // that keeps the N_S and N_B + 1 factors (where one exists)
  const auto errors = [&](const Cell& c, double nb) {
    const Scenario sc{probe(c.kind), kappa, nb, 1'000'000};
    const double exact = snr(sc, c.method, c.detector).exact;
    return std::pair{exact / asymptotic_snr(sc, c.method, c.detector, AsymptoticForm::Table) - 1.0,
                     exact / asymptotic_snr(sc, c.method, c.detector, AsymptoticForm::Refined) - 1.0};
  };
  bool pass = true;
  std::string detail;
  for (const Cell& c : cells) {
    const auto [e3, r3] = errors(c, 1e3);
    const auto [e4, r4] = errors(c, 1e4);
    const double limit = c.method == Method::Fisher && c.detector == Detector::Pnr ? 0.15 : 0.10;
    const bool ok = std::abs(e3) < limit && std::abs(e4) < std::abs(e3);
    pass = pass && ok;
    detail += fmt("\n    %s %-14s err(1e3) = %+.3e  err(1e4) = %+.3e", ok ? "ok  " : "FAIL", c.name, e3, e4);
    if (has_refined_form(c.kind, c.method, c.detector))
      detail += fmt("  | refined %+.3e -> %+.3e", r3, r4);
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 600.0;
  return {pass, fmt("%.1f s", dt) + detail};
}

Line onoff_fi() {
  const double ns = 1e-3, kappa = 1e-4, nb = 1e4;
  const auto fi_snr = [&](const ProbeSpec& p) { return snr_fi({p, kappa, nb, 1'000'000}, Detector::OnOff).exact; };
  const double best = golden_max([&](double log_ni) { return fi_snr(ProbeSpec::cct(ns, std::exp(log_ni))); },
                                 std::log(1e-2), std::log(1e2), 1e-7);
  const double ni_star = std::exp(best);
  const Scenario base{ProbeSpec::tmsv(1.0), kappa, nb, 1'000'000};
  const auto x = find_crossover(ProbeFamily::tmsv(), ProbeFamily::cct(1.0), 1e-2, 1e2, base, Method::Fisher,
                                Detector::OnOff);
  const bool pass = std::abs(ni_star - 1.0) <= 0.05 && x && std::abs(*x / 4.0 - 1.0) <= 0.25;
  return {pass, fmt("argmax N_I = %.6f, tmsv/cct crossover n_s = %s", ni_star,
                    x ? fmt("%.6g", *x).c_str() : "none")};
}

struct SuiteLines {
  Line consistency;
  Line data_processing;
};

SuiteLines suite() {
  const auto t0 = Clock::now();
  const auto results = app::run_checks();
  SuiteLines out{{true, ""}, {true, ""}};
  for (const auto& r : results) {
    Line& l = r.name == "PNR FI >= click FI" ? out.data_processing : out.consistency;
    l.pass = l.pass && r.pass;
    l.detail += fmt("\n    %s %s: %s", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.detail.c_str());
  }
  out.consistency.detail = fmt("%.1f s", seconds_since(t0)) + out.consistency.detail;
  return out;
}

Line zero_bath() {
  bool pass = true;
  double worst = INFINITY;
  for (Detector d : {Detector::OnOff, Detector::Pnr})
    for (double ns : log_grid(0.1, 1.0, 10)) {
      const double c = cc(ProbeSpec::coherent(ns), d, 0.01, 0.0);
      const double t = cc(ProbeSpec::tmsv(ns), d, 0.01, 0.0);
      pass = pass && c >= t;
      worst = std::min(worst, c / t);
    }
  return {pass, fmt("min coherent/tmsv = %.4g", worst)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const SuiteLines s = suite();
  const std::vector<std::pair<const char*, std::function<Line()>>> criteria = {
      {"crossover tmsv vs coherent (onoff cc)", crossover},
      {"ds split optimum", ds_optimum},
      {"onoff cc ratios", fig1b},
      {"pnr cc ordering", fig2},
      {"asymptotic table", table1},
      {"onoff fi optimum and crossover", onoff_fi},
      {"normalisation and consistency suite", [&] { return s.consistency; }},
      {"fi data processing", [&] { return s.data_processing; }},
      {"zero bath favours coherent", zero_bath},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Line l{false, ""};
    try {
      l = fn();
    } catch (const std::exception& e) {
      l = {false, std::string("exception: ") + e.what()};
    }
    failed += !l.pass;
    std::printf("%s %s: %s\n", l.pass ? "PASS" : "FAIL", name, l.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
