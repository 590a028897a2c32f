#include <doctest.h>

#include <cmath>

#include "qillum/metrics.hpp"

using namespace qillum;
using doctest::Approx;

TEST_SUITE("metrics") {

TEST_CASE("no target, no signal") {
  for (Detector d : {Detector::OnOff, Detector::Pnr}) {
    CHECK(snr_cc({ProbeSpec::tmsv(0.1), 0.0, 600.0, 1'000'000}, d).exact == 0.0);
    CHECK(fisher_information({ProbeSpec::tmsv(0.0), 0.01, 10.0, 1}, d).value == 0.0);
    CHECK(fisher_information({ProbeSpec::coherent(0.0), 0.01, 10.0, 1}, d).value == 0.0);
  }
}

TEST_CASE("coincidence SNR against its deep-limit forms") {
  const Scenario coh{ProbeSpec::coherent(1e-3), 0.01, 600.0, 1'000'000};
  const double a = 1e6 * 1e-4 * 1e-6 / (8.0 * std::pow(600.0, 3));
  CHECK(std::abs(snr_cc(coh, Detector::OnOff).exact / a - 1.0) < 0.15);
  const Scenario t{ProbeSpec::tmsv(1e-3), 0.01, 600.0, 1'000'000};
  const double b = 1e6 * 1e-4 * 1e-3 / (8.0 * std::pow(600.0, 4));
  CHECK(std::abs(snr_cc(t, Detector::OnOff).exact / b - 1.0) < 0.10);
  // the (N_S + 1) / N_B (N_B + 1)^2 form belongs to the Fisher route
  const double f = 1e6 * 1e-4 * 1e-3 * (1.0 + 1e-3) / (8.0 * 600.0 * 601.0 * 601.0);
  CHECK(std::abs(snr_fi(t, Detector::OnOff).exact / f - 1.0) < 0.10);
}

TEST_CASE("SNR is linear in the mode count") {
  for (Method m : {Method::Coincidence, Method::Fisher})
    for (Detector d : {Detector::OnOff, Detector::Pnr}) {
      const Scenario one{ProbeSpec::tmsv(0.05), 0.01, 20.0, 1'000'000};
      Scenario two = one;
      two.modes = 3'000'000;
      CHECK(snr(two, m, d).exact == Approx(3.0 * snr(one, m, d).exact).epsilon(1e-12));
    }
}

TEST_CASE("printed deep-limit forms") {
  const Scenario t{ProbeSpec::tmsv(1e-3), 1e-4, 1e3, 1'000'000};
  const double pre = 1e6 * 1e-8;
  CHECK(asymptotic_snr(t, Method::Fisher, Detector::Pnr) == Approx(pre * 1e-3 * 1.002 / (8e3 * 1001.0)));
  const Scenario c{ProbeSpec::cct(1e-3, 1e-2), 1e-4, 1e3, 1'000'000};
  CHECK(asymptotic_snr(c, Method::Coincidence, Detector::Pnr, AsymptoticForm::Table) ==
        Approx(pre * 1e-6 * 1e-2 / (4e6)));
  const Scenario d{ProbeSpec::coherent(1e-3), 1e-4, 1e3, 1'000'000};
  CHECK(asymptotic_snr(d, Method::Coincidence, Detector::OnOff) == Approx(pre * 1e-6 / 8e9));
  CHECK(has_refined_form(ProbeKind::Tmsv, Method::Fisher, Detector::OnOff));
  CHECK_FALSE(has_refined_form(ProbeKind::Tmsv, Method::Coincidence, Detector::OnOff));
}

TEST_CASE("error probability") {
  CHECK(error_prob(0.0).value == 0.5);
  CHECK(error_prob(0.0).clamped);
  CHECK(error_prob(std::log(2.0)).value == Approx(0.5));
  CHECK(error_prob(10.0).value == Approx(4.54e-5).epsilon(1e-3));
  CHECK_FALSE(error_prob(10.0).clamped);
}

TEST_CASE("difference FI against the closed-form derivative") {
  for (const ProbeSpec& p : {ProbeSpec::displaced_squeezed_split(0.3, 0.0, 0.0, 0.0), ProbeSpec::coherent(0.3),
                             ProbeSpec::tmsv(0.3), ProbeSpec::cct(0.3, 1.0)}) {
    const FisherResult r = fisher_information({p, 0.01, 50.0, 1}, Detector::OnOff);
    CHECK(r.diagnostics.richardson_gap <= 1e-6);
    CHECK(r.value > 0.0);
  }
}

TEST_CASE("PNR FI dominates the click FI of the same grid") {
  for (const ProbeSpec& p : {ProbeSpec::coherent(0.2), ProbeSpec::tmsv(0.2), ProbeSpec::cct(0.2, 1.0)}) {
    const FisherResult r = fisher_information({p, 0.01, 3.0, 1}, Detector::Pnr);
    CHECK(r.value >= r.onoff_coarse * (1.0 - 1e-9));
    const FisherResult o = fisher_information({p, 0.01, 3.0, 1}, Detector::OnOff);
    CHECK(r.onoff_coarse == Approx(o.value).epsilon(1e-6));
  }
}

TEST_CASE("zero bath gives infinite FI") {
  const SnrReport r = snr_fi({ProbeSpec::tmsv(0.1), 0.01, 0.0, 1}, Detector::OnOff);
  CHECK(r.infinite);
}

TEST_CASE("DS split optimum") {
  const SplitOptimum o = optimize_ds_split(1.0, 0.01, 600.0, Detector::OnOff, Method::Coincidence, 1'000'000);
  CHECK(o.alpha_sq == Approx(0.918).epsilon(0.01));
  CHECK_FALSE(o.degenerate);
  CHECK(o.unimodal);
  const SplitOptimum flat = optimize_ds_split(1.0, 0.0, 600.0, Detector::OnOff, Method::Coincidence, 1'000'000);
  CHECK(flat.degenerate);
}

TEST_CASE("aligned phases maximise the DS SNR") {
  double best = -1.0, best_phase = -1.0;
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * M_PI * i / 64.0;
    const Scenario sc{ProbeSpec::displaced_squeezed_split(1.0, 0.918, 0.0, t), 0.01, 600.0, 1'000'000};
    const double v = snr_cc(sc, Detector::OnOff).exact;
    if (v > best) {
      best = v;
      best_phase = t;
    }
  }
  CHECK(best_phase == 0.0);
}

TEST_CASE("golden section") {
  CHECK(golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-9) == Approx(0.3).epsilon(1e-7));
}

TEST_CASE("crossovers") {
  const Scenario base{ProbeSpec::tmsv(1e-3), 0.01, 600.0, 1'000'000};
  const auto x = find_crossover(ProbeFamily::tmsv(), ProbeFamily::coherent(), 1e-4, 1.0, base, Method::Coincidence,
                                Detector::OnOff);
  REQUIRE(x.has_value());
  CHECK(*x == Approx(0.0016).epsilon(0.25));
  CHECK_FALSE(find_crossover(ProbeFamily::coherent(), ProbeFamily::coherent(), 1e-4, 1.0, base, Method::Coincidence,
                             Detector::OnOff)
                  .has_value());
}

TEST_CASE("probe families") {
  CHECK(ProbeFamily::parse("cct", 5.0).at(0.1).n_idler == 5.0);
  CHECK(ProbeFamily::parse("ds", 1.0).split == Approx(0.918));
  CHECK(ProbeFamily::parse("coherent", 1.0).at(0.4).alpha_sq() == Approx(0.4));
  CHECK_THROWS_AS(ProbeFamily::parse("squid", 1.0), DomainError);
}

}
