#include <doctest.h>

#include <cmath>

#include "qillum/metrics.hpp"
#include "qillum/oracle.hpp"

using namespace qillum;
using doctest::Approx;

TEST_SUITE("oracle") {

TEST_CASE("exp(c z w) coefficients") {
  BargmannForm f;
  f.n_modes = 1;
  f.quad = Eigen::MatrixXcd::Zero(2, 2);
  f.lin = Eigen::VectorXcd::Zero(2);
  f.quad(0, 1) = f.quad(1, 0) = 0.7;
  const oracle::DenseSeries s = oracle::dense_expand(f, 12);
  for (int n = 0; n <= 12; ++n) {
    const int e[] = {n, n};
    CHECK(s.coefficient(e).real() == Approx(std::pow(0.7, n) / std::tgamma(n + 1.0)).epsilon(1e-13));
  }
  const int off[] = {2, 1};
  CHECK(std::abs(s.coefficient(off)) == 0.0);
}

TEST_CASE("thermal kernel gives the geometric distribution") {
  const oracle::DenseSeries s = oracle::dense_expand(thermal_form(2.0), 30);
  for (int n = 0; n <= 30; ++n) CHECK(s.probability({n}) == Approx(std::pow(2.0 / 3.0, n) / 3.0).epsilon(1e-12));
}

TEST_CASE("dense expansion matches the fast extractor") {
  const BargmannForm f = bargmann_at(ProbeSpec::tmsv(0.8), 0.3, 0.5);
  const oracle::DenseSeries s = oracle::dense_expand(f, 40);
  double worst = 0.0;
  for (int n = 0; n <= 40; n += 3)
    for (int m = 0; m <= 40; m += 3) {
      const double a = s.probability({n, m}), b = std::exp(number_prob(f, {n, m}));
      worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    }
  CHECK(worst < 1e-9);

  const BargmannForm d = bargmann_at(ProbeSpec::displaced_squeezed_split(0.9, 0.4, 0.3, 2.0), 0.6, 0.2);
  const oracle::DenseSeries sd = oracle::dense_expand(d, 60);
  for (int n = 0; n <= 60; n += 5)
    CHECK(sd.probability({n}) == Approx(std::exp(number_prob(d, {n}))).epsilon(1e-9));
}

TEST_CASE("memory budget") {
  CHECK_THROWS_AS(oracle::dense_expand(bargmann_at(ProbeSpec::tmsv(0.5), 0.1, 1.0), 200, 1 << 20), ResourceError);
}

TEST_CASE("hand-derived click FI") {
  CHECK(oracle::fi_analytic_check({ProbeSpec::tmsv(0.0), 0.01, 3.0, 1}, Detector::OnOff) == 0.0);
  const Scenario sq{ProbeSpec::displaced_squeezed_split(0.5, 0.0, 0.0, 0.0), 0.01, 3.0, 1};
  CHECK(oracle::fi_analytic_check(sq, Detector::OnOff) ==
        Approx(fisher_information(sq, Detector::OnOff).value).epsilon(1e-6));
  CHECK_THROWS_AS(oracle::fi_analytic_check(sq, Detector::Pnr), UnsupportedError);
}

}
