#include <doctest.h>

#include <cmath>
#include <random>

#include "qillum/gaussian_state.hpp"
#include "qillum/moments.hpp"

using namespace qillum;
using doctest::Approx;

TEST_SUITE("gaussian_states") {

TEST_CASE("thermal and target-off DS outputs") {
  const auto th = build_ds_output<double>(ProbeSpec::displaced_squeezed(0, 0, 0, 0), 0.3, 2.0);
  CHECK(th.cov.isApprox(Eigen::Matrix2d::Identity() * 5.0));
  CHECK(th.mean.isZero());
  const auto off = build_ds_output<double>(ProbeSpec::displaced_squeezed_split(1.0, 0.918, 0.4, 1.3), 0.0, 600.0);
  CHECK(off.cov.isApprox(Eigen::Matrix2d::Identity() * 1201.0));
  CHECK(off.mean.isZero());
}

TEST_CASE("DS output entries") {
  const ProbeSpec p = ProbeSpec::displaced_squeezed_split(1.0, 0.918, 0.0, 0.0);
  CHECK(p.alpha_sq() == Approx(0.918));
  CHECK(p.squeezed_photons() == Approx(0.082));
  const auto s = build_ds_output<double>(p, 0.01, 600.0);
  const double a1 = 1201.00164, a2 = 0.02 * std::sqrt(0.082 * 1.082);
  CHECK(s.cov(0, 0) == Approx(a1 - a2).epsilon(1e-12));
  CHECK(s.cov(1, 1) == Approx(a1 + a2).epsilon(1e-12));
  CHECK(s.cov(0, 1) == Approx(0.0));
  CHECK(s.mean(0) == Approx(std::sqrt(2.0 * 0.01 * 0.918)).epsilon(1e-14));
  CHECK(s.mean(1) == Approx(0.0));
}

TEST_CASE("TMSV outputs") {
  const auto vac = build_tmsv_output<double>(0.0, 0.5, 3.0);
  Eigen::Vector4d d;
  d << 7, 7, 1, 1;
  CHECK(vac.cov.isApprox(Eigen::Matrix4d(d.asDiagonal())));

  const auto off = build_tmsv_output<double>(1.0, 0.0, 600.0);
  d << 1201, 1201, 3, 3;
  CHECK(off.cov.isApprox(Eigen::Matrix4d(d.asDiagonal())));

  const auto on = build_tmsv_output<double>(1.0, 0.01, 600.0);
  CHECK(on.cov(0, 0) == Approx(1201.02));
  CHECK(std::abs(on.cov(0, 2)) == Approx(2.0 * std::sqrt(0.02)));
  CHECK(2.0 * std::sqrt(0.02) == Approx(0.282842).epsilon(1e-6));
}

TEST_CASE("CCT outputs") {
  const auto prod = build_cct_output<double>(1.0, 0.0, 0.4, 2.0);
  CHECK(prod.cov.block<2, 2>(0, 2).isZero());
  const auto off = build_cct_output<double>(1.0, 1.0, 0.0, 600.0);
  Eigen::Vector4d d;
  d << 1201, 1201, 3, 3;
  CHECK(off.cov.isApprox(Eigen::Matrix4d(d.asDiagonal())));
  const auto big = build_cct_output<double>(0.01, 1e6, 0.01, 600.0);
  CHECK(big.cov.block<2, 2>(0, 2).cwiseAbs().maxCoeff() == Approx(20.0));
}

TEST_CASE("mean photon numbers") {
  CHECK(mean_photon(GaussianStated(1), 0) == Approx(0.0));
  const auto coh = build_output<double>(ProbeSpec::coherent(1.0, 0.7), 0.01, 600.0);
  CHECK(mean_photon(coh, 0) == Approx(600.01).epsilon(1e-14));
  const auto t = build_tmsv_output<double>(1.0, 0.2, 5.0);
  CHECK(mean_photon(t, 1) == Approx(1.0));
  CHECK(mean_photon(t, 0) == Approx(0.2 + 5.0));
  CHECK_THROWS_AS(mean_photon(t, 2), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(build_tmsv_output<double>(1.0, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(build_tmsv_output<double>(1.0, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(build_tmsv_output<double>(1.0, 0.1, -1.0), DomainError);
  CHECK_THROWS_AS(build_cct_output<double>(-1.0, 1.0, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(ProbeSpec::displaced_squeezed_split(1.0, 1.5).validate(), DomainError);
}

TEST_CASE("outputs are physical over random parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double ns = std::pow(10.0, -4.0 + 6.0 * u(rng));
    const double kappa = u(rng), nb = std::pow(10.0, -3.0 + 7.0 * u(rng));
    const ProbeSpec probes[] = {ProbeSpec::displaced_squeezed_split(ns, u(rng), 6.3 * u(rng), 6.3 * u(rng)),
                                ProbeSpec::tmsv(ns), ProbeSpec::cct(ns, std::pow(10.0, -3.0 + 9.0 * u(rng)))};
    for (const auto& p : probes) {
      const auto s = build_output<double>(p, kappa, nb);
      CHECK(is_physical(s, 1e-9 * (1.0 + nb)));
    }
  }
  GaussianStated bad(1);
  bad.cov << 0.5, 0.0, 0.0, 0.5;
  CHECK_FALSE(is_physical(bad));
}

TEST_CASE("symplectic eigenvalues of the thermal output") {
  const auto s = build_tmsv_output<double>(0.3, 0.0, 4.0);
  const auto nu = symplectic_eigenvalues(s);
  CHECK(nu.minCoeff() == Approx(1.6));
  CHECK(nu.maxCoeff() == Approx(9.0));
}

TEST_CASE("extended precision scalar matches double") {
  const auto d = build_tmsv_output<double>(0.01, 0.01, 600.0);
  const auto l = build_tmsv_output<long double>(0.01L, 0.01L, 600.0L);
  CHECK((l.cov.cast<double>() - d.cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(static_cast<double>(mean_photon(l, 0)) == Approx(mean_photon(d, 0)));
}

TEST_CASE("number moments") {
  const double n = 2.5;
  const auto th = build_output<double>(ProbeSpec::coherent(0.0), 0.0, n);
  CHECK(gaussian_number_moment(th, {2}) == Approx(2 * n * n + n));
  const auto t = build_input<double>(ProbeSpec::tmsv(0.7));
  CHECK(gaussian_number_moment(t, {1, 1}) == Approx(2 * 0.49 + 0.7));
  CHECK(gaussian_number_moment(GaussianStated(2), {2, 2}) == Approx(0.0));
  CHECK_THROWS_AS(gaussian_number_moment(th, {3}), UnsupportedError);
  // coherent: <n^2> = |a|^4 + |a|^2
  const auto coh = build_input<double>(ProbeSpec::coherent(1.7, 0.3));
  CHECK(gaussian_number_moment(coh, {2}) == Approx(1.7 * 1.7 + 1.7));
}

TEST_CASE("Mandel Q") {
  CHECK(mandel_q(ProbeSpec::coherent(1.0)) == Approx(0.0).epsilon(1e-12));
  CHECK(mandel_q(ProbeSpec::tmsv(0.01)) == Approx(0.01));
  CHECK(mandel_q(ProbeSpec::displaced_squeezed_split(1.0, 0.918, 0.0, 0.0)) < 0.0);
  CHECK(mandel_q(ProbeSpec::displaced_squeezed_split(1.0, 0.918, 0.0, M_PI)) > 0.0);
  CHECK_THROWS_AS(mandel_q(ProbeSpec::coherent(0.0)), DomainError);
}

TEST_CASE("input moments of the two-mode probes") {
  const auto m = input_moments(ProbeSpec::tmsv(0.3));
  CHECK(m.n_s == Approx(0.3));
  CHECK(m.n_si == Approx(2 * 0.09 + 0.3));
  const ProbeSpec cct = ProbeSpec::cct(0.3, 2.0);
  const auto c = input_moments(cct);
  const auto in = build_input<double>(cct);
  CHECK(c.n_si == Approx(gaussian_number_moment(in, {1, 1})));
  CHECK(c.n_si_sq == Approx(gaussian_number_moment(in, {2, 2})));
  CHECK(c.n_s_n_i2 == Approx(gaussian_number_moment(in, {1, 2})));
  CHECK(c.n_i2 == Approx(2 * 4.0 + 2.0));
}

}
