#include <doctest.h>

#include <cmath>

#include "squeezemap/sensing.hpp"

using namespace sqz;

TEST_CASE("reflection flux") {
  SUBCASE("no drive, flat unit response") {
    SensorConfig cfg{2.0, 0.0, 1.0, 0.0};
    for (double w : {-3.0, 0.0, 1.7}) CHECK(reflection_flux(cfg, w) == 1.0);
  }
  SUBCASE("EP peak height") {
    SensorConfig cfg{12.5, 12.5, 1.0, 0.0};
    CHECK(reflection_flux(cfg, 0.0) == doctest::Approx(5001.0).epsilon(1e-12));
  }
  SUBCASE("response pole inside the lasing region") {
    SensorConfig cfg{0.0, 0.5, 1.0, 0.0};
    CHECK(cfg.lasing());
    CHECK_THROWS_AS(reflection_flux(cfg, 0.0), PoleEncounteredError);
  }
  SUBCASE("spectrum is even in the probe frequency") {
    SensorConfig cfg{12.5, 12.5, 1.0, 0.7};
    for (double w : {0.3, 1.9, 4.18, 7.5})
      CHECK(std::abs(reflection_flux(cfg, w) - reflection_flux(cfg, -w)) < 1e-12);
  }
  SUBCASE("flux >= 1 in the stable regime") {
    SensorConfig cfg{2.0, 1.0, 0.5, 0.0};
    for (int i = 0; i <= 100; ++i)
      CHECK(reflection_flux(cfg, -5.0 + 0.1 * i) >= 1.0);
  }
  SUBCASE("kappa must be positive") {
    SensorConfig cfg{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(reflection_flux(cfg, 0.0), InvalidParameterError);
  }
}

TEST_CASE("peak finding") {
  SUBCASE("single Lorentzian") {
    const Index n = 401;
    const RVec w = RVec::LinSpaced(n, -4.0, 4.0);
    RVec v(n);
    const double w0 = 0.537, width = 0.3;
    for (Index i = 0; i < n; ++i)
      v(i) = 1.0 + 1.0 / (1.0 + std::pow((w(i) - w0) / width, 2));
    const auto peaks = find_peaks(w, v);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].omega - w0) < (w(1) - w(0)) / 10.0);
  }
  SUBCASE("unperturbed EP spectrum has one peak at zero") {
    SensorConfig cfg{12.5, 12.5, 1.0, 0.0};
    const RVec w = RVec::LinSpaced(4001, -8.0, 8.0);
    RVec v(w.size());
    for (Index i = 0; i < w.size(); ++i) v(i) = reflection_flux(cfg, w(i));
    const auto peaks = find_peaks(w, v);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].omega) < 1e-9);
  }
  SUBCASE("perturbed EP spectrum splits into two peaks") {
    SensorConfig cfg{12.5, 12.5, 1.0, 0.7};
    const RVec w = RVec::LinSpaced(4001, -8.0, 8.0);
    RVec v(w.size());
    for (Index i = 0; i < w.size(); ++i) v(i) = reflection_flux(cfg, w(i));
    const auto peaks = find_peaks(w, v);
    REQUIRE(peaks.size() == 2);
    const double splitting = peaks[1].omega - peaks[0].omega;
    CHECK(std::abs(splitting - ep_splitting_prediction(12.5, 0.7)) <
          0.05 * ep_splitting_prediction(12.5, 0.7));
  }
  SUBCASE("nonuniform grid is rejected") {
    RVec w(4), v(4);
    w << 0, 1, 2.5, 3;
    v << 1, 2, 1, 1;
    CHECK_THROWS_AS(find_peaks(w, v), InvalidParameterError);
  }
}

TEST_CASE("splitting prediction") {
  CHECK(ep_splitting_prediction(0.5, 0.01) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(ep_splitting_prediction(1.0, 0.0) == 0.0);
  // exact dimer splitting 2 sqrt(2 g0 eps + eps^2) stays within 1%
  const double exact = 2 * std::sqrt(2 * 0.5 * 0.01 + 0.01 * 0.01);
  CHECK(std::abs(exact - ep_splitting_prediction(0.5, 0.01)) < 0.01 * exact);
}

TEST_CASE("peak splitting follows the EP law in the narrow-line regime") {
  const double kappa = 1.0, nu = 12.5;
  for (double eps : {0.2, 0.5, 1.0}) {
    SensorConfig cfg{nu, nu, kappa, eps};
    const RVec w = RVec::LinSpaced(8001, -10.0, 10.0);
    RVec v(w.size());
    for (Index i = 0; i < w.size(); ++i) v(i) = reflection_flux(cfg, w(i));
    const auto peaks = find_peaks(w, v);
    REQUIRE(peaks.size() == 2);
    const double splitting = peaks[1].omega - peaks[0].omega;
    const double predicted = ep_splitting_prediction(nu, eps);
    CHECK(std::abs(splitting - predicted) < 0.05 * predicted);
  }
}

TEST_CASE("cubic-root scaling at the third-order EP") {
  RVec eps10(13);
  for (Index i = 0; i < 13; ++i) eps10(i) = std::pow(10.0, -6.0 + 3.0 * i / 12.0);

  const auto scan = hoep_scaling_scan(1.0, eps10);
  CHECK(std::abs(scan.fitted_exponent - 1.0 / 3.0) < 0.02);

  const auto control = dimer_scaling_scan(1.0, eps10);
  CHECK(std::abs(control.fitted_exponent - 0.5) < 0.02);

  SUBCASE("precondition: positive epsilons spanning three decades") {
    RVec bad(3);
    bad << 1e-4, 1e-3, 1e-2;  // only two decades
    CHECK_THROWS_AS(hoep_scaling_scan(1.0, bad), InvalidParameterError);
    RVec neg(4);
    neg << -1e-6, 1e-5, 1e-4, 1e-3;
    CHECK_THROWS_AS(hoep_scaling_scan(1.0, neg), InvalidParameterError);
  }
}
