#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "squeezemap/topology.hpp"

using namespace sqz;

namespace {

KagomeParams topo_point() {
  KagomeParams p;
  p.omega0 = 4.5;
  p.j = 1.0;
  p.nu = 0.8;
  return p;
}

KagomeParams trivial_point() {
  KagomeParams p;
  p.omega0 = 4.5;
  p.j = 1.0;
  p.nu = 0.0;
  return p;
}

}  // namespace

TEST_CASE("Bloch matrix at the zone centre") {
  const Mat tau0 = kagome_tau(Eigen::Vector2d::Zero());
  for (int s = 0; s < 3; ++s)
    for (int s2 = 0; s2 < 3; ++s2)
      CHECK(tau0(s, s2) == (s == s2 ? cplx(0, 0) : cplx(2, 0)));

  KagomeParams p = topo_point();
  const Mat m = kagome_bloch(p, 0.0, 0.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(m.topLeftCorner(3, 3));
  RVec expect(3);
  expect << p.omega0 - 4 * p.j, p.omega0 + 2 * p.j, p.omega0 + 2 * p.j;
  CHECK((es.eigenvalues() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("no drive decouples particle and hole blocks") {
  const Mat m = kagome_bloch(trivial_point(), 0.7, 1.3);
  CHECK(m.topRightCorner(3, 3).norm() == 0.0);
  CHECK(m.bottomLeftCorner(3, 3).norm() == 0.0);
}

TEST_CASE("Bloch fields are periodic") {
  CHECK(check_periodicity(kagome_field(topo_point()), 20));
  CHECK(check_periodicity(kagome_pt_field(topo_point()), 20));
}

TEST_CASE("PT frame is isospectral and carries on-site gain/loss dimers") {
  KagomeParams p = topo_point();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 6.283185307179586);
  for (int trial = 0; trial < 12; ++trial) {
    const double k1 = uni(rng), k2 = uni(rng);
    Eigen::ComplexEigenSolver<Mat> lab(kagome_bloch(p, k1, k2), false);
    Eigen::ComplexEigenSolver<Mat> pt(kagome_pt_bloch(p, k1, k2), false);
    CHECK(multiset_distance(lab.eigenvalues(), pt.eigenvalues()) < 1e-12);
  }
  const Mat hpt = kagome_pt_bloch(p, 0.4, 1.1);
  for (int s = 0; s < 3; ++s) {
    CHECK(hpt(s, s).imag() == doctest::Approx(-p.nu).epsilon(1e-12));
    CHECK(hpt(3 + s, 3 + s).imag() == doctest::Approx(p.nu).epsilon(1e-12));
  }

  SUBCASE("spin-orbit block at the zone centre") {
    KagomeParams q = trivial_point();
    const Mat h0 = kagome_pt_bloch(q, 0.0, 0.0);
    for (int s = 0; s < 3; ++s)
      for (int s2 = 0; s2 < 3; ++s2) {
        const cplx expect =
            cplx(0, 1) * q.j * 2.0 * std::sin(2 * q.phi * (s - s2)) * (s == s2 ? 0.0 : 1.0);
        CHECK(std::abs(h0(s, s2) - expect) < 1e-12);
      }
  }
}

TEST_CASE("Chern numbers of the driven Kagome model") {
  const BlochField field = kagome_field(topo_point());
  const int expected[6] = {1, 0, -1, 1, 0, -1};
  int sum = 0;
  for (int b = 0; b < 6; ++b) {
    const ChernResult lr = chern_lr(field, b, 24);
    CHECK(lr.rounded == expected[b]);
    CHECK(std::abs(lr.value - lr.rounded) < 1e-3);
    CHECK(lr.gap_min > 1e-6);
    sum += lr.rounded;

    const ChernResult sp = chern_symplectic(field, b, 24);
    CHECK(sp.rounded == lr.rounded);
  }
  CHECK(sum == 0);

  SUBCASE("grid refinement is stable") {
    const ChernResult c24 = chern_lr(field, 0, 24);
    const ChernResult c48 = chern_lr(field, 0, 48);
    CHECK(std::abs(c24.value - c48.value) < 1e-3);
  }
}

TEST_CASE("both Chern routes agree across parameter sets") {
  // route equivalence on further stable points, plus the k-independent
  // unitary rotation to the PT frame must not change any invariant
  for (auto [w0, nu] : {std::pair{4.5, 0.5}, std::pair{5.0, 0.8}}) {
    KagomeParams p;
    p.omega0 = w0;
    p.j = 1.0;
    p.nu = nu;
    const BlochField field = kagome_field(p);
    const BlochField pt = kagome_pt_field(p);
    for (int b = 0; b < 6; ++b) {
      const auto lr = chern_lr(field, b, 16);
      CHECK(chern_symplectic(field, b, 16).rounded == lr.rounded);
      CHECK(chern_lr(pt, b, 16).rounded == lr.rounded);
    }
  }
}

TEST_CASE("gain/loss-free model is trivial") {
  const BlochField field = kagome_field(trivial_point());
  for (int b = 0; b < 6; ++b) {
    const ChernResult lr = chern_lr(field, b, 24);
    CHECK(lr.rounded == 0);
    CHECK(std::abs(lr.value) < 1e-3);
  }
}

TEST_CASE("unstable and touching regimes are rejected") {
  KagomeParams unstable;
  unstable.omega0 = 2.0;
  unstable.j = 1.0;
  unstable.nu = 0.2;
  CHECK_THROWS_AS(chern_lr(kagome_field(unstable), 0, 12), UnstableRegimeError);

  KagomeParams touching;  // particle and hole sectors overlap at nu = 0
  touching.omega0 = 2.0;
  touching.j = 1.0;
  touching.nu = 0.0;
  CHECK_THROWS_AS(chern_lr(kagome_field(touching), 2, 12), BandTouchingError);

  CHECK_THROWS_AS(chern_symplectic(kagome_pt_field(topo_point()), 0, 12),
                  InvalidParameterError);  // no sigma_norm on the PT frame
}

TEST_CASE("strip spectrum shows in-gap edge states only when driven") {
  const int width = 12;
  const RVec ks = RVec::LinSpaced(161, 0.0, 6.283185307179586);

  // bulk gap between two sorted bands, from a Bloch scan
  auto bulk_gap = [](const KagomeParams& p, int below) {
    const BlochField field = kagome_field(p);
    double lo = -1e9, hi = 1e9;
    const int n = 24;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::ComplexEigenSolver<Mat> es(
            field.sampler(6.283185307179586 * (i + 0.5) / n,
                          6.283185307179586 * (j + 0.5) / n),
            false);
        RVec e = es.eigenvalues().real();
        std::sort(e.data(), e.data() + e.size());
        lo = std::max(lo, e(below));
        hi = std::min(hi, e(below + 1));
      }
    REQUIRE(hi > lo);
    return std::pair<double, double>(lo, hi);
  };

  auto gap_states = [&](const KagomeParams& p, double lo, double hi) {
    const StripData data = strip_spectrum(p, width, ks);
    int count = 0;
    double best = 0.0;
    for (Index ik = 0; ik < ks.size(); ++ik)
      for (Index q = 0; q < data.energies.cols(); ++q) {
        const double e = data.energies(ik, q);
        if (e > lo + 0.25 * (hi - lo) && e < hi - 0.25 * (hi - lo)) {
          ++count;
          best = std::max(best, data.edge_weights(ik, q));
        }
      }
    return std::pair<int, double>(count, best);
  };

  // the Chern sum below the outer gap is 1: chiral edge branches cross it
  const auto [lo1, hi1] = bulk_gap(topo_point(), 4);
  const auto [count_nu, best_nu] = gap_states(topo_point(), lo1, hi1);
  CHECK(count_nu > 0);
  CHECK(best_nu > 0.6);

  // without drive the wide central gap stays empty
  const auto [lo0, hi0] = bulk_gap(trivial_point(), 2);
  const auto [count_0, best_0] = gap_states(trivial_point(), lo0, hi0);
  CHECK(count_0 == 0);

  SUBCASE("particle-hole mirror symmetry of the strip bands") {
    const StripData data = strip_spectrum(topo_point(), 8, (RVec(2) << 0.9, 5.383185307179586).finished());
    // k and -k (= 2pi - k) spectra are related by E -> -E
    RVec a = data.energies.row(0);
    RVec b = -data.energies.row(1).reverse();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("width precondition") {
    CHECK_THROWS_AS(strip_spectrum(topo_point(), 4, ks), InvalidParameterError);
  }
}

TEST_CASE("gauge-away identity at nu = 0") {
  CHECK(gauge_away_check(trivial_point()));

  KagomeParams perturbed = trivial_point();
  perturbed.phi = 2.0943951023931953 + 0.1;
  CHECK(gauge_away_check(perturbed));

  CHECK_THROWS_AS(gauge_away_check(topo_point()), InvalidParameterError);
}
