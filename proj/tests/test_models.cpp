#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "squeezemap/models.hpp"
#include "squeezemap/spectral.hpp"
#include "test_util.hpp"

using namespace sqz;

TEST_CASE("dimer constructors") {
  CHECK(build_pt_dimer(0.0, 0.0).matrix().norm() == 0.0);

  const Mat h = build_pt_dimer(1.0, 1.0).matrix();
  CHECK(h(0, 0) == cplx(0, 0.5));
  CHECK(h(0, 1) == cplx(1, 0));
  CHECK(h(1, 0) == cplx(1, 0));
  CHECK(h(1, 1) == cplx(0, -0.5));

  Eigen::ComplexEigenSolver<Mat> es(build_pt_dimer(2.0, 2.0).matrix(), false);
  Vec expect(2);
  expect << -std::sqrt(3.0), std::sqrt(3.0);
  CHECK(multiset_distance(es.eigenvalues(), expect) < 1e-12);
}

TEST_CASE("detuned dimer") {
  CHECK((build_detuned_dimer(0.0, 0.7, 1.1).matrix() - build_pt_dimer(0.7, 1.1).matrix())
            .norm() == 0.0);
  const Mat h = build_detuned_dimer(0.1, 0.55, 1.0).matrix();
  CHECK(h(0, 0) == cplx(0.1, 0.5));
  CHECK(h(1, 1) == cplx(-0.1, -0.5));
  CHECK(h(0, 1) == cplx(0.55, 0));

  // Hermitian part (omega sz + g sx), anti-Hermitian part (gamma/2) sz:
  // the Pauli vectors fail orthogonality by omega * gamma / 2.
  const Mat hp = (h + h.adjoint()) / 2.0;
  const Mat hm = (h - h.adjoint()) / cplx(0, 2);
  Mat sz(2, 2);
  sz << 1, 0, 0, -1;
  const double c_dot_d = ((hp * sz).trace() / 2.0 * (hm * sz).trace() / 2.0).real();
  CHECK(c_dot_d == doctest::Approx(0.1 * 0.5).epsilon(1e-12));
}

TEST_CASE("DPA and its dynamical matrix") {
  const Mat m = dynamical_matrix(build_dpa(0.7, 0.3)).matrix();
  Mat expect(2, 2);
  expect << 0.7, cplx(0, 0.3), cplx(0, 0.3), -0.7;
  CHECK((m - expect).norm() < 1e-15);

  CHECK_THROWS_AS(build_dpa(0.5, -0.1), InvalidParameterError);

  SUBCASE("nu = 0 is a bare detuning") {
    const Mat m0 = dynamical_matrix(build_dpa(1.3, 0.0)).matrix();
    CHECK(m0(0, 1) == cplx(0, 0));
    CHECK(m0(0, 0) == cplx(1.3, 0));
    CHECK(m0(1, 1) == cplx(-1.3, 0));
  }

  SUBCASE("eigenvalues +-sqrt(delta^2 - nu^2) across a grid") {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        // offsets keep the samples away from the defective line |delta| = nu
        const double delta = -2.0 + 4.0 * i / 19.0 + 0.013;
        const double nu = 2.0 * j / 19.0 + 0.0042;
        Eigen::ComplexEigenSolver<Mat> es(
            dynamical_matrix(build_dpa(delta, nu)).matrix(), false);
        const cplx lam = std::sqrt(cplx(delta * delta - nu * nu, 0));
        Vec expect2(2);
        expect2 << -lam, lam;
        CHECK(multiset_distance(es.eigenvalues(), expect2) < 1e-12);
      }
    }
  }
}

TEST_CASE("PT chain") {
  SUBCASE("N = 1 reduces to the dimer") {
    RVec t(1), gains(2);
    t << 0.8;
    gains << 1.1, -1.1;  // gain on the left site
    const auto spec = PtChainSpec::nearest_neighbour(t, gains);
    CHECK((build_pt_chain(spec).matrix() - build_pt_dimer(0.8, 1.1).matrix()).norm() <
          1e-15);
    // swapped gain/loss is the same dimer in the flipped mode ordering
    gains << -1.1, 1.1;
    const auto spec2 = PtChainSpec::nearest_neighbour(t, gains);
    const Mat sx = sigma_nx(1);
    CHECK((build_pt_chain(spec2).matrix() -
           sx * build_pt_dimer(0.8, 1.1).matrix() * sx).norm() < 1e-15);
  }

  SUBCASE("SSH dimerization is accepted and PT-symmetric") {
    const Index n = 5;  // 10 sites
    RVec t(2 * n - 1), gains(2 * n);
    const double t0 = 1.0, t1 = 0.4, g0 = 0.3;
    for (Index b = 0; b < t.size(); ++b) {
      const Index j = b - (n - 1);  // signed bond label about the centre
      t(b) = t0 + ((j % 2 + 2) % 2 == 0 ? t1 : -t1);
    }
    for (Index b = 0; b < t.size() / 2; ++b) t(t.size() - 1 - b) = t(b);  // mirror
    for (Index s = 0; s < n; ++s) {
      const double val = (s % 2 == 0 ? g0 : -g0);
      gains(n + s) = val;
      gains(n - 1 - s) = -val;
    }
    const auto chain = build_pt_chain(PtChainSpec::nearest_neighbour(t, gains));
    CHECK(check_pt_symmetry(chain, sigma_nx(n)));
  }

  SUBCASE("asymmetric gains violate PT") {
    RVec t(3), gains(4);
    t << 1, 1, 1;
    gains << 0.5, 0.2, -0.2, -0.4;
    CHECK_THROWS_AS(PtChainSpec::nearest_neighbour(t, gains), PtViolationError);
  }
}

TEST_CASE("gain-loss trimer") {
  SUBCASE("triple zero eigenvalue at the third-order EP") {
    Eigen::ComplexEigenSolver<Mat> es(
        build_hoep_trimer(std::sqrt(2.0) / 4.0, 1.0, 0.0).matrix(), false);
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() < 1e-4);
  }
  SUBCASE("characteristic polynomial at g = gamma") {
    const double g = 1.0, gamma = 1.0;
    Eigen::ComplexEigenSolver<Mat> es(build_hoep_trimer(g, gamma, 0.0).matrix(), false);
    const double s = std::sqrt(2 * g * g - gamma * gamma / 4);
    Vec expect(3);
    expect << -s, 0.0, s;
    CHECK(multiset_distance(es.eigenvalues(), expect) < 1e-12);
  }
  SUBCASE("gamma = 0 is Hermitian with a real spectrum") {
    const Mat h = build_hoep_trimer(0.7, 0.0, 0.2).matrix();
    CHECK((h - h.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("three-mode amplifier reproduces the trimer spectrum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.1, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const double g = uni(rng), gamma = uni(rng), eps = uni(rng) - 0.75;
    Eigen::ComplexEigenSolver<Mat> trimer(build_hoep_trimer(g, gamma, eps).matrix(),
                                          false);
    Eigen::ComplexEigenSolver<Mat> ndpa(
        dynamical_matrix(build_hoep_ndpa(g, gamma, eps)).matrix(), false);
    Vec expect(6);
    expect << trimer.eigenvalues(), -trimer.eigenvalues();
    CHECK(multiset_distance(ndpa.eigenvalues(), expect) < 1e-10);
  }

  SUBCASE("third-order EP of the bosonic model") {
    const auto ep = ep_detect(
        dynamical_matrix(build_hoep_ndpa(std::sqrt(2.0) / 4.0, 1.0, 0.0)));
    CHECK(ep.ep_order == 3);
  }

  SUBCASE("g = 0 decouples the detuned mode") {
    const Mat m = dynamical_matrix(build_hoep_ndpa(0.0, 1.0, 0.0)).matrix();
    // mode b sits at indices 2 and 5; only the diagonal may be nonzero
    for (Index i = 0; i < 6; ++i) {
      if (i == 2 || i == 5) continue;
      CHECK(std::abs(m(2, i)) == 0.0);
      CHECK(std::abs(m(i, 2)) == 0.0);
      CHECK(std::abs(m(5, i)) == 0.0);
      CHECK(std::abs(m(i, 5)) == 0.0);
    }
  }
}

TEST_CASE("dynamical matrices are sigma_Nz pseudo-Hermitian") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    BosonicQuadraticHamiltonian hb;
    hb.n_modes = 1 + (trial % 4);
    Mat a = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
    Mat b = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
    hb.mu_a = a + a.adjoint();
    hb.mu_b = b + b.adjoint();
    hb.nu = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
    hb.species = Species::Pair;
    CHECK(check_pseudo_hermitian(dynamical_matrix(hb), sigma_nz(hb.n_modes), 1e-12));
    // the single-species rewrite is pseudo-Hermitian too
    const auto single = single_species_form(hb);
    CHECK(check_pseudo_hermitian(dynamical_matrix(single), sigma_nz(single.n_modes),
                                 1e-12));
  }
}

TEST_CASE("zero pairing gives a block-diagonal dynamical matrix") {
  BosonicQuadraticHamiltonian hb;
  hb.n_modes = 2;
  hb.mu_a = Mat::Identity(2, 2) * 0.5;
  hb.mu_b = Mat::Identity(2, 2) * 1.5;
  hb.nu = Mat::Zero(2, 2);
  hb.species = Species::Pair;
  const Mat m = dynamical_matrix(hb).matrix();
  CHECK(m.topRightCorner(2, 2).norm() == 0.0);
  CHECK(m.bottomLeftCorner(2, 2).norm() == 0.0);
  CHECK((m.bottomRightCorner(2, 2) + hb.mu_b.transpose()).norm() == 0.0);
}
