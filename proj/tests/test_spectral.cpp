#include <doctest.h>

#include <cmath>

#include "squeezemap/models.hpp"
#include "squeezemap/spectral.hpp"
#include "test_util.hpp"

using namespace sqz;

namespace {
const double kSqrt34 = std::sqrt(0.75);
}

TEST_CASE("biorthogonal_eig on sigma_x") {
  Mat sx(2, 2);
  sx << 0, 1, 1, 0;
  const auto sys = biorthogonal_eig(NonHermitianHamiltonian(sx));
  CHECK(sys.eigenvalues(0).real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sys.eigenvalues(1).real() == doctest::Approx(1.0).epsilon(1e-14));
  // eigenvectors (1, -+1)/sqrt2 up to the fixed gauge
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((sys.right_vectors.col(0) - (Vec(2) << r, -r).finished()).norm() < 1e-12);
  CHECK((sys.right_vectors.col(1) - (Vec(2) << r, r).finished()).norm() < 1e-12);
  CHECK((sys.left_vectors.adjoint() * sys.right_vectors - Mat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("dimer spectrum matches the closed form") {
  const auto sys = biorthogonal_eig(build_pt_dimer(1.0, 1.0));
  CHECK(std::abs(sys.eigenvalues(0) - cplx(-kSqrt34, 0)) < 1e-12);
  CHECK(std::abs(sys.eigenvalues(1) - cplx(kSqrt34, 0)) < 1e-12);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double g = uni(rng), gamma = uni(rng);
    if (std::abs(g - gamma / 2) < 1e-2) continue;  // EP neighbourhood: defective
    const auto s = biorthogonal_eig(build_pt_dimer(g, gamma), 1e-6);
    const cplx lam = std::sqrt(cplx(g * g - gamma * gamma / 4, 0));
    Vec expect(2);
    expect << -lam, lam;
    CHECK(multiset_distance(s.eigenvalues, expect) < 1e-12);
  }
}

TEST_CASE("biorthonormality and reconstruction on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + (trial % 5);
    const NonHermitianHamiltonian h(testutil::random_complex(n, n, rng));
    const auto sys = biorthogonal_eig(h);
    CHECK((sys.left_vectors.adjoint() * sys.right_vectors - Mat::Identity(n, n)).norm() <
          1e-10 * sys.condition);
    Mat rebuilt = Mat::Zero(n, n);
    for (Index k = 0; k < n; ++k)
      rebuilt += sys.eigenvalues(k) * sys.right_vectors.col(k) *
                 sys.left_vectors.col(k).adjoint();
    CHECK((rebuilt - h.matrix()).norm() <= 1e-9 * norm_scale(h.matrix()));
  }
}

TEST_CASE("defective dimer is rejected by the eigensolver") {
  CHECK_THROWS_AS(biorthogonal_eig(build_pt_dimer(0.5, 1.0)), DefectiveMatrixError);
}

TEST_CASE("ep_detect finds EP orders") {
  SUBCASE("second order at the dimer critical point") {
    const auto ep = ep_detect(build_pt_dimer(0.5, 1.0));
    CHECK(ep.is_defective);
    CHECK(ep.ep_order == 2);
    CHECK(std::abs(ep.cluster_center) < 1e-6);  // quadratic EP noise ~ eps^(1/2)
  }
  SUBCASE("third order in the trimer") {
    const auto ep = ep_detect(build_hoep_trimer(std::sqrt(2.0) / 4.0, 1.0, 0.0));
    CHECK(ep.ep_order == 3);
    CHECK(std::abs(ep.cluster_center) < 1e-4);  // eigensolver noise ~ eps^(1/3)
  }
  SUBCASE("degenerate but diagonalizable") {
    const auto ep = ep_detect(NonHermitianHamiltonian(Mat::Identity(4, 4)));
    CHECK_FALSE(ep.is_defective);
    CHECK(ep.ep_order == 1);
  }
  SUBCASE("order 2 exactly on the critical line, order 1 a margin away") {
    const double gamma = 1.3;
    CHECK(ep_detect(build_pt_dimer(gamma / 2, gamma)).ep_order == 2);
    CHECK(ep_detect(build_pt_dimer(gamma / 2 + 1e-3 * gamma, gamma)).ep_order == 1);
    CHECK(ep_detect(build_pt_dimer(gamma / 2 - 1e-3 * gamma, gamma)).ep_order == 1);
  }
}

TEST_CASE("classify_pt_phase") {
  CHECK(classify_pt_phase(build_pt_dimer(1.0, 1.0)) == PtPhase::Unbroken);
  CHECK(classify_pt_phase(build_pt_dimer(0.5, 1.0)) == PtPhase::ExceptionalPoint);

  const auto h = build_pt_dimer(0.4, 1.0);
  CHECK(classify_pt_phase(h) == PtPhase::Broken);
  const auto sys = biorthogonal_eig(h);
  Vec expect(2);
  expect << cplx(0, -0.3), cplx(0, 0.3);
  CHECK(multiset_distance(sys.eigenvalues, expect) < 1e-12);
}

TEST_CASE("phase classification is invariant under unitary conjugation") {
  std::mt19937_64 rng(11);
  const auto models = {build_pt_dimer(1.0, 1.0), build_pt_dimer(0.4, 1.0),
                       build_pt_dimer(0.5, 1.0)};
  for (const auto& h : models) {
    const PtPhase ref = classify_pt_phase(h);
    for (int trial = 0; trial < 50; ++trial) {
      const Mat u = testutil::random_unitary(2, rng);
      const NonHermitianHamiltonian conj(u * h.matrix() * u.adjoint());
      CHECK(classify_pt_phase(conj) == ref);
    }
  }
}

TEST_CASE("pseudo-Hermiticity checks") {
  SUBCASE("every dynamical matrix is sigma_Nz pseudo-Hermitian") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      BosonicQuadraticHamiltonian hb;
      hb.n_modes = 2 + (trial % 3);
      Mat a = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
      Mat b = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
      hb.mu_a = a + a.adjoint();
      hb.mu_b = b + b.adjoint();
      hb.nu = testutil::random_complex(hb.n_modes, hb.n_modes, rng);
      hb.species = Species::Pair;
      CHECK(check_pseudo_hermitian(dynamical_matrix(hb), sigma_nz(hb.n_modes), 1e-10));
    }
  }
  SUBCASE("Hermitian matrix with identity eta") {
    Mat h(2, 2);
    h << 1.0, cplx(0, 2), cplx(0, -2), -0.5;
    CHECK(check_pseudo_hermitian(NonHermitianHamiltonian(h), Mat::Identity(2, 2)));
  }
  SUBCASE("uniform gain is not sigma_z pseudo-Hermitian") {
    Mat sz(2, 2);
    sz << 1, 0, 0, -1;
    const NonHermitianHamiltonian gain(cplx(0, 1) * Mat::Identity(2, 2));
    CHECK_FALSE(check_pseudo_hermitian(gain, sz));
  }
  SUBCASE("singular eta") {
    Mat eta = Mat::Zero(2, 2);
    eta(0, 0) = 1;
    CHECK_THROWS_AS(
        check_pseudo_hermitian(NonHermitianHamiltonian(Mat::Identity(2, 2)), eta),
        SingularEtaError);
  }
}

TEST_CASE("PT symmetry checks") {
  Mat sx(2, 2);
  sx << 0, 1, 1, 0;
  CHECK(check_pt_symmetry(build_pt_dimer(0.7, 1.2), sx));
  CHECK_FALSE(check_pt_symmetry(build_detuned_dimer(0.1, 0.55, 1.0), sx));

  Mat real_sym(3, 3);
  real_sym << 1, 2, 0, 2, -1, 0.5, 0, 0.5, 0.2;
  CHECK(check_pt_symmetry(NonHermitianHamiltonian(real_sym), Mat::Identity(3, 3)));
}

TEST_CASE("conserved quadratures") {
  SUBCASE("DPA at threshold has one QND quadrature") {
    const auto basis = conserved_quadratures(build_dpa(1.0, 1.0), 1e-10);
    REQUIRE(basis.size() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((basis[0] - (RVec(2) << r, r).finished()).norm() < 1e-12);
  }
  SUBCASE("third-order EP amplifier has two") {
    const auto hb = build_hoep_ndpa(std::sqrt(2.0) / 4.0, 1.0, 0.0);
    const auto basis = conserved_quadratures(hb, 1e-10);
    REQUIRE(basis.size() == 2);
    const RMat k = quadrature_generator(hb);
    for (const auto& v : basis) CHECK((k.transpose() * v).norm() <= 1e-10);
  }
  SUBCASE("stable detuned DPA has none") {
    CHECK(conserved_quadratures(build_dpa(2.0, 1.0), 1e-10).empty());
  }
}

TEST_CASE("symplectic signs label particle and hole branches") {
  auto sys = biorthogonal_eig(dynamical_matrix(build_dpa(2.0, 1.0)));
  attach_symplectic_signs(sys, sigma_nz(1));
  REQUIRE(sys.symplectic_signs.has_value());
  CHECK(sys.symplectic_signs->sum() == doctest::Approx(0.0));  // one +1, one -1
}
