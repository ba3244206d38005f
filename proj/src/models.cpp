#include "squeezemap/models.hpp"

#include <cmath>
#include <sstream>

namespace sqz {

Mat sigma_nz(Index n) {
  Mat s = Mat::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = Mat::Identity(n, n);
  s.bottomRightCorner(n, n) = -Mat::Identity(n, n);
  return s;
}

Mat sigma_nx(Index n) {
  Mat s = Mat::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n) = Mat::Identity(n, n);
  s.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return s;
}

Mat balanced_mixer(Index n) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = r * Mat::Identity(n, n);
  u.topRightCorner(n, n) = r * Mat::Identity(n, n);
  u.bottomLeftCorner(n, n) = r * Mat::Identity(n, n);
  u.bottomRightCorner(n, n) = -r * Mat::Identity(n, n);
  return u;
}

NonHermitianHamiltonian build_pt_dimer(double g, double gamma) {
  Mat h(2, 2);
  h << cplx(0, gamma / 2), cplx(g, 0), cplx(g, 0), cplx(0, -gamma / 2);
  return NonHermitianHamiltonian(h);
}

NonHermitianHamiltonian build_detuned_dimer(double omega, double g, double gamma) {
  Mat h(2, 2);
  h << cplx(omega, gamma / 2), cplx(g, 0), cplx(g, 0), cplx(-omega, -gamma / 2);
  return NonHermitianHamiltonian(h);
}

BosonicQuadraticHamiltonian build_dpa(double delta, double nu) {
  if (nu < 0)
    throw InvalidParameterError("build_dpa: drive amplitude nu must be >= 0 (fixed gauge)");
  BosonicQuadraticHamiltonian hb;
  hb.n_modes = 1;
  hb.mu_a = Mat::Constant(1, 1, cplx(delta, 0));
  hb.mu_b = hb.mu_a;
  hb.nu = Mat::Constant(1, 1, cplx(0, nu));
  hb.species = Species::Single;
  hb.validate();
  return hb;
}

PtChainSpec PtChainSpec::nearest_neighbour(const RVec& hoppings, const RVec& gains) {
  const Index sites = gains.size();
  if (sites < 2 || sites % 2 != 0)
    throw DimensionMismatchError("chain needs an even number of sites >= 2");
  if (hoppings.size() != sites - 1)
    throw DimensionMismatchError("chain with 2N sites needs 2N-1 bonds");
  const Index n = sites / 2;
  for (Index b = 0; b < hoppings.size(); ++b) {
    if (std::abs(hoppings(b) - hoppings(sites - 2 - b)) > 1e-12)
      throw PtViolationError("hoppings are not mirror-symmetric (t_j != t_-j)");
  }
  for (Index s = 0; s < sites; ++s) {
    if (std::abs(gains(s) + gains(sites - 1 - s)) > 1e-12)
      throw PtViolationError("gains are not mirror-antisymmetric (gamma_j != -gamma_-j)");
  }

  PtChainSpec spec;
  spec.n_pairs = n;
  spec.omega = Mat::Zero(n, n);
  spec.gamma = Mat::Zero(n, n);
  spec.j_mat = Mat::Zero(n, n);
  // Bonds on the right half couple b_l to b_{l+1}: array bond N+l-1
  // carries the mirror-symmetric amplitude t_l for l = 1..N-1.
  for (Index l = 0; l + 1 < n; ++l) {
    spec.omega(l, l + 1) = hoppings(n + l);
    spec.omega(l + 1, l) = hoppings(n + l);
  }
  spec.j_mat(0, 0) = hoppings(n - 1);  // central bond t_0
  for (Index l = 0; l < n; ++l) spec.gamma(l, l) = gains(n - 1 - l) / 2.0;  // a_l gain
  return spec;
}

void PtChainSpec::validate(double tol) const {
  if (n_pairs < 1) throw DimensionMismatchError("PtChainSpec: n_pairs must be >= 1");
  auto square = [&](const Mat& m) {
    return m.rows() == n_pairs && m.cols() == n_pairs;
  };
  if (!square(omega) || !square(gamma) || !square(j_mat))
    throw DimensionMismatchError("PtChainSpec: coefficient matrices must be N x N");
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > tol)
    throw PtViolationError("PtChainSpec: Omega must be symmetric");
  if ((j_mat - j_mat.transpose()).cwiseAbs().maxCoeff() > tol)
    throw PtViolationError("PtChainSpec: J must be symmetric");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > tol)
    throw PtViolationError("PtChainSpec: Gamma must be symmetric");
}

NonHermitianHamiltonian build_pt_chain(const PtChainSpec& spec) {
  spec.validate();
  const Index n = spec.n_pairs;
  Mat h = Mat::Zero(2 * n, 2 * n);
  h.topLeftCorner(n, n) = spec.omega + cplx(0, 1) * spec.gamma;
  h.bottomRightCorner(n, n) = spec.omega - cplx(0, 1) * spec.gamma;
  h.topRightCorner(n, n) = spec.j_mat;
  h.bottomLeftCorner(n, n) = spec.j_mat;
  return NonHermitianHamiltonian(h);
}

NonHermitianHamiltonian build_hoep_trimer(double g, double gamma, double epsilon) {
  Mat h = Mat::Zero(3, 3);
  h(0, 0) = cplx(0, gamma / 2);
  h(2, 2) = cplx(0, -gamma / 2);
  h(1, 1) = cplx(epsilon, 0);
  h(0, 1) = h(1, 0) = h(1, 2) = h(2, 1) = cplx(g, 0);
  return NonHermitianHamiltonian(h);
}

BosonicQuadraticHamiltonian build_hoep_ndpa(double g, double nu, double epsilon) {
  if (nu < 0)
    throw InvalidParameterError("build_hoep_ndpa: drive amplitude nu must be >= 0");
  // modes (a1, a2, b)
  BosonicQuadraticHamiltonian hb;
  hb.n_modes = 3;
  hb.mu_a = Mat::Zero(3, 3);
  hb.mu_a(1, 2) = hb.mu_a(2, 1) = cplx(std::sqrt(2.0) * g, 0);
  hb.mu_a(2, 2) = cplx(epsilon, 0);
  hb.mu_b = hb.mu_a;
  hb.nu = Mat::Zero(3, 3);
  hb.nu(0, 1) = hb.nu(1, 0) = cplx(0, nu / 2);
  hb.species = Species::Single;
  hb.validate();
  return hb;
}

NonHermitianHamiltonian dynamical_matrix(const BosonicQuadraticHamiltonian& hb) {
  hb.validate();
  const Index n = hb.n_modes;
  Mat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = hb.mu_a;
  m.topRightCorner(n, n) = hb.nu;
  m.bottomLeftCorner(n, n) = -hb.nu.adjoint();
  m.bottomRightCorner(n, n) = -hb.mu_b.transpose();
  return NonHermitianHamiltonian(m);
}

BosonicQuadraticHamiltonian single_species_form(const BosonicQuadraticHamiltonian& hb) {
  hb.validate();
  if (hb.species == Species::Single) return hb;
  const Index n = hb.n_modes;
  BosonicQuadraticHamiltonian out;
  out.n_modes = 2 * n;
  out.species = Species::Single;
  out.mu_a = Mat::Zero(2 * n, 2 * n);
  out.mu_a.topLeftCorner(n, n) = hb.mu_a;
  out.mu_a.bottomRightCorner(n, n) = hb.mu_b;
  out.mu_b = out.mu_a;
  out.nu = Mat::Zero(2 * n, 2 * n);
  out.nu.topRightCorner(n, n) = hb.nu;
  out.nu.bottomLeftCorner(n, n) = hb.nu.transpose();
  out.validate();
  return out;
}

}  // namespace sqz
