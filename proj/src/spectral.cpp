#include "squeezemap/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "squeezemap/models.hpp"

namespace sqz {

namespace {

// Clusters a sorted-by-(Re,Im) spectrum by single linkage in the complex
// plane.  Greedy: a value joins the cluster of any member closer than thr.
std::vector<std::vector<int>> cluster_spectrum(const Vec& evals, double thr) {
  const int n = static_cast<int>(evals.size());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < static_cast<int>(clusters.size()) && label[i] < 0; ++c) {
      for (int j : clusters[c]) {
        if (std::abs(evals(i) - evals(j)) <= thr) {
          clusters[c].push_back(i);
          label[i] = c;
          break;
        }
      }
    }
    if (label[i] < 0) {
      label[i] = static_cast<int>(clusters.size());
      clusters.push_back({i});
    }
  }
  return clusters;
}

}  // namespace

BiorthogonalEigensystem biorthogonal_eig(const NonHermitianHamiltonian& h, double tol) {
  if (tol <= 0) throw InvalidParameterError("biorthogonal_eig: tol must be > 0");
  const Index n = h.dim();
  Eigen::ComplexEigenSolver<Mat> solver(h.matrix(), /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("biorthogonal_eig: eigensolver did not converge");

  Vec evals = solver.eigenvalues();
  Mat right = solver.eigenvectors();

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return spectral_less(evals(a), evals(b));
  });

  BiorthogonalEigensystem sys;
  sys.eigenvalues = Vec(n);
  sys.right_vectors = Mat(n, n);
  for (Index k = 0; k < n; ++k) {
    sys.eigenvalues(k) = evals(order[k]);
    Vec r = right.col(order[k]);
    r /= r.norm();
    Index imax = 0;
    r.cwiseAbs().maxCoeff(&imax);
    cplx ph = r(imax) / std::abs(r(imax));
    sys.right_vectors.col(k) = r / ph;
  }

  Eigen::JacobiSVD<Mat> svd(sys.right_vectors);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  sys.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(sys.condition < 1.0 / tol))
    throw DefectiveMatrixError(
        "biorthogonal_eig: eigenvector matrix condition " + std::to_string(sys.condition) +
        " exceeds 1/tol; matrix is (numerically) defective");

  sys.left_vectors = sys.right_vectors.inverse().adjoint();
  return sys;
}

void attach_symplectic_signs(BiorthogonalEigensystem& sys, const Mat& sigma) {
  const Index n = sys.left_vectors.cols();
  if (sigma.rows() != n || sigma.cols() != n)
    throw DimensionMismatchError("attach_symplectic_signs: sigma size mismatch");
  RVec signs(n);
  for (Index k = 0; k < n; ++k) {
    const cplx q = sys.left_vectors.col(k).dot(sigma * sys.left_vectors.col(k));
    signs(k) = q.real() >= 0 ? 1.0 : -1.0;
  }
  sys.symplectic_signs = signs;
}

EpReport ep_detect(const NonHermitianHamiltonian& h, double tol) {
  if (tol <= 0) throw InvalidParameterError("ep_detect: tol must be > 0");
  const Index n = h.dim();
  const double scale = norm_scale(h.matrix());

  Eigen::ComplexEigenSolver<Mat> solver(h.matrix(), false);
  const Vec evals = solver.eigenvalues();
  const auto clusters = cluster_spectrum(evals, tol * scale);

  EpReport report;
  report.ep_order = 1;
  report.is_defective = false;
  report.defect_metric = 0.0;
  if (n > 0) report.cluster_center = evals(0);

  for (const auto& members : clusters) {
    const int ma = static_cast<int>(members.size());
    if (ma < 2) continue;
    cplx center{0, 0};
    for (int j : members) center += evals(j);
    center /= static_cast<double>(ma);

    Eigen::JacobiSVD<Mat> svd(h.matrix() - center * Mat::Identity(n, n));
    const RVec s = svd.singularValues();
    const double thr = tol * scale;
    int nullity = 0;
    double below = 0.0, above = s(0);
    for (Index i = 0; i < n; ++i) {
      if (s(i) < thr) {
        ++nullity;
        below = std::max(below, s(i));
      } else {
        above = s(i);  // singular values are sorted descending
      }
    }
    if (nullity == 0) nullity = 1;  // numerically no null vector; treat as simple
    const int order = (ma + nullity - 1) / nullity;
    if (order > report.ep_order) {
      report.ep_order = order;
      report.cluster_center = center;
      report.defect_metric = (above - below) / scale;
    }
  }
  report.is_defective = report.ep_order >= 2;
  return report;
}

PtPhase classify_pt_phase(const NonHermitianHamiltonian& h, double tol) {
  // EP screen first: a defective spectrum is its own phase.
  // The clustering threshold must sit above eigensolver noise at a defective
  // point, which grows like ||H|| * eps^(1/order); 1e-4 covers order <= 3.
  EpReport ep = ep_detect(h, std::max(tol, 1e-4));
  if (ep.is_defective) return PtPhase::ExceptionalPoint;

  Eigen::ComplexEigenSolver<Mat> solver(h.matrix(), false);
  const double imax = solver.eigenvalues().imag().cwiseAbs().maxCoeff();
  return imax < tol * norm_scale(h.matrix()) ? PtPhase::Unbroken : PtPhase::Broken;
}

bool check_pseudo_hermitian(const NonHermitianHamiltonian& m, const Mat& eta, double tol) {
  const Index n = m.dim();
  if (eta.rows() != n || eta.cols() != n)
    throw DimensionMismatchError("check_pseudo_hermitian: eta size mismatch");
  if ((eta - eta.adjoint()).norm() > tol * norm_scale(eta))
    throw InvalidParameterError("check_pseudo_hermitian: eta is not Hermitian");
  Eigen::JacobiSVD<Mat> svd(eta);
  const RVec s = svd.singularValues();
  if (s(n - 1) < 1e-12 * s(0))
    throw SingularEtaError("check_pseudo_hermitian: eta is numerically singular");
  Eigen::PartialPivLU<Mat> lu(eta);
  const Mat rhs = eta * m.matrix();
  const Mat transformed = lu.solve(rhs.transpose()).transpose();  // eta M eta^-1
  return (m.matrix().adjoint() - transformed).norm() <= tol * norm_scale(m.matrix());
}

bool check_pt_symmetry(const NonHermitianHamiltonian& h, const Mat& parity, double tol) {
  const Index n = h.dim();
  if (parity.rows() != n || parity.cols() != n)
    throw DimensionMismatchError("check_pt_symmetry: parity size mismatch");
  if ((parity * parity.adjoint() - Mat::Identity(n, n)).norm() > 1e-10)
    throw InvalidParameterError("check_pt_symmetry: parity must be unitary");
  const Mat lhs = h.matrix().conjugate();
  const Mat rhs = parity * h.matrix() * parity.adjoint();
  return (lhs - rhs).norm() <= tol * norm_scale(h.matrix());
}

RMat quadrature_generator(const BosonicQuadraticHamiltonian& hb) {
  const BosonicQuadraticHamiltonian single = single_species_form(hb);
  const Index m = single.n_modes;
  const Mat dyn = dynamical_matrix(single).matrix();

  // (c, c^+) = Xi (x, p) with Xi = (1/sqrt2) [[I, iI], [I, -iI]]
  Mat xi(2 * m, 2 * m);
  const double r = 1.0 / std::sqrt(2.0);
  xi.topLeftCorner(m, m) = r * Mat::Identity(m, m);
  xi.topRightCorner(m, m) = cplx(0, r) * Mat::Identity(m, m);
  xi.bottomLeftCorner(m, m) = r * Mat::Identity(m, m);
  xi.bottomRightCorner(m, m) = cplx(0, -r) * Mat::Identity(m, m);

  const Mat k = cplx(0, -1) * (xi.inverse() * dyn * xi);
  if (k.imag().cwiseAbs().maxCoeff() > 1e-10 * norm_scale(dyn))
    throw NumericalError("quadrature_generator: generator has a residual imaginary part");
  return k.real();
}

std::vector<RVec> conserved_quadratures(const BosonicQuadraticHamiltonian& hb, double tol) {
  const RMat k = quadrature_generator(hb);
  Eigen::JacobiSVD<RMat> svd(k.transpose(), Eigen::ComputeFullV);
  const RVec s = svd.singularValues();
  const double thr = tol * std::max(s(0), 1.0);
  std::vector<RVec> basis;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= thr) {
      RVec v = svd.matrixV().col(i);
      Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      if (v(imax) < 0) v = -v;
      basis.push_back(v);
    }
  }
  return basis;
}

}  // namespace sqz
