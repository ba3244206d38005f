#include "squeezemap/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

namespace sqz {

namespace {

constexpr double kOverflowGuard = 1e12;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,         500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784,  11.0 / 84,   0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

PropagatorSeries evolve_propagator(const NonHermitianHamiltonian& h,
                                   const RVec& t_grid, double rtol) {
  if (rtol <= 0) throw InvalidParameterError("evolve_propagator: rtol must be > 0");
  if (t_grid.size() < 1 || t_grid(0) != 0.0)
    throw InvalidParameterError("evolve_propagator: grid must start at t = 0");
  for (Index i = 1; i < t_grid.size(); ++i)
    if (t_grid(i) <= t_grid(i - 1))
      throw InvalidParameterError("evolve_propagator: grid must be increasing");

  const Index n = h.dim();
  const double t_end = t_grid(t_grid.size() - 1);
  const double span = std::max(t_end, 1e-30);

  PropagatorSeries series;
  series.times = t_grid;
  series.tolerance = rtol;
  series.propagators.reserve(t_grid.size());
  series.propagators.push_back(Mat::Identity(n, n));
  if (t_grid.size() == 1) return series;

  auto rhs = [&](double t, const Mat& u) -> Mat { return cplx(0, -1) * (h.at(t) * u); };

  Mat u = Mat::Identity(n, n);
  double t = 0.0;
  double step = span / 100.0;
  double prev_err = 1.0;
  Index next = 1;
  std::vector<Mat> k(7, Mat(n, n));

  while (next < t_grid.size()) {
    const double target = t_grid(next);
    if (step > target - t) step = target - t;
    if (step < 1e-14 * span)
      throw StepFailureError("evolve_propagator: step size underflow at t = " +
                             std::to_string(t));

    k[0] = rhs(t, u);
    for (int stage = 1; stage < 7; ++stage) {
      Mat acc = u;
      for (int j = 0; j < stage; ++j) acc += step * kA[stage][j] * k[j];
      k[stage] = rhs(t + kC[stage] * step, acc);
    }
    Mat u5 = u, err = Mat::Zero(n, n);
    for (int stage = 0; stage < 7; ++stage) {
      u5 += step * kB5[stage] * k[stage];
      err += step * (kB5[stage] - kB4[stage]) * k[stage];
    }

    const double scale = rtol * std::max({u.norm(), u5.norm(), 1.0});
    const double e = err.norm() / scale;
    if (e <= 1.0) {
      t += step;
      u = u5;
      if (u.norm() > kOverflowGuard)
        throw StepFailureError("evolve_propagator: ||U|| exceeded the overflow guard");
      if (t >= target - 1e-14 * span) {
        t = target;  // pin the grid hit so roundoff cannot accumulate
        series.propagators.push_back(u);
        ++next;
      }
      // PI controller (order 5 error estimate)
      const double fac = 0.9 * std::pow(std::max(e, 1e-10), -0.2) *
                         std::pow(std::max(prev_err, 1e-10), 0.04);
      step *= std::clamp(fac, 0.2, 5.0);
      prev_err = std::max(e, 1e-10);
    } else {
      step *= std::max(0.2, 0.9 * std::pow(e, -0.2));
    }
  }
  return series;
}

SymplecticTransform qmfs_symplectic(const Mat& u) {
  const Index n = u.rows();
  if (u.cols() != n) throw DimensionMismatchError("qmfs_symplectic: U must be square");
  Eigen::JacobiSVD<Mat> svd(u);
  const RVec s = svd.singularValues();
  if (!(s(n - 1) > 0) || s(0) / s(n - 1) > 1e10)
    throw IllConditionedError("qmfs_symplectic: propagator condition number exceeds 1e10");

  const Mat v_dag_inv = u.adjoint().inverse();   // (U^+)^-1
  const Mat v_t_inv = u.transpose().inverse();   // (U^T)^-1

  SymplecticTransform st;
  st.a_block = Mat::Zero(2 * n, 2 * n);
  st.b_block = Mat::Zero(2 * n, 2 * n);
  st.a_block.topLeftCorner(n, n) = 0.5 * (u + v_dag_inv);
  st.a_block.bottomRightCorner(n, n) = 0.5 * (u.conjugate() + v_t_inv);
  st.b_block.topRightCorner(n, n) = 0.5 * (u - v_dag_inv);
  st.b_block.bottomLeftCorner(n, n) = 0.5 * (u.conjugate() - v_t_inv);
  return st;
}

BlochMessiahFactors bloch_messiah(const SymplecticTransform& s) {
  const Index m = s.n_modes();
  if (m % 2 != 0 || s.b_block.rows() != m || s.b_block.cols() != m ||
      s.a_block.cols() != m)
    throw DimensionMismatchError("bloch_messiah: malformed transform");
  const Index n = m / 2;
  if ((s.a_block * s.a_block.adjoint() - s.b_block * s.b_block.adjoint() -
       Mat::Identity(m, m)).norm() > 1e-8 * m)
    throw InvalidParameterError("bloch_messiah: input violates A A^+ - B B^+ = 1");

  // The QMFS transform is determined by the underlying propagator.
  const Mat u = s.a_block.topLeftCorner(n, n) + s.b_block.topRightCorner(n, n);
  Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat w1 = svd.matrixU();
  const Mat w2 = svd.matrixV();
  const RVec d = svd.singularValues();

  BlochMessiahFactors f;
  Vec wu(n);
  f.d_a = RVec(m);
  f.d_b = RVec(m);
  f.squeeze_params = RVec(m);
  for (Index i = 0; i < n; ++i) {
    const double q = 0.5 * (d(i) - 1.0 / d(i));
    if (std::abs(q) < 1e-10) {
      f.degenerate_singular_values = true;
      wu(i) = 1.0;
    } else {
      wu(i) = q > 0 ? cplx(1, 0) : cplx(0, 1);  // sqrt of the sign of d - 1/d
    }
    const double p = 0.5 * (d(i) + 1.0 / d(i));
    f.d_a(i) = f.d_a(n + i) = p;
    f.d_b(i) = f.d_b(n + i) = std::abs(q);
    f.squeeze_params(i) = f.squeeze_params(n + i) = std::acosh(std::max(p, 1.0));
  }

  // Per singular direction k the 2x2 problem  p I = c d_a c^+, q sx = c d_b c^T
  // is solved by c = F diag(w, i conj(w)), F = (1/sqrt2) [[1,1],[1,-1]],
  // w = sqrt(sign q); assembled over the main/conjugate block structure:
  const Mat wu_d = wu.asDiagonal();
  const Mat wu_c = wu.conjugate().asDiagonal();
  const double r = 1.0 / std::sqrt(2.0);
  auto assemble = [&](const Mat& w) {
    Mat out(m, m);
    out.topLeftCorner(n, n) = r * w * wu_d;
    out.topRightCorner(n, n) = cplx(0, r) * w * wu_c;
    out.bottomLeftCorner(n, n) = r * w.conjugate() * wu_d;
    out.bottomRightCorner(n, n) = cplx(0, -r) * w.conjugate() * wu_c;
    return out;
  };
  f.u_bm = assemble(w1);
  f.v_bm = assemble(w2);
  return f;
}

GaussianState GaussianState::vacuum(Index m) {
  GaussianState st;
  st.n_modes = m;
  st.mean = RVec::Zero(2 * m);
  st.covariance = 0.5 * RMat::Identity(2 * m, 2 * m);
  return st;
}

void GaussianState::validate() const {
  if (n_modes < 1 || mean.size() != 2 * n_modes ||
      covariance.rows() != 2 * n_modes || covariance.cols() != 2 * n_modes)
    throw DimensionMismatchError("GaussianState: inconsistent dimensions");
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, covariance.norm()))
    throw InvalidParameterError("GaussianState: covariance must be symmetric");
}

RMat symplectic_form(Index m) {
  RMat omega = RMat::Zero(2 * m, 2 * m);
  omega.topRightCorner(m, m) = RMat::Identity(m, m);
  omega.bottomLeftCorner(m, m) = -RMat::Identity(m, m);
  return omega;
}

RMat real_symplectic(const SymplecticTransform& s) {
  const Index m = s.n_modes();
  const Mat apb = s.a_block + s.b_block;
  const Mat amb = s.a_block - s.b_block;
  RMat out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = apb.real();
  out.topRightCorner(m, m) = -amb.imag();
  out.bottomLeftCorner(m, m) = apb.imag();
  out.bottomRightCorner(m, m) = amb.real();
  return out;
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s) {
  state.validate();
  if (s.n_modes() != state.n_modes)
    throw DimensionMismatchError("apply_symplectic: mode count mismatch");
  const RMat sr = real_symplectic(s);
  GaussianState out;
  out.n_modes = state.n_modes;
  out.mean = sr * state.mean;
  out.covariance = sr * state.covariance * sr.transpose();
  return out;
}

RVec symplectic_eigenvalues(const RMat& covariance) {
  const Index m = covariance.rows() / 2;
  const RMat prod = symplectic_form(m) * covariance;
  Eigen::EigenSolver<RMat> es(prod, /*computeEigenvectors=*/false);
  std::vector<double> mags(2 * m);
  for (Index i = 0; i < 2 * m; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  RVec nus(m);
  for (Index i = 0; i < m; ++i) nus(i) = 0.5 * (mags[2 * i] + mags[2 * i + 1]);
  return nus;
}

double log_negativity(const GaussianState& state, const std::vector<Index>& partition) {
  state.validate();
  const Index m = state.n_modes;
  if (partition.empty() || partition.size() >= static_cast<size_t>(m))
    throw InvalidParameterError("log_negativity: partition must be a proper nonempty subset");
  for (size_t i = 0; i < partition.size(); ++i) {
    if (partition[i] < 0 || partition[i] >= m)
      throw InvalidParameterError("log_negativity: bad mode index");
    for (size_t j = i + 1; j < partition.size(); ++j)
      if (partition[i] == partition[j])
        throw InvalidParameterError("log_negativity: duplicate mode in partition");
  }

  const RVec nus = symplectic_eigenvalues(state.covariance);
  const double phys_tol = 1e-8 * (1.0 + state.covariance.norm());
  if (nus.minCoeff() < 0.5 - phys_tol)
    throw UnphysicalStateError("log_negativity: covariance violates the uncertainty bound");

  RMat pt = state.covariance;
  for (Index p : partition) {
    pt.row(m + p) *= -1.0;
    pt.col(m + p) *= -1.0;
  }
  const RVec nutilde = symplectic_eigenvalues(pt);
  double en = 0.0;
  for (Index i = 0; i < m; ++i)
    en += std::max(0.0, -std::log2(2.0 * nutilde(i)));
  return en;
}

}  // namespace sqz
