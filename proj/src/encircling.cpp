#include "squeezemap/encircling.hpp"

#include <cmath>

#include "squeezemap/models.hpp"

namespace sqz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Bilinearly normalized eigenvectors (r^T r = 1) of the detuned dimer for
// both branches; lambda_plus carries the principal square root.
struct Frame {
  cplx lambda_plus, lambda_minus;
  Vec r_plus, r_minus;
};

Frame instantaneous_frame(double g, double omega, double gamma) {
  const cplx a(omega, gamma / 2);
  const cplx lam = std::sqrt(a * a + g * g);
  Frame f;
  f.lambda_plus = lam;
  f.lambda_minus = -lam;
  auto evec = [&](const cplx& l) {
    Vec r(2);
    r << a + l, cplx(g, 0);
    const cplx n2 = r(0) * r(0) + r(1) * r(1);
    return Vec(r / std::sqrt(n2));
  };
  f.r_plus = evec(lam);
  f.r_minus = evec(-lam);
  return f;
}

double unit_overlap(const Vec& a, const Vec& b) {
  return std::abs(a.normalized().dot(b.normalized()));
}

}  // namespace

std::pair<double, double> path_at(const EncirclingPath& path, double t) {
  path.validate();
  const double sign = path.direction == Direction::CCW ? 1.0 : -1.0;
  const double phi = path.phi0 + sign * kTwoPi * t / path.duration;
  return {path.center_g + path.radius * std::cos(phi), path.radius * std::sin(phi)};
}

NonHermitianHamiltonian path_hamiltonian(const EncirclingPath& path) {
  path.validate();
  const double gamma = path.gamma;
  return NonHermitianHamiltonian::time_dependent([path, gamma](double t) {
    auto [g, omega] = path_at(path, t);
    Mat h(2, 2);
    h << cplx(omega, gamma / 2), cplx(g, 0), cplx(g, 0), cplx(-omega, -gamma / 2);
    return h;
  });
}

EigenframeTrace eigenframe_trace(const EncirclingPath& path, int n_steps) {
  path.validate();
  if (n_steps < 2) throw InvalidParameterError("eigenframe_trace: n_steps must be >= 2");

  EigenframeTrace trace;
  const int m = n_steps + 1;
  trace.times = RVec::LinSpaced(m, 0.0, path.duration);
  trace.lambda_plus = Vec(m);
  trace.lambda_minus = Vec(m);
  trace.r_plus = Mat(2, m);
  trace.r_minus = Mat(2, m);

  Frame prev;
  for (int i = 0; i < m; ++i) {
    auto [g, omega] = path_at(path, trace.times(i));
    Frame f = instantaneous_frame(g, omega, path.gamma);
    if (std::abs(f.lambda_plus - f.lambda_minus) < 1e-10 * path.gamma)
      throw BranchCrossingError("eigenframe_trace: path touches the exceptional point");
    if (i > 0) {
      // assign branches by maximal overlap with the previous step
      const double keep = unit_overlap(prev.r_plus, f.r_plus);
      const double swap = unit_overlap(prev.r_plus, f.r_minus);
      if (swap > keep) {
        std::swap(f.r_plus, f.r_minus);
        std::swap(f.lambda_plus, f.lambda_minus);
      }
      const double confidence = std::max(keep, swap);
      trace.min_overlap = std::min(trace.min_overlap, confidence);
      if (confidence < 0.9)
        throw BranchCrossingError("eigenframe_trace: branch tracking confidence " +
                                  std::to_string(confidence) + " below 0.9");
      // the bilinear normalization leaves a +- gauge; keep it continuous
      if ((prev.r_plus.adjoint() * f.r_plus)(0).real() < 0) f.r_plus = -f.r_plus;
      if ((prev.r_minus.adjoint() * f.r_minus)(0).real() < 0) f.r_minus = -f.r_minus;
    }
    trace.lambda_plus(i) = f.lambda_plus;
    trace.lambda_minus(i) = f.lambda_minus;
    trace.r_plus.col(i) = f.r_plus;
    trace.r_minus.col(i) = f.r_minus;
    prev = f;
  }

  const Frame start = instantaneous_frame(path.center_g + path.radius * std::cos(path.phi0),
                                          path.radius * std::sin(path.phi0), path.gamma);
  const double same = unit_overlap(trace.r_plus.col(m - 1), start.r_plus);
  const double crossed = unit_overlap(trace.r_plus.col(m - 1), start.r_minus);
  trace.end_swap = crossed > same;
  return trace;
}

GaussianState coherent_pseudo_mode_state(const Vec& z_mean) {
  if (z_mean.size() != 2)
    throw DimensionMismatchError("coherent_pseudo_mode_state: need 2 pseudo-mode means");
  GaussianState st = GaussianState::vacuum(4);
  const double r = std::sqrt(2.0);
  // <a_j> = z_j, <b_j> = 0 realizes <z_j> = <a_j> + <b_j^+> = z_j
  st.mean(0) = r * z_mean(0).real();
  st.mean(1) = r * z_mean(1).real();
  st.mean(4) = r * z_mean(0).imag();
  st.mean(5) = r * z_mean(1).imag();
  return st;
}

GaussianState build_asymmetric_state(double lambda0, const Vec& r_plus0,
                                     const Vec& r_minus0) {
  if (lambda0 < 0)
    throw InvalidParameterError("build_asymmetric_state: lambda0 must be >= 0");
  if (r_plus0.size() != 2 || r_minus0.size() != 2)
    throw DimensionMismatchError("build_asymmetric_state: frame must be two 2-vectors");

  // Orthonormal basis (e1, e2) = (r+/|r+|, conj(r-)/|r-|); (xi, xi_perp) = Uz z.
  const Vec e1 = r_plus0.normalized();
  const Vec e2 = r_minus0.conjugate().normalized();
  if (std::abs(e1.dot(e2)) > 1e-8)
    throw InvalidParameterError("build_asymmetric_state: frame vectors are not a valid eigenbasis");
  Mat uz(2, 2);
  uz.row(0) = e1.adjoint();
  uz.row(1) = e2.adjoint();

  RMat ru(4, 4);  // (Re z1, Re z2, Im z1, Im z2) -> (Re xi, Re xi_p, Im xi, Im xi_p)
  ru.topLeftCorner(2, 2) = uz.real();
  ru.topRightCorner(2, 2) = -uz.imag();
  ru.bottomLeftCorner(2, 2) = uz.imag();
  ru.bottomRightCorner(2, 2) = uz.real();

  RVec var(4);
  var << std::exp(2 * lambda0), std::exp(-2 * lambda0), std::exp(2 * lambda0),
      std::exp(-2 * lambda0);
  const RMat sigma_xi = 0.5 * var.asDiagonal().toDenseMatrix();
  const RMat sigma_u = ru.transpose() * sigma_xi * ru;
  const RMat sigma_v = 0.25 * sigma_u.inverse();  // pure, uncorrelated conjugate sector

  // u = (x+1, x+2, p-1, p-2), v = (p+1, p+2, -x-1, -x-2) from the mode
  // quadratures r = (x_a1, x_a2, x_b1, x_b2, p_a1, p_a2, p_b1, p_b2).
  RMat tm = RMat::Zero(8, 8);
  const double s = 1.0 / std::sqrt(2.0);
  tm(0, 0) = s; tm(0, 2) = s;
  tm(1, 1) = s; tm(1, 3) = s;
  tm(2, 4) = s; tm(2, 6) = -s;
  tm(3, 5) = s; tm(3, 7) = -s;
  tm(4, 4) = s; tm(4, 6) = s;
  tm(5, 5) = s; tm(5, 7) = s;
  tm(6, 0) = -s; tm(6, 2) = s;
  tm(7, 1) = -s; tm(7, 3) = s;

  RMat sigma_uv = RMat::Zero(8, 8);
  sigma_uv.topLeftCorner(4, 4) = sigma_u;
  sigma_uv.bottomRightCorner(4, 4) = sigma_v;

  GaussianState st;
  st.n_modes = 4;
  st.mean = RVec::Zero(8);
  st.covariance = tm.transpose() * sigma_uv * tm;
  st.validate();
  return st;
}

EncirclingRun run_encircling(const EncirclingPath& path, const GaussianState& initial,
                             double rtol, int n_steps) {
  initial.validate();
  if (initial.n_modes != 4)
    throw DimensionMismatchError("run_encircling: initial state must have 4 modes");

  EncirclingRun run;
  run.trace = eigenframe_trace(path, n_steps);
  run.propagators = evolve_propagator(path_hamiltonian(path), run.trace.times, rtol);

  const int m = n_steps + 1;
  run.states.reserve(m);
  run.entanglement = RVec(m);
  run.trace.amp_plus.resize(m);
  run.trace.amp_minus.resize(m);
  const std::vector<Index> a_modes = {0, 1};

  for (int i = 0; i < m; ++i) {
    const SymplecticTransform st = qmfs_symplectic(run.propagators.propagators[i]);
    GaussianState state = apply_symplectic(initial, st);
    run.entanglement(i) = log_negativity(state, a_modes);

    Vec z(2);
    const double r = 1.0 / std::sqrt(2.0);
    z(0) = cplx(r * (state.mean(0) + state.mean(2)), r * (state.mean(4) - state.mean(6)));
    z(1) = cplx(r * (state.mean(1) + state.mean(3)), r * (state.mean(5) - state.mean(7)));
    run.trace.amp_plus[i] = (run.trace.r_plus.col(i).transpose() * z)(0);
    run.trace.amp_minus[i] = (run.trace.r_minus.col(i).transpose() * z)(0);
    run.states.push_back(std::move(state));
  }
  return run;
}

ChiralityMetrics chirality_metric(const EncirclingRun& cw, const EncirclingRun& ccw) {
  const Index m = cw.entanglement.size();
  if (ccw.entanglement.size() != m)
    throw DimensionMismatchError("chirality_metric: runs use different grids");
  ChiralityMetrics metrics;
  metrics.max_en_diff = (cw.entanglement - ccw.entanglement).cwiseAbs().maxCoeff();
  metrics.final_en_diff = std::abs(cw.entanglement(m - 1) - ccw.entanglement(m - 1));

  const cplx cp_ccw = ccw.trace.amp_plus.back(), cm_ccw = ccw.trace.amp_minus.back();
  const cplx cp_cw = cw.trace.amp_plus.back(), cm_cw = cw.trace.amp_minus.back();
  const double floor = 1e-300;  // zero-mean runs carry no amplitude signal
  if (std::abs(cp_ccw) < floor || std::abs(cm_ccw) < floor ||
      std::abs(cp_cw) < floor || std::abs(cm_cw) < floor) {
    metrics.amplitude_ratio_log = 0.0;
  } else {
    metrics.amplitude_ratio_log = std::log(std::abs(cp_ccw) / std::abs(cm_ccw)) +
                                  std::log(std::abs(cm_cw) / std::abs(cp_cw));
  }
  return metrics;
}

}  // namespace sqz
