#include "squeezemap/mapping.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "squeezemap/parallel.hpp"
#include "squeezemap/spectral.hpp"

namespace sqz {

namespace {

using RVec3 = Eigen::Vector3d;

std::array<Mat, 3> pauli_matrices() {
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  return {sx, sy, sz};
}

// SU(2) element implementing a given SO(3) rotation: U (n.sigma) U^+ = (Rn).sigma.
Mat su2_from_rotation(const Eigen::Matrix3d& rot) {
  // Shepperd quaternion extraction, then U = w I - i (x sx + y sy + z sz).
  const double t = rot.trace();
  double w, x, y, z;
  if (t > 0) {
    double s = std::sqrt(t + 1.0) * 2;
    w = 0.25 * s;
    x = (rot(2, 1) - rot(1, 2)) / s;
    y = (rot(0, 2) - rot(2, 0)) / s;
    z = (rot(1, 0) - rot(0, 1)) / s;
  } else if (rot(0, 0) > rot(1, 1) && rot(0, 0) > rot(2, 2)) {
    double s = std::sqrt(1.0 + rot(0, 0) - rot(1, 1) - rot(2, 2)) * 2;
    w = (rot(2, 1) - rot(1, 2)) / s;
    x = 0.25 * s;
    y = (rot(0, 1) + rot(1, 0)) / s;
    z = (rot(0, 2) + rot(2, 0)) / s;
  } else if (rot(1, 1) > rot(2, 2)) {
    double s = std::sqrt(1.0 + rot(1, 1) - rot(0, 0) - rot(2, 2)) * 2;
    w = (rot(0, 2) - rot(2, 0)) / s;
    x = (rot(0, 1) + rot(1, 0)) / s;
    y = 0.25 * s;
    z = (rot(1, 2) + rot(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + rot(2, 2) - rot(0, 0) - rot(1, 1)) * 2;
    w = (rot(1, 0) - rot(0, 1)) / s;
    x = (rot(0, 2) + rot(2, 0)) / s;
    y = (rot(1, 2) + rot(2, 1)) / s;
    z = 0.25 * s;
  }
  const auto p = pauli_matrices();
  return w * Mat::Identity(2, 2) - cplx(0, 1) * (x * p[0] + y * p[1] + z * p[2]);
}

RVec3 any_unit_perpendicular(const RVec3& v) {
  RVec3 trial = std::abs(v.x()) < 0.9 ? RVec3::UnitX() : RVec3::UnitY();
  RVec3 p = trial - trial.dot(v) * v;
  return p.normalized();
}

Mat nearest_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

Mat MappingCertificate::equivalent_source() const {
  const Mat& h = source.matrix();
  switch (kind) {
    case MappingKind::DpaHalf:
      return h - dropped_trace * Mat::Identity(h.rows(), h.cols());
    case MappingKind::NdpaSameCount:
      return h;
    case MappingKind::QmfsDoubled: {
      const Index n = h.rows();
      Mat d = Mat::Zero(2 * n, 2 * n);
      d.topLeftCorner(n, n) = h;
      d.bottomRightCorner(n, n) = h.adjoint();
      return d;
    }
  }
  throw InvalidParameterError("unknown mapping kind");
}

MappingCertificate dpa_map(const NonHermitianHamiltonian& h, double tol) {
  if (h.dim() != 2) throw DimensionMismatchError("dpa_map: expects a 2x2 Hamiltonian");
  const auto p = pauli_matrices();
  const Mat& m = h.matrix();
  const cplx trace_part = m.trace() / 2.0;

  RVec3 c, d;
  for (int k = 0; k < 3; ++k) {
    const cplx v = (p[k] * m).trace() / 2.0;
    c(k) = v.real();
    d(k) = v.imag();
  }
  const double cn = c.norm(), dn = d.norm();
  if (std::abs(c.dot(d)) > tol * std::max(cn * dn, 1e-300))
    throw NotPtEquivalentError(
        "dpa_map: Hermitian and anti-Hermitian parts are not orthogonal "
        "(c.d = " + std::to_string(c.dot(d)) + ")");

  // Rotate c to the z axis and d to the x axis.
  RVec3 e3 = cn > 0 ? RVec3(c / cn) : RVec3();
  RVec3 e1 = dn > 0 ? RVec3(d / dn) : RVec3();
  if (cn == 0 && dn == 0) {
    e3 = RVec3::UnitZ();
    e1 = RVec3::UnitX();
  } else if (cn == 0) {
    e3 = any_unit_perpendicular(e1);
  } else if (dn == 0) {
    e1 = any_unit_perpendicular(e3);
  } else {
    e1 = (e1 - e1.dot(e3) * e3).normalized();  // exact within tol already
  }
  Eigen::Matrix3d rot;
  rot.row(0) = e1;
  rot.row(1) = e3.cross(e1);
  rot.row(2) = e3;
  const Mat u = su2_from_rotation(rot);

  MappingCertificate cert{h, build_dpa(cn, dn), u, 0.0, MappingKind::DpaHalf, trace_part};
  const Mat mapped = u * cert.equivalent_source() * u.adjoint();
  cert.residual = (mapped - dynamical_matrix(cert.target).matrix()).norm() /
                  norm_scale(m);
  return cert;
}

CanonicalPtForm canonical_pt_form(const NonHermitianHamiltonian& h_pt, double tol) {
  const Index dim = h_pt.dim();
  if (dim % 2 != 0 || dim < 2)
    throw DimensionMismatchError("canonical_pt_form: dimension must be even");
  const Index n = dim / 2;
  if (!check_pt_symmetry(h_pt, sigma_nx(n), std::max(tol, 1e-10)))
    throw NotPtSymmetricError("canonical_pt_form: input is not sigma_{N,x} PT-symmetric");

  const Mat& h = h_pt.matrix();
  const double scale = norm_scale(h);
  const Mat gamma_pt = (h - h.adjoint()) / cplx(0, 2);

  Eigen::SelfAdjointEigenSolver<Mat> es(gamma_pt);
  const RVec lam = es.eigenvalues();  // ascending
  for (Index k = 0; k < n; ++k) {
    if (std::abs(lam(k) + lam(dim - 1 - k)) > 1e-9 * scale)
      throw NotPtSymmetricError("canonical_pt_form: gain/loss spectrum is not +- paired");
  }
  if (lam.cwiseAbs().minCoeff() < tol * scale)
    throw RankDeficientGainLossError(
        "canonical_pt_form: anti-Hermitian part is (numerically) rank deficient");

  // Reorder eigenpairs to diag(Gamma_N, -Gamma_N) with Gamma_N nonincreasing.
  Mat q(dim, dim);
  RVec gamma_n(n);
  for (Index k = 0; k < n; ++k) {
    q.col(k) = es.eigenvectors().col(dim - 1 - k);
    gamma_n(k) = lam(dim - 1 - k);
    q.col(n + k) = es.eigenvectors().col(k);
  }
  const Mat u_gamma = q.adjoint();

  const Mat u_tilde = u_gamma * sigma_nx(n) * u_gamma.transpose();
  if (u_tilde.topLeftCorner(n, n).norm() > 1e-8 ||
      u_tilde.bottomRightCorner(n, n).norm() > 1e-8)
    throw NumericalError("canonical_pt_form: unexpected diagonal blocks in U-tilde");
  const Mat u12 = u_tilde.topRightCorner(n, n);

  Mat t = Mat::Identity(dim, dim);
  t.bottomRightCorner(n, n) = u12.conjugate();
  t = t * u_gamma;

  const Mat h2 = t * h * t.adjoint();
  CanonicalPtForm form;
  form.gamma_n = gamma_n;
  form.transform = t;
  form.sigma_tilde = h2.topLeftCorner(n, n) -
                     cplx(0, 1) * gamma_n.cast<cplx>().asDiagonal().toDenseMatrix();
  form.j_tilde = h2.topRightCorner(n, n);

  if ((form.j_tilde - form.j_tilde.transpose()).norm() > 1e-8 * scale ||
      (form.sigma_tilde - form.sigma_tilde.adjoint()).norm() > 1e-8 * scale ||
      (h2.bottomLeftCorner(n, n) - form.j_tilde.conjugate()).norm() > 1e-8 * scale)
    throw NumericalError("canonical_pt_form: canonical block structure not reached");
  return form;
}

MappingCertificate pt_chain_to_ndpa(const PtChainSpec& spec) {
  if (spec.n_pairs < 1) throw DimensionMismatchError("pt_chain_to_ndpa: empty spec");
  auto complain = [](const char* which, const char* why) {
    throw ConditionsViolatedError(std::string("pt_chain_to_ndpa: ") + which + " " + why);
  };
  auto check = [&](const Mat& m, const char* name) {
    if (m.rows() != spec.n_pairs || m.cols() != spec.n_pairs)
      complain(name, "has wrong dimensions");
    if (!is_finite(m)) complain(name, "has non-finite entries");
    if (m.imag().cwiseAbs().maxCoeff() > 1e-12) complain(name, "is not real");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) complain(name, "is not symmetric");
  };
  check(spec.omega, "Omega");
  check(spec.gamma, "Gamma");
  check(spec.j_mat, "J");

  const Index n = spec.n_pairs;
  BosonicQuadraticHamiltonian target;
  target.n_modes = n;
  target.species = Species::Pair;
  target.mu_a = spec.omega + spec.j_mat;
  target.mu_b = spec.j_mat - spec.omega;
  target.nu = cplx(0, 1) * spec.gamma;
  target.validate();

  MappingCertificate cert{build_pt_chain(spec), target, balanced_mixer(n), 0.0,
                          MappingKind::NdpaSameCount, cplx(0, 0)};
  const Mat mapped = cert.unitary * cert.source.matrix() * cert.unitary.adjoint();
  cert.residual = (mapped - dynamical_matrix(target).matrix()).norm() /
                  norm_scale(cert.source.matrix());
  return cert;
}

MappingCertificate qmfs_construct(const NonHermitianHamiltonian& h) {
  const Index n = h.dim();
  const Mat hp = (h.matrix() + h.matrix().adjoint()) / 2.0;
  const Mat hm = (h.matrix() - h.matrix().adjoint()) / 2.0;

  BosonicQuadraticHamiltonian target;
  target.n_modes = n;
  target.species = Species::Pair;
  target.mu_a = hp;
  target.mu_b = -hp.transpose();
  target.nu = hm;
  target.validate();

  MappingCertificate cert{h, target, balanced_mixer(n), 0.0, MappingKind::QmfsDoubled,
                          cplx(0, 0)};
  const Mat mapped = cert.unitary * cert.equivalent_source() * cert.unitary.adjoint();
  cert.residual = (mapped - dynamical_matrix(target).matrix()).norm() /
                  norm_scale(h.matrix());
  return cert;
}

namespace {

// Real-linear constraint L(w) on a complex matrix w; the witness search
// treats Re(w), Im(w) as independent real unknowns.
using Constraint = std::function<Mat(const Mat&)>;

struct CommutantBasis {
  Index n = 0;
  std::vector<std::pair<Index, Index>> blocks;  // (offset, size) per group
  Index real_params = 0;

  Mat assemble(const RVec& params) const {
    Mat w = Mat::Zero(n, n);
    Index at = 0;
    for (auto [off, sz] : blocks) {
      for (Index i = 0; i < sz; ++i)
        for (Index j = 0; j < sz; ++j) {
          w(off + i, off + j) = cplx(params(at), params(at + 1));
          at += 2;
        }
    }
    return w;
  }

  RVec project(const Mat& w) const {
    RVec params(real_params);
    Index at = 0;
    for (auto [off, sz] : blocks) {
      for (Index i = 0; i < sz; ++i)
        for (Index j = 0; j < sz; ++j) {
          params(at) = w(off + i, off + j).real();
          params(at + 1) = w(off + i, off + j).imag();
          at += 2;
        }
    }
    return params;
  }
};

CommutantBasis commutant_of(const RVec& d, double group_tol) {
  CommutantBasis basis;
  basis.n = d.size();
  const double thr = group_tol * std::max(d.cwiseAbs().maxCoeff(), 1.0);
  Index start = 0;
  for (Index i = 1; i <= d.size(); ++i) {
    if (i == d.size() || std::abs(d(i) - d(start)) > thr) {
      basis.blocks.emplace_back(start, i - start);
      basis.real_params += 2 * (i - start) * (i - start);
      start = i;
    }
  }
  return basis;
}

double witness_residual(const Mat& w, const std::vector<Constraint>& cons,
                        const std::vector<double>& scales) {
  double r = (w * w.adjoint() - Mat::Identity(w.rows(), w.cols())).norm();
  for (size_t i = 0; i < cons.size(); ++i)
    r = std::max(r, cons[i](w).norm() / scales[i]);
  return r;
}

WitnessResult witness_search(const RVec& commuting_diag,
                             const std::vector<Constraint>& cons,
                             const std::vector<double>& scales, double tol,
                             const WitnessOptions& opts) {
  const CommutantBasis basis = commutant_of(commuting_diag, opts.group_tol);
  const Index n = basis.n;
  const Index np = basis.real_params;

  // Stack the constraints as one real-linear operator on the parameters.
  Index rows = 0;
  for (const auto& c : cons) {
    (void)c;
    rows += 2 * n * n;
  }
  RMat op(rows, np);
  for (Index pimg = 0; pimg < np; ++pimg) {
    RVec e = RVec::Zero(np);
    e(pimg) = 1.0;
    const Mat w = basis.assemble(e);
    Index at = 0;
    for (size_t ci = 0; ci < cons.size(); ++ci) {
      const Mat out = cons[ci](w) / scales[ci];
      op.block(at, pimg, n * n, 1) =
          Eigen::Map<const RVec>(RMat(out.real()).data(), n * n);
      op.block(at + n * n, pimg, n * n, 1) =
          Eigen::Map<const RVec>(RMat(out.imag()).data(), n * n);
      at += 2 * n * n;
    }
  }

  Eigen::JacobiSVD<RMat> svd(op, Eigen::ComputeFullV);
  const RVec s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Index nullity = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) <= 1e-10 * std::max(smax, 1.0)) ++nullity;
  nullity += np - s.size();  // wide operator: parameters beyond the rank

  WitnessResult result;
  result.null_dimension = static_cast<int>(nullity);
  result.best_residual = std::numeric_limits<double>::infinity();

  // Candidate start vectors: null-space combinations when available,
  // otherwise the least-violating singular directions (reported residual
  // then quantifies how badly the intertwining equations fail).
  const RMat v = svd.matrixV();
  const Index nfree = std::max<Index>(nullity, std::min<Index>(np, 2));
  const RMat free_dirs = v.rightCols(nfree);

  std::mt19937_64 rng(opts.rng_seed);
  std::normal_distribution<double> gauss;
  const int n_seeds = nullity > 0 ? opts.seeds : std::max(4, opts.seeds / 8);
  std::vector<RVec> starts;
  starts.reserve(n_seeds);
  for (int sd = 0; sd < n_seeds; ++sd) {
    RVec coef(nfree);
    for (Index i = 0; i < nfree; ++i) coef(i) = gauss(rng);
    starts.push_back(free_dirs * coef);
  }

  std::vector<Mat> found(n_seeds);
  std::vector<double> residuals(n_seeds,
                                std::numeric_limits<double>::infinity());
  const RMat null_basis = nullity > 0 ? RMat(v.rightCols(nullity)) : RMat();

  parallel::parallel_for(n_seeds, [&](Index sd) {
    Mat w = basis.assemble(starts[sd]);
    for (int it = 0; it < opts.iterations; ++it) {
      w = nearest_unitary(w);
      if (nullity > 0) {
        RVec params = basis.project(w);
        w = basis.assemble(null_basis * (null_basis.transpose() * params));
      } else {
        break;  // nothing to alternate with
      }
    }
    w = nearest_unitary(w);
    found[sd] = w;
    residuals[sd] = witness_residual(w, cons, scales);
  });

  for (int sd = 0; sd < n_seeds; ++sd) {
    if (residuals[sd] < result.best_residual) {
      result.best_residual = residuals[sd];
      result.w12 = found[sd];
    }
  }
  result.exists = result.best_residual <= tol;
  return result;
}

}  // namespace

WitnessResult pt_to_pa_existence(const CanonicalPtForm& form, double tol,
                                 const WitnessOptions& opts) {
  if (form.gamma_n.minCoeff() <= 0)
    throw RankDeficientGainLossError("pt_to_pa_existence: Gamma_N must be positive");
  const Mat jt = form.j_tilde;
  const Mat st = form.sigma_tilde;
  std::vector<Constraint> cons = {
      [jt](const Mat& w) { return Mat(w * jt.conjugate() - jt * w.adjoint()); },
      [st](const Mat& w) { return Mat(w * st.conjugate() - st * w); },
  };
  std::vector<double> scales = {norm_scale(jt), norm_scale(st)};
  return witness_search(form.gamma_n, cons, scales, tol, opts);
}

WitnessResult pa_to_pt_existence(const BosonicQuadraticHamiltonian& hb, double tol,
                                 const WitnessOptions& opts) {
  hb.validate();
  Eigen::JacobiSVD<Mat> svd(hb.nu, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec d_nu = svd.singularValues();
  if (d_nu.minCoeff() < tol * norm_scale(hb.nu))
    throw DegeneratePairingError(
        "pa_to_pt_existence: pairing block has (near-)zero singular values");

  const Mat va = svd.matrixU().adjoint();
  const Mat vb = svd.matrixV().adjoint();
  const Mat a = va * hb.mu_a * va.adjoint();
  const Mat b = vb * hb.mu_b.transpose() * vb.adjoint();
  const Mat sigma = (a + b) / 2.0;
  const Mat delta = (a - b) / 2.0;

  std::vector<Constraint> cons = {
      [sigma](const Mat& w) { return Mat(w * sigma - sigma.conjugate() * w.transpose()); },
      [delta](const Mat& w) { return Mat(w * delta - delta.conjugate() * w); },
  };
  std::vector<double> scales = {norm_scale(sigma), norm_scale(delta)};
  return witness_search(d_nu, cons, scales, tol, opts);
}

}  // namespace sqz
