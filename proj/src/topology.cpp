#include "squeezemap/topology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "squeezemap/parallel.hpp"

namespace sqz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kIsolationGap = 1e-6;
constexpr double kRealSpectrumTol = 1e-8;

Eigen::Matrix2d reciprocal_basis() {
  const auto a = kagome_lattice_vectors();
  Eigen::Matrix2d cell;
  cell.col(0) = a[0];
  cell.col(1) = a[1];
  return kTwoPi * cell.inverse();  // rows are b1, b2
}

Eigen::Vector2d cartesian_k(double k1, double k2) {
  static const Eigen::Matrix2d b = reciprocal_basis();
  return (k1 / kTwoPi) * b.row(0).transpose() + (k2 / kTwoPi) * b.row(1).transpose();
}

struct BandData {
  std::vector<Vec> right;  // per grid point, the band's right eigenvector
  std::vector<Vec> left;   // biorthogonal partner, l^+ r = 1
  double gap_min = std::numeric_limits<double>::infinity();
  double max_imag = 0.0;
};

// Diagonalizes the field over the offset grid and extracts one band (sorted
// by real part).  The per-point solves run in parallel; reductions are
// serial so results do not depend on the thread count.
BandData sample_band(const BlochField& field, int band, int grid) {
  if (band < 0 || band >= field.bands)
    throw InvalidParameterError("chern: band index out of range");
  if (grid < 4) throw InvalidParameterError("chern: grid must be >= 4");

  const int npts = grid * grid;
  BandData data;
  data.right.resize(npts);
  data.left.resize(npts);
  std::vector<double> gaps(npts), imags(npts);

  parallel::parallel_for(npts, [&](Index idx) {
    const int i = static_cast<int>(idx) / grid;
    const int j = static_cast<int>(idx) % grid;
    const double k1 = kTwoPi * (i + 0.5) / grid;
    const double k2 = kTwoPi * (j + 0.5) / grid;
    const Mat h = field.sampler(k1, k2);

    Eigen::ComplexEigenSolver<Mat> es(h, true);
    const Index n = h.rows();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
    });

    Mat v(n, n);
    double imax = 0.0;
    for (Index c = 0; c < n; ++c) {
      v.col(c) = es.eigenvectors().col(order[c]);
      imax = std::max(imax, std::abs(es.eigenvalues()(order[c]).imag()));
    }
    const Mat w = v.inverse();

    double gap = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < n; ++c) {
      if (c == band) continue;
      gap = std::min(gap, std::abs(es.eigenvalues()(order[c]) -
                                   es.eigenvalues()(order[band])));
    }
    gaps[idx] = gap;
    imags[idx] = imax;
    data.right[idx] = v.col(band);
    data.left[idx] = w.row(band).adjoint();
  });

  for (int idx = 0; idx < npts; ++idx) {
    data.gap_min = std::min(data.gap_min, gaps[idx]);
    data.max_imag = std::max(data.max_imag, imags[idx]);
  }
  return data;
}

double scale_of(const BlochField& field) {
  return norm_scale(field.sampler(0.31, 1.17));
}

void screen_band(const BlochField& field, const BandData& data) {
  if (data.max_imag > kRealSpectrumTol * scale_of(field))
    throw UnstableRegimeError(
        "chern: sampled spectrum is not real (max |Im E| = " +
        std::to_string(data.max_imag) + "); outside the stable regime");
  if (!(data.gap_min > kIsolationGap))
    throw BandTouchingError("chern: band is not isolated on the grid (min gap " +
                            std::to_string(data.gap_min) + ")");
}

double plaquette_sum(int grid, const std::function<cplx(int, int)>& link_x,
                     const std::function<cplx(int, int)>& link_y) {
  double total = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const int ip = (i + 1) % grid;
      const int jp = (j + 1) % grid;
      const cplx hol = link_x(i, j) * link_y(ip, j) /
                       (link_x(i, jp) * link_y(i, j));
      total += std::arg(hol);
    }
  }
  return total / kTwoPi;
}

}  // namespace

bool check_periodicity(const BlochField& field, int samples) {
  for (int i = 0; i < samples; ++i) {
    const double k1 = kTwoPi * (i + 0.37) / samples;
    const double k2 = kTwoPi * (i * 0.61 + 0.13) / samples;
    const Mat h = field.sampler(k1, k2);
    if ((h - field.sampler(k1 + kTwoPi, k2)).norm() > 1e-10 ||
        (h - field.sampler(k1, k2 + kTwoPi)).norm() > 1e-10)
      return false;
  }
  return true;
}

std::array<Eigen::Vector2d, 3> kagome_lattice_vectors() {
  const double s3 = std::sqrt(3.0);
  return {Eigen::Vector2d(-1, -s3), Eigen::Vector2d(2, 0), Eigen::Vector2d(-1, s3)};
}

Mat kagome_tau(const Eigen::Vector2d& k_cart) {
  const auto a = kagome_lattice_vectors();
  auto phase = [&](const Eigen::Vector2d& v) {
    return std::exp(cplx(0, k_cart.dot(v)));
  };
  Mat t = Mat::Zero(3, 3);
  t(0, 1) = 1.0 + phase(-a[0]);
  t(1, 0) = 1.0 + phase(a[0]);
  t(0, 2) = 1.0 + phase(a[2]);
  t(2, 0) = 1.0 + phase(-a[2]);
  t(1, 2) = 1.0 + phase(-a[1]);
  t(2, 1) = 1.0 + phase(a[1]);
  return t;
}

Mat kagome_bloch(const KagomeParams& p, double k1, double k2) {
  const Mat tau = kagome_tau(cartesian_k(k1, k2));
  const Mat mu = p.omega0 * Mat::Identity(3, 3) - p.j * tau;
  Vec drive(3);
  for (int s = 0; s < 3; ++s) drive(s) = -p.nu * std::exp(cplx(0, p.phi * s));
  const Mat h = drive.asDiagonal();

  Mat m(6, 6);
  m.topLeftCorner(3, 3) = mu;
  m.topRightCorner(3, 3) = h;
  m.bottomLeftCorner(3, 3) = -h.adjoint();
  m.bottomRightCorner(3, 3) = -mu;  // -mu(-k)^T = -mu(k) for this lattice
  return m;
}

Mat kagome_pt_bloch(const KagomeParams& p, double k1, double k2) {
  const Mat tau = kagome_tau(cartesian_k(k1, k2));
  Mat sigma(3, 3), delta(3, 3);
  for (int s = 0; s < 3; ++s) {
    for (int s2 = 0; s2 < 3; ++s2) {
      const double dphi = 2.0 * p.phi * (s - s2);
      sigma(s, s2) = cplx(0, 1) * p.j * tau(s, s2) * std::sin(dphi);
      delta(s, s2) = (s == s2 ? cplx(p.omega0, 0) : cplx(0, 0)) -
                     p.j * tau(s, s2) * std::cos(dphi);
    }
  }
  Mat m(6, 6);
  m.topLeftCorner(3, 3) = sigma - cplx(0, p.nu) * Mat::Identity(3, 3);
  m.topRightCorner(3, 3) = delta;
  m.bottomLeftCorner(3, 3) = delta;
  m.bottomRightCorner(3, 3) = sigma + cplx(0, p.nu) * Mat::Identity(3, 3);
  return m;
}

BlochField kagome_field(const KagomeParams& p) {
  BlochField field;
  field.bands = 6;
  field.sampler = [p](double k1, double k2) { return kagome_bloch(p, k1, k2); };
  Mat sz = Mat::Zero(6, 6);
  sz.topLeftCorner(3, 3) = Mat::Identity(3, 3);
  sz.bottomRightCorner(3, 3) = -Mat::Identity(3, 3);
  field.sigma_norm = sz;
  return field;
}

BlochField kagome_pt_field(const KagomeParams& p) {
  BlochField field;
  field.bands = 6;
  field.sampler = [p](double k1, double k2) { return kagome_pt_bloch(p, k1, k2); };
  return field;
}

ChernResult chern_lr(const BlochField& field, int band, int grid) {
  const BandData data = sample_band(field, band, grid);
  screen_band(field, data);
  auto at = [&](int i, int j) { return i * grid + j; };
  auto link_x = [&](int i, int j) {
    return data.left[at(i, j)].dot(data.right[at((i + 1) % grid, j)]);
  };
  auto link_y = [&](int i, int j) {
    return data.left[at(i, j)].dot(data.right[at(i, (j + 1) % grid)]);
  };
  ChernResult result;
  result.gap_min = data.gap_min;
  result.value = plaquette_sum(grid, link_x, link_y);
  result.rounded = static_cast<int>(std::lround(result.value));
  return result;
}

ChernResult chern_symplectic(const BlochField& field, int band, int grid) {
  if (!field.sigma_norm)
    throw InvalidParameterError("chern_symplectic: field carries no sigma_norm");
  const Mat sigma = *field.sigma_norm;
  BandData data = sample_band(field, band, grid);
  screen_band(field, data);

  // symplectic normalization |l^+ sigma l| = 1; the band's norm sign must be
  // uniform over the grid for the invariant to be meaningful
  double sign0 = 0.0;
  for (auto& l : data.left) {
    const double q = l.dot(sigma * l).real();
    if (std::abs(q) < 1e-12)
      throw NumericalError("chern_symplectic: vanishing symplectic norm");
    if (sign0 == 0.0) sign0 = q > 0 ? 1.0 : -1.0;
    if ((q > 0 ? 1.0 : -1.0) != sign0)
      throw NumericalError("chern_symplectic: symplectic norm changes sign across the grid");
    l /= std::sqrt(std::abs(q));
  }

  auto at = [&](int i, int j) { return i * grid + j; };
  auto link_x = [&](int i, int j) {
    return data.left[at(i, j)].dot(sigma * data.left[at((i + 1) % grid, j)]);
  };
  auto link_y = [&](int i, int j) {
    return data.left[at(i, j)].dot(sigma * data.left[at(i, (j + 1) % grid)]);
  };
  ChernResult result;
  result.gap_min = data.gap_min;
  result.value = plaquette_sum(grid, link_x, link_y);
  result.rounded = static_cast<int>(std::lround(result.value));
  return result;
}

namespace {

// Hopping blocks of the strip geometry: offsets (dn, dm) in the (a1, a2)
// cell basis with 3x3 sublattice structure.
struct HopBlock {
  int dn, dm;
  Eigen::Matrix3cd t;
};

std::vector<HopBlock> strip_hop_blocks() {
  std::vector<HopBlock> blocks;
  Eigen::Matrix3cd t0;
  t0 << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  blocks.push_back({0, 0, t0});
  auto single = [](int r, int c) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(r, c) = 1;
    return m;
  };
  blocks.push_back({-1, 0, single(0, 1)});
  blocks.push_back({1, 0, single(1, 0)});
  blocks.push_back({-1, -1, single(0, 2)});  // a3 = -a1 - a2
  blocks.push_back({1, 1, single(2, 0)});
  blocks.push_back({0, -1, single(1, 2)});
  blocks.push_back({0, 1, single(2, 1)});
  return blocks;
}

Mat strip_matrix(const KagomeParams& p, int width, double k_par) {
  const auto blocks = strip_hop_blocks();
  Mat mu = Mat::Zero(3 * width, 3 * width);
  for (const auto& blk : blocks) {
    const cplx ph = std::exp(cplx(0, k_par * blk.dm));
    for (int n = 0; n < width; ++n) {
      const int n2 = n + blk.dn;
      if (n2 < 0 || n2 >= width) continue;
      mu.block(3 * n, 3 * n2, 3, 3) += -p.j * ph * blk.t;
    }
  }
  mu += p.omega0 * Mat::Identity(3 * width, 3 * width);

  Mat h = Mat::Zero(3 * width, 3 * width);
  for (int n = 0; n < width; ++n)
    for (int s = 0; s < 3; ++s)
      h(3 * n + s, 3 * n + s) = -p.nu * std::exp(cplx(0, p.phi * s));

  Mat m(6 * width, 6 * width);
  m.topLeftCorner(3 * width, 3 * width) = mu;
  m.topRightCorner(3 * width, 3 * width) = h;
  m.bottomLeftCorner(3 * width, 3 * width) = -h.adjoint();
  m.bottomRightCorner(3 * width, 3 * width) = -mu;
  return m;
}

}  // namespace

StripData strip_spectrum(const KagomeParams& p, int width, const RVec& k_par) {
  if (width < 8) throw InvalidParameterError("strip_spectrum: width must be >= 8 cells");
  const Index nk = k_par.size();
  const int dim = 6 * width;
  StripData data;
  data.k_values = k_par;
  data.energies = RMat(nk, dim);
  data.edge_weights = RMat(nk, dim);

  parallel::parallel_for(nk, [&](Index ik) {
    Eigen::ComplexEigenSolver<Mat> es(strip_matrix(p, width, k_par(ik)), true);
    std::vector<Index> order(dim);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
    });
    for (int q = 0; q < dim; ++q) {
      data.energies(ik, q) = es.eigenvalues()(order[q]).real();
      const Vec v = es.eigenvectors().col(order[q]);
      double outer = 0.0, total = v.squaredNorm();
      for (int n : {0, 1, width - 2, width - 1}) {
        outer += v.segment(3 * n, 3).squaredNorm();
        outer += v.segment(3 * width + 3 * n, 3).squaredNorm();
      }
      data.edge_weights(ik, q) = outer / total;
    }
  });
  return data;
}

bool gauge_away_check(const KagomeParams& p) {
  if (p.nu != 0.0)
    throw InvalidParameterError("gauge_away_check: requires nu = 0");
  const int n = 9;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double k1 = kTwoPi * (i + 0.21) / n;
      const double k2 = kTwoPi * (j + 0.43) / n;
      const Mat hpt = kagome_pt_bloch(p, k1, k2);
      Eigen::ComplexEigenSolver<Mat> es(hpt, false);
      Vec got = es.eigenvalues();

      Eigen::SelfAdjointEigenSolver<Mat> ref(
          p.omega0 * Mat::Identity(3, 3) - p.j * kagome_tau(cartesian_k(k1, k2)));
      Vec expect(6);
      expect << ref.eigenvalues().cast<cplx>(), (-ref.eigenvalues()).cast<cplx>();
      if (multiset_distance(got, expect) > 1e-10) return false;
    }
  }
  return true;
}

}  // namespace sqz
