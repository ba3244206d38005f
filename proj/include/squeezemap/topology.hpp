#pragma once

#include <array>
#include <functional>
#include <optional>

#include "squeezemap/core.hpp"

namespace sqz {

/// Bloch Hamiltonian (or dynamical matrix) sampled on the torus; k lives in
/// reduced coordinates [0, 2pi)^2 with H(k) = H(k + 2pi e_i).  For bosonic
/// dynamical matrices sigma_norm holds sigma_{N,z}.
struct BlochField {
  int bands = 0;
  std::function<Mat(double, double)> sampler;
  std::optional<Mat> sigma_norm;
};

/// Checks H(k) = H(k + 2pi e_i) at sampled points to 1e-10.
bool check_periodicity(const BlochField& field, int samples = 8);

/// Two-cavity gain-loss Kagome model: onsite dimers (gain/loss rate nu,
/// tunneling omega0), nearest-neighbour hopping J with the fixed phase
/// pattern phi_s = (0, phi, 2 phi), phi = 2 pi / 3.
struct KagomeParams {
  double omega0 = 4.5;
  double j = 1.0;
  double nu = 0.8;
  double phi = 2.0943951023931953;  // 2 pi / 3
};

/// Lattice vectors a1 = (-1, -sqrt3), a2 = (2, 0), a3 = (-1, sqrt3).
std::array<Eigen::Vector2d, 3> kagome_lattice_vectors();

/// Kagome geometric factor tau(k) at Cartesian k.
Mat kagome_tau(const Eigen::Vector2d& k_cart);

/// 6x6 dynamical matrix [[w0 - J tau, h], [-h^+, -(w0 - J tau)]] with local
/// pairing h = -nu exp(i Phi); reduced coordinates (k1, k2).
Mat kagome_bloch(const KagomeParams& p, double k1, double k2);

/// Unitarily rotated frame with the gain/loss on site dimers:
/// [[Sigma - i nu, Delta], [Delta, Sigma + i nu]] where
/// Sigma_ss' = i J tau_ss' sin(2 phi_s - 2 phi_s'),
/// Delta_ss' = w0 d_ss' - J tau_ss' cos(2 phi_s - 2 phi_s').
Mat kagome_pt_bloch(const KagomeParams& p, double k1, double k2);

BlochField kagome_field(const KagomeParams& p);     // carries sigma_norm
BlochField kagome_pt_field(const KagomeParams& p);  // PT frame, no sigma_norm

struct ChernResult {
  double value = 0.0;
  int rounded = 0;
  double gap_min = 0.0;
};

/// Plaquette (link-variable) Chern number from biorthogonal left/right
/// overlaps on an offset grid x grid mesh.  Bands are indexed by sorted real
/// part.  Throws BandTouchingError when the band is not isolated by 1e-6 on
/// the grid and UnstableRegimeError when the sampled spectrum is not real.
ChernResult chern_lr(const BlochField& field, int band, int grid);

/// Same invariant from sigma_{N,z}-normalized left eigenvectors only
/// (requires field.sigma_norm).
ChernResult chern_symplectic(const BlochField& field, int band, int grid);

/// Kagome strip: `width` unit cells open along a1, Bloch phase k_par along
/// a2.  energies/edge_weights are (k points) x (6 width) tables; the edge
/// weight is the eigenvector norm fraction in the outer two cells per side.
struct StripData {
  RVec k_values;
  RMat energies;
  RMat edge_weights;
};

StripData strip_spectrum(const KagomeParams& p, int width, const RVec& k_par);

/// At nu = 0 the model must decouple into two flux-free Kagome copies:
/// checks spec(kagome_pt_bloch) = spec(w0 - J tau) U spec(-(w0 - J tau)) to
/// 1e-10 over a sample of k points.
bool gauge_away_check(const KagomeParams& p);

}  // namespace sqz
