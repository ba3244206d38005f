#pragma once

#include <vector>

#include "squeezemap/hamiltonian.hpp"

namespace sqz {

/// Time-ordered propagators U(t) of  i dU/dt = H(t) U,  U(0) = 1, stored at
/// the requested grid times.
struct PropagatorSeries {
  RVec times;
  std::vector<Mat> propagators;
  double tolerance = 0.0;
};

/// Adaptive Dormand-Prince 5(4) integration with PI step control.  Steps are
/// shortened to land exactly on every grid time, so stored propagators carry
/// no interpolation error.  Throws StepFailureError on step underflow or when
/// ||U|| exceeds 1e12 (unstable regime guard).
PropagatorSeries evolve_propagator(const NonHermitianHamiltonian& h,
                                   const RVec& t_grid, double rtol);

/// Mode-operator symplectic transform v(t) = A v(0) + B v*(0) over the
/// doubled QMFS modes; satisfies A A^+ - B B^+ = 1 and A B^T = B A^T.
struct SymplecticTransform {
  Mat a_block, b_block;
  Index n_modes() const { return a_block.rows(); }
};

/// Builds the QMFS symplectic transform of a propagator U (N x N):
///   A = (1/2) diag(U + (U^+)^-1, U* + (U^T)^-1),
///   B = (1/2) antidiag(U - (U^+)^-1, U* - (U^T)^-1).
/// Throws IllConditionedError when cond(U) > 1e10.
SymplecticTransform qmfs_symplectic(const Mat& u);

/// Bloch-Messiah factors A = U_BM D_A V_BM^+, B = U_BM D_B V_BM^T with
/// D_A^2 - D_B^2 = 1; squeeze_params are arccosh of the D_A diagonal.
struct BlochMessiahFactors {
  Mat u_bm, v_bm;
  RVec d_a, d_b;
  RVec squeeze_params;
  bool degenerate_singular_values = false;  // |d - 1/d| < 1e-10 seen; sign fixed +1
};

BlochMessiahFactors bloch_messiah(const SymplecticTransform& s);

/// Gaussian state over M modes; quadrature ordering (x_1..x_M, p_1..p_M),
/// [x, p] = i, vacuum variance 1/2, symmetrized covariance.
struct GaussianState {
  Index n_modes = 0;
  RVec mean;
  RMat covariance;

  static GaussianState vacuum(Index m);
  void validate() const;
};

/// Symplectic form Omega with [r_i, r_j] = i Omega_ij in (x.., p..) ordering.
RMat symplectic_form(Index m);

/// Real quadrature representation of (A, B).
RMat real_symplectic(const SymplecticTransform& s);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s);

/// Symplectic spectrum of a covariance matrix (M values, each >= 1/2 for a
/// physical state).
RVec symplectic_eigenvalues(const RMat& covariance);

/// Logarithmic negativity (base 2) across `partition` vs the rest.  Throws
/// UnphysicalStateError when the input covariance violates the uncertainty
/// relation beyond tolerance.
double log_negativity(const GaussianState& state, const std::vector<Index>& partition);

}  // namespace sqz
