#pragma once

#include <utility>
#include <vector>

#include "squeezemap/dynamics.hpp"
#include "squeezemap/hamiltonian.hpp"

namespace sqz {

enum class Direction { CW, CCW };

/// Closed circular path (g(t), omega(t)) around (center_g, 0) in the
/// parameter plane of the detuned gain-loss dimer.
struct EncirclingPath {
  double center_g = 0.5;
  double radius = 0.1;
  double duration = 20.0;
  double gamma = 1.0;
  Direction direction = Direction::CCW;
  double phi0 = 0.0;  // start phase; phi0 = 0 starts at (center_g + radius, 0)

  void validate() const {
    if (radius <= 0 || duration <= 0)
      throw InvalidParameterError("EncirclingPath: radius and duration must be > 0");
  }
};

/// (g, omega) at time t:  g = g0 + r cos(phi), omega = r sin(phi),
/// phi = phi0 +- 2 pi t / T (+ for CCW).
std::pair<double, double> path_at(const EncirclingPath& path, double t);

/// Time-dependent detuned dimer along the path.
NonHermitianHamiltonian path_hamiltonian(const EncirclingPath& path);

/// Instantaneous eigenframe along the path.  Eigenvectors are normalized
/// bilinearly (r^T r = 1, the l = r convention of a complex-symmetric
/// matrix) and branch-tracked for continuity; `end_swap` records whether the
/// tracked branches return permuted at t = T (hallmark of an enclosed EP).
struct EigenframeTrace {
  RVec times;
  Vec lambda_plus, lambda_minus;
  Mat r_plus, r_minus;  // 2 x (steps+1), column per time
  std::vector<cplx> amp_plus, amp_minus;  // filled by run_encircling
  bool end_swap = false;
  double min_overlap = 1.0;
};

/// Throws BranchCrossingError when consecutive frames overlap below 0.9
/// (path too close to the EP for reliable tracking).
EigenframeTrace eigenframe_trace(const EncirclingPath& path, int n_steps);

/// Four-mode coherent state with pseudo-mode means <z> = z_mean and vacuum
/// fluctuations (displacement placed on the a modes).
GaussianState coherent_pseudo_mode_state(const Vec& z_mean);

/// Zero-mean pure four-mode Gaussian state populating the + eigenmode over
/// the - eigenmode by e^{4 lambda0} in energy; quadrature variances
/// e^{+-2 lambda0}/2 along the frame directions, conjugate sector fixed by
/// purity with no cross correlations.
GaussianState build_asymmetric_state(double lambda0, const Vec& r_plus0,
                                     const Vec& r_minus0);

struct EncirclingRun {
  EigenframeTrace trace;
  PropagatorSeries propagators;
  std::vector<GaussianState> states;
  RVec entanglement;  // E_N between a and b modes, base 2, per time
};

/// Evolves a four-mode Gaussian state along the path: propagator ->
/// symplectic transform -> state; projects pseudo-mode means onto the
/// instantaneous frames (amplitudes c_pm) and records the a|b entanglement.
EncirclingRun run_encircling(const EncirclingPath& path, const GaussianState& initial,
                             double rtol, int n_steps = 2000);

struct ChiralityMetrics {
  double max_en_diff = 0.0;    // max over the common time grid
  double final_en_diff = 0.0;  // |E_N^CW(T) - E_N^CCW(T)|, the loop-completed metric
  double amplitude_ratio_log = 0.0;  // log(|c+/c-|_CCW * |c-/c+|_CW) at t = T
};

ChiralityMetrics chirality_metric(const EncirclingRun& cw, const EncirclingRun& ccw);

}  // namespace sqz
