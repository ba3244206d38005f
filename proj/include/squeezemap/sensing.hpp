#pragma once

#include <vector>

#include "squeezemap/core.hpp"

namespace sqz {

/// Probed DPA coupled to a waveguide: pump detuning delta, drive amplitude
/// nu, waveguide rate kappa, dispersive perturbation epsilon (enters as
/// delta -> delta + epsilon).
struct SensorConfig {
  double delta = 0.0;
  double nu = 0.0;
  double kappa = 1.0;
  double epsilon = 0.0;

  /// True inside the parametric-oscillation threshold region.
  bool lasing() const {
    return delta * delta + 0.25 * kappa * kappa <= nu * nu;
  }
  void validate() const {
    if (kappa <= 0) throw InvalidParameterError("SensorConfig: kappa must be > 0");
  }
};

/// Normalized reflected flux P_out/|alpha_in|^2 at probe frequency omega_p:
///   1 + 2 kappa^2 nu^2 / (f^2 + kappa^2 (d^2 - nu^2)),
///   f = omega_p^2 + (kappa/2)^2 - d^2 + nu^2,   d = delta + epsilon.
/// Amplified-vacuum background excluded.  Throws PoleEncounteredError when
/// the denominator is within 1e-14 kappa^4 of zero.
double reflection_flux(const SensorConfig& cfg, double omega_p);

struct Peak {
  double omega = 0.0;
  double height = 0.0;
};

/// Local maxima of a uniformly sampled spectrum above 1 + 1% of the dynamic
/// range, refined by quadratic interpolation of the bracketing samples.
std::vector<Peak> find_peaks(const RVec& omegas, const RVec& values);

/// Square-root splitting law near a second-order EP: 2 sqrt(2 g0 eps).
double ep_splitting_prediction(double g0, double epsilon);

struct ScalingScan {
  RVec splittings;
  double fitted_exponent = 0.0;
};

/// Max pairwise eigenvalue distance of the gain-loss trimer pinned to its
/// third-order EP (g = sqrt2 gamma / 4), per perturbation; log-log slope
/// fitted by least squares.  Epsilons must be positive and span >= 3 decades.
ScalingScan hoep_scaling_scan(double gamma, const RVec& epsilons);

/// Second-order control: same scan on the gain-loss dimer at its EP.
ScalingScan dimer_scaling_scan(double gamma, const RVec& epsilons);

}  // namespace sqz
