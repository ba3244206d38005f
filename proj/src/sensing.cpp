#include "squeezemap/sensing.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "squeezemap/models.hpp"
#include "squeezemap/parallel.hpp"

namespace sqz {

double reflection_flux(const SensorConfig& cfg, double omega_p) {
  cfg.validate();
  const double d = cfg.delta + cfg.epsilon;
  const double k2 = cfg.kappa * cfg.kappa;
  const double f = omega_p * omega_p + 0.25 * k2 - d * d + cfg.nu * cfg.nu;
  const double den = f * f + k2 * (d * d - cfg.nu * cfg.nu);
  if (std::abs(den) < 1e-14 * k2 * k2)
    throw PoleEncounteredError("reflection_flux: response pole at omega_p = " +
                               std::to_string(omega_p));
  return 1.0 + 2.0 * k2 * cfg.nu * cfg.nu / den;
}

std::vector<Peak> find_peaks(const RVec& omegas, const RVec& values) {
  const Index n = omegas.size();
  if (n < 3 || values.size() != n)
    throw InvalidParameterError("find_peaks: need >= 3 samples with matching sizes");
  const double h = omegas(1) - omegas(0);
  for (Index i = 1; i < n; ++i)
    if (std::abs(omegas(i) - omegas(i - 1) - h) > 1e-9 * std::max(std::abs(h), 1.0))
      throw InvalidParameterError("find_peaks: omega grid must be uniform");

  const double threshold = 1.0 + 0.01 * (values.maxCoeff() - 1.0);
  std::vector<Peak> peaks;
  for (Index i = 1; i + 1 < n; ++i) {
    if (values(i) > values(i - 1) && values(i) > values(i + 1) && values(i) > threshold) {
      const double a = values(i - 1), b = values(i), c = values(i + 1);
      const double denom = a - 2 * b + c;
      const double shift = denom != 0 ? 0.5 * (a - c) / denom : 0.0;
      Peak p;
      p.omega = omegas(i) + shift * h;
      p.height = b - 0.25 * (a - c) * shift;
      peaks.push_back(p);
    }
  }
  return peaks;
}

double ep_splitting_prediction(double g0, double epsilon) {
  if (epsilon < 0) throw InvalidParameterError("ep_splitting_prediction: epsilon >= 0");
  return 2.0 * std::sqrt(2.0 * g0 * epsilon);
}

namespace {

ScalingScan splitting_scan(const RVec& epsilons,
                           const std::function<Mat(double)>& model) {
  if (epsilons.size() < 3)
    throw InvalidParameterError("scaling scan: need >= 3 epsilon samples");
  if (epsilons.minCoeff() <= 0)
    throw InvalidParameterError("scaling scan: all epsilons must be > 0");
  if (std::log10(epsilons.maxCoeff() / epsilons.minCoeff()) < 3.0 - 1e-9)
    throw InvalidParameterError("scaling scan: epsilons must span >= 3 decades");

  ScalingScan scan;
  scan.splittings = RVec(epsilons.size());
  std::vector<double> out(epsilons.size());
  parallel::parallel_for(epsilons.size(), [&](Index i) {
    Eigen::ComplexEigenSolver<Mat> es(model(epsilons(i)), false);
    const Vec ev = es.eigenvalues();
    double best = 0.0;
    for (Index a = 0; a < ev.size(); ++a)
      for (Index b = a + 1; b < ev.size(); ++b)
        best = std::max(best, std::abs(ev(a) - ev(b)));
    out[i] = best;
  });
  for (Index i = 0; i < epsilons.size(); ++i) scan.splittings(i) = out[i];

  // least-squares slope of log(splitting) vs log(eps)
  const RVec x = epsilons.array().log();
  const RVec y = scan.splittings.array().log();
  const double xm = x.mean(), ym = y.mean();
  scan.fitted_exponent = ((x.array() - xm) * (y.array() - ym)).sum() /
                         ((x.array() - xm).square()).sum();
  return scan;
}

}  // namespace

ScalingScan hoep_scaling_scan(double gamma, const RVec& epsilons) {
  const double g = std::sqrt(2.0) * gamma / 4.0;
  return splitting_scan(epsilons, [&](double eps) {
    return build_hoep_trimer(g, gamma, eps).matrix();
  });
}

ScalingScan dimer_scaling_scan(double gamma, const RVec& epsilons) {
  return splitting_scan(epsilons, [&](double eps) {
    return build_pt_dimer(gamma / 2.0 + eps, gamma).matrix();
  });
}

}  // namespace sqz
