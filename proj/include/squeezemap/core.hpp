#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sqz {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-8;

// Precondition violations: bad arguments, broken model constraints.  The CLI
// maps these to exit code 2.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures: ill-conditioning, integration blow-up, unphysical
// intermediate data.  The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatchError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct InvalidParameterError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct PtViolationError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NotPtEquivalentError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NotPtSymmetricError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct ConditionsViolatedError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct RankDeficientGainLossError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct DegeneratePairingError final : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct BandTouchingError final : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct DefectiveMatrixError final : NumericalError {
  using NumericalError::NumericalError;
};
struct SingularEtaError final : NumericalError {
  using NumericalError::NumericalError;
};
struct IllConditionedError final : NumericalError {
  using NumericalError::NumericalError;
};
struct StepFailureError final : NumericalError {
  using NumericalError::NumericalError;
};
struct UnphysicalStateError final : NumericalError {
  using NumericalError::NumericalError;
};
struct BranchCrossingError final : NumericalError {
  using NumericalError::NumericalError;
};
struct UnstableRegimeError final : NumericalError {
  using NumericalError::NumericalError;
};
struct PoleEncounteredError final : NumericalError {
  using NumericalError::NumericalError;
};

inline bool is_finite(const Mat& m) { return m.allFinite(); }

/// Frobenius norm with a floor of 1 so relative tolerances stay meaningful
/// for (near-)zero matrices.
inline double norm_scale(const Mat& m) { return std::max(m.norm(), 1.0); }

/// Lexicographic (Re, Im) ascending order for complex spectra.
inline bool spectral_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Max distance between two spectra as multisets, after lexicographic sort.
double multiset_distance(Vec a, Vec b);

}  // namespace sqz
