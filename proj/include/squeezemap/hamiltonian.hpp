#pragma once

#include <functional>
#include <utility>

#include "squeezemap/core.hpp"

namespace sqz {

/// Effective non-Hermitian Hamiltonian of a linear coupled-mode problem,
/// optionally time dependent.  For time-dependent problems `matrix` is the
/// generator evaluated at t = 0.
class NonHermitianHamiltonian {
 public:
  using Generator = std::function<Mat(double)>;

  explicit NonHermitianHamiltonian(Mat m) : matrix_(std::move(m)) { validate(); }

  static NonHermitianHamiltonian time_dependent(Generator gen) {
    NonHermitianHamiltonian h(gen(0.0));
    h.generator_ = std::move(gen);
    return h;
  }

  Index dim() const { return matrix_.rows(); }
  const Mat& matrix() const { return matrix_; }
  bool time_dependent() const { return static_cast<bool>(generator_); }

  Mat at(double t) const { return generator_ ? generator_(t) : matrix_; }

 private:
  void validate() const {
    if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols())
      throw DimensionMismatchError("Hamiltonian must be square with dim >= 1");
    if (!is_finite(matrix_))
      throw InvalidParameterError("Hamiltonian has non-finite entries");
  }

  Mat matrix_;
  Generator generator_;
};

/// Species layout of a quadratic bosonic Hamiltonian.
///
/// Single: N physical modes c_i, pairing (1/2) nu_ij c_i^+ c_j^+ + h.c.
///         (nu symmetric, mu_b == mu_a); the dynamical matrix acts on
///         (c_1..c_N, c_1^+..c_N^+).
/// Pair:   N "a" modes and N "b" modes (2N physical), pairing
///         nu_ij a_i^+ b_j^+ + h.c.; the dynamical matrix acts on
///         (a_1..a_N, b_1^+..b_N^+).  All modules share this ordering.
enum class Species { Single, Pair };

/// Quadratic bosonic Hamiltonian in Bogoliubov-de Gennes block form
///   H = sum mu_a_ij a_i^+ a_j + sum mu_b_ij b_i^+ b_j + (pairing + h.c.)
/// described by the blocks (mu_a, mu_b, nu).
struct BosonicQuadraticHamiltonian {
  Index n_modes = 0;  // block size N; physical mode count is total_modes()
  Mat mu_a, mu_b, nu;
  Species species = Species::Pair;

  Index total_modes() const {
    return species == Species::Single ? n_modes : 2 * n_modes;
  }

  void validate(double tol = 1e-12) const {
    if (n_modes < 1) throw DimensionMismatchError("n_modes must be >= 1");
    auto square = [&](const Mat& m) {
      return m.rows() == n_modes && m.cols() == n_modes;
    };
    if (!square(mu_a) || !square(mu_b) || !square(nu))
      throw DimensionMismatchError("BdG blocks must all be n_modes x n_modes");
    if ((mu_a - mu_a.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw InvalidParameterError("mu_a is not Hermitian");
    if ((mu_b - mu_b.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw InvalidParameterError("mu_b is not Hermitian");
    if (species == Species::Single) {
      if ((nu - nu.transpose()).cwiseAbs().maxCoeff() > tol)
        throw InvalidParameterError("single-species pairing block must be symmetric");
      if ((mu_a - mu_b).cwiseAbs().maxCoeff() > tol)
        throw InvalidParameterError("single-species form requires mu_b == mu_a");
    }
  }
};

}  // namespace sqz
