#pragma once

#include <optional>
#include <vector>

#include "squeezemap/hamiltonian.hpp"

namespace sqz {

/// Eigensystem of a diagonalizable non-Hermitian matrix with left and right
/// eigenvectors paired so that l_j^+ r_k = delta_jk.
struct BiorthogonalEigensystem {
  Vec eigenvalues;    // sorted by (Re, Im) ascending
  Mat right_vectors;  // columns r_j, unit 2-norm, largest entry positive real
  Mat left_vectors;   // columns l_j = columns of (R^-1)^+
  double condition = 0.0;
  std::optional<RVec> symplectic_signs;
};

/// Throws DefectiveMatrixError when the right-eigenvector matrix condition
/// number exceeds 1/tol (use ep_detect for defective inputs).
BiorthogonalEigensystem biorthogonal_eig(const NonHermitianHamiltonian& h,
                                         double tol = kDefaultTol);

/// Fills symplectic_signs with sign(l_j^+ sigma l_j); requires eta-pseudo-
/// Hermitian structure for the signs to be meaningful.
void attach_symplectic_signs(BiorthogonalEigensystem& sys, const Mat& sigma);

struct EpReport {
  bool is_defective = false;
  int ep_order = 1;             // 1 = diagonalizable
  cplx cluster_center{0, 0};
  double defect_metric = 0.0;   // singular-value gap of (H - c I) / ||H||
};

/// Clusters eigenvalues within tol * ||H|| and estimates the largest Jordan
/// block as ceil(cluster size / eigenvector count).  Never throws; an
/// identity-like degenerate spectrum reports order 1.  The default tolerance
/// absorbs the eps^(1/order) eigensolver noise of defective clusters up to
/// order 3.
EpReport ep_detect(const NonHermitianHamiltonian& h, double tol = 1e-4);

enum class PtPhase { Unbroken, Broken, ExceptionalPoint };

PtPhase classify_pt_phase(const NonHermitianHamiltonian& h, double tol = kDefaultTol);

/// True iff ||M^+ - eta M eta^-1|| <= tol * ||M||.
bool check_pseudo_hermitian(const NonHermitianHamiltonian& m, const Mat& eta,
                            double tol = kDefaultTol);

/// True iff ||H^* - P H P^-1|| <= tol * ||H|| (time reversal = conjugation).
bool check_pt_symmetry(const NonHermitianHamiltonian& h, const Mat& parity,
                       double tol = kDefaultTol);

/// Real generator K of the quadrature equations of motion d/dt r = K r over
/// r = (x_1..x_M, p_1..p_M), M = total physical modes.
RMat quadrature_generator(const BosonicQuadraticHamiltonian& hb);

/// Orthonormal basis of null(K^T): each vector defines a conserved Hermitian
/// quadrature v . r.  Empty when the dynamical matrix is full rank.
std::vector<RVec> conserved_quadratures(const BosonicQuadraticHamiltonian& hb,
                                        double tol = kDefaultTol);

}  // namespace sqz
