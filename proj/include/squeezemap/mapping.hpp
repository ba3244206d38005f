#pragma once

#include <cstdint>
#include <optional>

#include "squeezemap/hamiltonian.hpp"
#include "squeezemap/models.hpp"

namespace sqz {

enum class MappingKind { DpaHalf, NdpaSameCount, QmfsDoubled };

/// Witnessed unitary equivalence between a non-Hermitian Hamiltonian and the
/// dynamical matrix of a Hermitian quadratic bosonic system.
///
/// For DpaHalf and NdpaSameCount:  unitary * source * unitary^+  equals the
/// dynamical matrix of `target` up to `residual` (relative, with the dropped
/// constant trace part removed first for DpaHalf).  For QmfsDoubled the
/// equivalence is between diag(source, source^+) and the paired-form
/// dynamical matrix.
struct MappingCertificate {
  NonHermitianHamiltonian source;
  BosonicQuadraticHamiltonian target;
  Mat unitary;
  double residual = 0.0;
  MappingKind kind = MappingKind::QmfsDoubled;
  cplx dropped_trace{0, 0};  // constant part removed by dpa_map; 0 otherwise

  /// Source matrix in the doubled/undoubled frame the certificate compares
  /// against; what `unitary` conjugates.
  Mat equivalent_source() const;
};

/// Maps a 2x2 Hamiltonian with orthogonal Hermitian/anti-Hermitian parts
/// onto a single-mode DPA (delta = |c|, nu = |d| for H = (c + i d).sigma).
/// Throws NotPtEquivalentError when c.d != 0 beyond tol.
MappingCertificate dpa_map(const NonHermitianHamiltonian& h, double tol = kDefaultTol);

/// Canonical block form of a sigma_{N,x} PT-symmetric 2N x 2N Hamiltonian:
///   transform H transform^+ = [[Sigma~ + i Gamma_N, J~], [J~*, Sigma~* - i Gamma_N]]
/// with Sigma~ Hermitian, J~ symmetric, Gamma_N diagonal nonincreasing > 0.
struct CanonicalPtForm {
  Mat sigma_tilde;
  Mat j_tilde;
  RVec gamma_n;
  Mat transform;
};

CanonicalPtForm canonical_pt_form(const NonHermitianHamiltonian& h_pt,
                                  double tol = kDefaultTol);

/// Same-mode-count mapping of a PT chain onto a nondegenerate parametric
/// amplifier; requires Omega, Gamma, J real symmetric, else
/// ConditionsViolatedError naming the offending matrix.
MappingCertificate pt_chain_to_ndpa(const PtChainSpec& spec);

/// Mode-doubling mapping of an arbitrary N x N Hamiltonian onto a 2N-mode
/// bosonic Hamiltonian: number-conserving block (H + H^+)/2, pairing block
/// (H - H^+)/2.
MappingCertificate qmfs_construct(const NonHermitianHamiltonian& h);

/// Result of the bounded numerical search for an intertwining unitary
/// witness.  `exists == false` is a report that 64 seeded searches failed,
/// not a proof.
struct WitnessResult {
  bool exists = false;
  Mat w12;
  double best_residual = 0.0;
  int null_dimension = 0;
};

struct WitnessOptions {
  int seeds = 64;
  int iterations = 500;
  std::uint64_t rng_seed = 0x5eedULL;
  double group_tol = 1e-8;  // degenerate-group clustering, relative
};

/// Searches for unitary w12 with [w12, Gamma_N] = 0, w12 J~* = J~ w12^+,
/// w12 Sigma~* = Sigma~ w12 (mappability of a canonical PT form onto a
/// same-count bosonic system).
WitnessResult pt_to_pa_existence(const CanonicalPtForm& form, double tol = kDefaultTol,
                                 const WitnessOptions& opts = {});

/// Converse direction: reduces the paired dynamical matrix via an SVD of the
/// pairing block to (Sigma, Delta, D_nu) and searches for unitary w12 with
/// w12 Sigma = Sigma* w12^T, w12 Delta = Delta* w12, [w12, D_nu] = 0.
/// Throws DegeneratePairingError when D_nu has entries below tol * ||nu||.
WitnessResult pa_to_pt_existence(const BosonicQuadraticHamiltonian& hb,
                                 double tol = kDefaultTol,
                                 const WitnessOptions& opts = {});

}  // namespace sqz
