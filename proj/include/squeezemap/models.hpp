#pragma once

#include <optional>

#include "squeezemap/hamiltonian.hpp"

namespace sqz {

// sigma_{N,z} = diag(I_N, -I_N) and sigma_{N,x} = antidiag(I_N, I_N).
Mat sigma_nz(Index n);
Mat sigma_nx(Index n);

/// Balanced mode mixer (1/sqrt2) [[I, I], [I, -I]]; self-inverse.
Mat balanced_mixer(Index n);

/// Gain-loss dimer  i(gamma/2) sigma_z + g sigma_x.
NonHermitianHamiltonian build_pt_dimer(double g, double gamma);

/// Detuned dimer  (omega + i gamma/2) sigma_z + g sigma_x.
NonHermitianHamiltonian build_detuned_dimer(double omega, double g, double gamma);

/// Degenerate parametric amplifier: detuning delta, two-photon drive
/// amplitude nu >= 0, pairing phase fixed to +i (drive gauge).
BosonicQuadraticHamiltonian build_dpa(double delta, double nu);

/// Coefficient matrices of a PT-symmetric tight-binding model on N mode
/// pairs (a_l, b_l), with a_l the mirror partner of b_l:
///   H = sum [ Omega (a^+a + b^+b) + i Gamma (a^+a - b^+b) + J (a^+b + b^+a) ].
/// Omega and J must be real symmetric; Gamma real symmetric (diagonal for
/// the plain 1D chain).
struct PtChainSpec {
  Index n_pairs = 0;
  Mat omega, gamma, j_mat;  // complex storage; the amplifier mapping requires
                            // real entries and reports violations itself

  /// 1D nearest-neighbour chain with 2N sites indexed left to right.
  /// `hoppings` holds the 2N-1 bond amplitudes (central bond at index N-1)
  /// and `gains` the 2N on-site gain rates.  PT requires the hoppings
  /// mirror-symmetric and the gains mirror-antisymmetric about the centre;
  /// violations beyond 1e-12 throw PtViolationError.  Mirror site labels
  /// j in {-N..-1, 1..N} sit at array index N+j for j < 0 and N+j-1 for
  /// j > 0; Gamma_ll is the gain rate of the left partner a_l.
  static PtChainSpec nearest_neighbour(const RVec& hoppings, const RVec& gains);

  void validate(double tol = 1e-12) const;
};

/// 2N x 2N block matrix [[Omega + i Gamma, J], [J, Omega - i Gamma]].
NonHermitianHamiltonian build_pt_chain(const PtChainSpec& spec);

/// Gain-loss trimer with central detuning epsilon; hosts a third-order
/// exceptional point at epsilon = 0, g = sqrt(2) gamma / 4.
NonHermitianHamiltonian build_hoep_trimer(double g, double gamma, double epsilon);

/// Three-mode nondegenerate amplifier
///   eps b^+b + (sqrt2 g a2^+ b + i (nu/2) a1^+ a2^+ + h.c.), nu >= 0,
/// whose dynamical matrix reproduces the trimer spectrum for nu = gamma.
BosonicQuadraticHamiltonian build_hoep_ndpa(double g, double nu, double epsilon);

/// Dynamical matrix M = sigma_{N,z} H_BdG = [[mu_a, nu], [-nu^+, -mu_b^T]]
/// governing i d/dt v = M v on v = (a, b^+).  Always sigma_{N,z}
/// pseudo-Hermitian.
NonHermitianHamiltonian dynamical_matrix(const BosonicQuadraticHamiltonian& hb);

/// Rewrites a paired (a, b) Hamiltonian over the single species
/// c = (a_1..a_N, b_1..b_N).  The dynamical matrix of the result is the
/// full 4N x 4N Bogoliubov problem of the 2N-mode system.
BosonicQuadraticHamiltonian single_species_form(const BosonicQuadraticHamiltonian& hb);

/// Model factory used by the CLI: name in {pt-dimer, detuned-dimer,
/// hoep-trimer, pt-chain} with a flat parameter map.
// (defined in io.cpp next to the JSON schema)

}  // namespace sqz
