#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeezemap/dynamics.hpp"
#include "squeezemap/hamiltonian.hpp"
#include "squeezemap/models.hpp"

namespace sqz::io {

/// Fixed scientific formatting (12 significant digits) so artifact bytes are
/// reproducible across runs.
std::string fmt(double v);
std::string fmt(const cplx& v);

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_json(const std::filesystem::path& file, const nlohmann::json& payload);

/// FNV-1a hash of the canonical (sorted keys, fixed float format) parameter
/// dump; names artifact files.
std::string param_hash(const nlohmann::json& params);

nlohmann::json eigenvalues_json(const Vec& evals);

/// Model factory for config-driven runs: {"model": name, "params": {...}}
/// with name in {pt-dimer, detuned-dimer, hoep-trimer, pt-chain}.
NonHermitianHamiltonian model_from_json(const nlohmann::json& config);

/// Chain coefficients from a pt-chain config (params.hoppings, params.gains).
PtChainSpec chain_spec_from_json(const nlohmann::json& config);

/// Propagator series as CSV: header t, reU_11, imU_11, reU_12, ... with the
/// matrix flattened row-major.
void write_propagator_csv(const std::filesystem::path& file, const PropagatorSeries& series);

/// Gaussian state as {"mean": [...], "cov": [[...]]}.
nlohmann::json gaussian_state_json(const GaussianState& state);

}  // namespace sqz::io
