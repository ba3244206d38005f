#include "squeezemap/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "squeezemap/models.hpp"

namespace sqz::io {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file);
  if (!out) throw InvalidParameterError("write_csv: cannot open " + file.string());
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

void write_json(const std::filesystem::path& file, const nlohmann::json& payload) {
  std::ofstream out(file);
  if (!out) throw InvalidParameterError("write_json: cannot open " + file.string());
  out << payload.dump(2) << "\n";
}

std::string param_hash(const nlohmann::json& params) {
  const std::string canon = params.dump();  // nlohmann objects iterate sorted
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%08x", static_cast<unsigned>(h & 0xffffffffu));
  return buf;
}

nlohmann::json eigenvalues_json(const Vec& evals) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index i = 0; i < evals.size(); ++i)
    arr.push_back({{"re", evals(i).real()}, {"im", evals(i).imag()}});
  return arr;
}

namespace {

double need(const nlohmann::json& params, const std::string& key) {
  if (!params.contains(key))
    throw InvalidParameterError("model config: missing key params." + key);
  return params.at(key).get<double>();
}

void reject_unknown(const nlohmann::json& params, const std::set<std::string>& known) {
  for (auto it = params.begin(); it != params.end(); ++it)
    if (!known.count(it.key()))
      throw InvalidParameterError("model config: unknown key params." + it.key());
}

}  // namespace

NonHermitianHamiltonian model_from_json(const nlohmann::json& config) {
  if (!config.contains("model"))
    throw InvalidParameterError("model config: missing key 'model'");
  const std::string name = config.at("model").get<std::string>();
  const nlohmann::json params =
      config.contains("params") ? config.at("params") : nlohmann::json::object();

  if (name == "pt-dimer") {
    reject_unknown(params, {"g", "gamma"});
    return build_pt_dimer(need(params, "g"), need(params, "gamma"));
  }
  if (name == "detuned-dimer") {
    reject_unknown(params, {"omega", "g", "gamma"});
    return build_detuned_dimer(need(params, "omega"), need(params, "g"),
                               need(params, "gamma"));
  }
  if (name == "hoep-trimer") {
    reject_unknown(params, {"g", "gamma", "epsilon"});
    return build_hoep_trimer(need(params, "g"), need(params, "gamma"),
                             need(params, "epsilon"));
  }
  if (name == "pt-chain") return build_pt_chain(chain_spec_from_json(config));
  // bosonic models enter spectrum-level tooling through their dynamical matrix
  if (name == "dpa") {
    reject_unknown(params, {"delta", "nu"});
    return dynamical_matrix(build_dpa(need(params, "delta"), need(params, "nu")));
  }
  if (name == "hoep-ndpa") {
    reject_unknown(params, {"g", "nu", "epsilon"});
    return dynamical_matrix(
        build_hoep_ndpa(need(params, "g"), need(params, "nu"), need(params, "epsilon")));
  }
  throw InvalidParameterError("model config: unknown model '" + name + "'");
}

PtChainSpec chain_spec_from_json(const nlohmann::json& config) {
  if (!config.contains("model") || config.at("model").get<std::string>() != "pt-chain")
    throw InvalidParameterError("chain config: expected model 'pt-chain'");
  const nlohmann::json params =
      config.contains("params") ? config.at("params") : nlohmann::json::object();
  reject_unknown(params, {"hoppings", "gains"});
  if (!params.contains("hoppings") || !params.contains("gains"))
    throw InvalidParameterError("chain config: needs params.hoppings and params.gains");
  const auto th = params.at("hoppings").get<std::vector<double>>();
  const auto gh = params.at("gains").get<std::vector<double>>();
  const RVec t = Eigen::Map<const RVec>(th.data(), static_cast<Index>(th.size()));
  const RVec g = Eigen::Map<const RVec>(gh.data(), static_cast<Index>(gh.size()));
  return PtChainSpec::nearest_neighbour(t, g);
}

void write_propagator_csv(const std::filesystem::path& file, const PropagatorSeries& series) {
  std::vector<std::string> header = {"t"};
  const Index n = series.propagators.empty() ? 0 : series.propagators.front().rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::string tag = std::to_string(i + 1) + std::to_string(j + 1);
      header.push_back("reU_" + tag);
      header.push_back("imU_" + tag);
    }
  std::vector<std::vector<double>> rows;
  rows.reserve(series.times.size());
  for (Index k = 0; k < series.times.size(); ++k) {
    std::vector<double> row = {series.times(k)};
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        row.push_back(series.propagators[k](i, j).real());
        row.push_back(series.propagators[k](i, j).imag());
      }
    rows.push_back(std::move(row));
  }
  write_csv(file, header, rows);
}

nlohmann::json gaussian_state_json(const GaussianState& state) {
  nlohmann::json j;
  j["mean"] = std::vector<double>(state.mean.data(), state.mean.data() + state.mean.size());
  nlohmann::json cov = nlohmann::json::array();
  for (Index r = 0; r < state.covariance.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < state.covariance.cols(); ++c) row.push_back(state.covariance(r, c));
    cov.push_back(row);
  }
  j["cov"] = cov;
  return j;
}

}  // namespace sqz::io
