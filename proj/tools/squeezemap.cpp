#include <CLI11.hpp>
#include <random>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "squeezemap/dynamics.hpp"
#include "squeezemap/encircling.hpp"
#include "squeezemap/io.hpp"
#include "squeezemap/mapping.hpp"
#include "squeezemap/models.hpp"
#include "squeezemap/parallel.hpp"
#include "squeezemap/sensing.hpp"
#include "squeezemap/spectral.hpp"
#include "squeezemap/topology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sqz;

namespace {

struct Output {
  fs::path dir = ".";

  fs::path file(const std::string& sub, const json& params, const char* ext) const {
    return dir / (sub + "-" + io::param_hash(params) + "." + ext);
  }
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameterError("cannot open config file " + path);
  json j;
  in >> j;
  return j;
}

const char* phase_name(PtPhase p) {
  switch (p) {
    case PtPhase::Unbroken: return "unbroken";
    case PtPhase::Broken: return "broken";
    case PtPhase::ExceptionalPoint: return "exceptional-point";
  }
  return "?";
}

int run_spectrum(const json& model_cfg, const Output& out) {
  const NonHermitianHamiltonian h = io::model_from_json(model_cfg);
  const EpReport ep = ep_detect(h);

  json summary;
  summary["model"] = model_cfg;
  summary["ep"] = {{"order", ep.ep_order},
                   {"defective", ep.is_defective},
                   {"center_re", ep.cluster_center.real()},
                   {"center_im", ep.cluster_center.imag()},
                   {"defect_metric", ep.defect_metric}};
  summary["phase"] = phase_name(classify_pt_phase(h));

  Eigen::ComplexEigenSolver<Mat> es(h.matrix(), false);
  summary["eigenvalues"] = io::eigenvalues_json(es.eigenvalues());
  if (!ep.is_defective) {
    const auto sys = biorthogonal_eig(h);
    summary["eigenvalues"] = io::eigenvalues_json(sys.eigenvalues);
    summary["eigenvector_condition"] = sys.condition;
  }

  const fs::path f = out.file("spectrum", model_cfg, "json");
  io::write_json(f, summary);
  std::cout << "spectrum: dim " << h.dim() << ", phase " << summary["phase"]
            << ", ep order " << ep.ep_order << " -> " << f.string() << "\n";
  return 0;
}

int run_map(const json& model_cfg, const std::string& route, bool existence,
            std::uint64_t seed, const Output& out) {
  const NonHermitianHamiltonian h = io::model_from_json(model_cfg);
  json summary;
  summary["model"] = model_cfg;
  summary["route"] = route;

  MappingCertificate cert = [&] {
    if (route == "dpa") return dpa_map(h);
    if (route == "qmfs") return qmfs_construct(h);
    if (route == "ndpa") return pt_chain_to_ndpa(io::chain_spec_from_json(model_cfg));
    throw InvalidParameterError("map: route must be dpa, ndpa or qmfs");
  }();
  summary["kind"] = route == "dpa" ? "dpa-half"
                    : route == "ndpa" ? "ndpa-same-count" : "qmfs-doubled";
  summary["residual"] = cert.residual;
  summary["dropped_trace_re"] = cert.dropped_trace.real();
  summary["dropped_trace_im"] = cert.dropped_trace.imag();

  Eigen::ComplexEigenSolver<Mat> es(dynamical_matrix(cert.target).matrix(), false);
  summary["target_spectrum"] = io::eigenvalues_json(es.eigenvalues());

  if (existence) {
    const CanonicalPtForm form = canonical_pt_form(h);
    WitnessOptions opts;
    opts.rng_seed = seed;
    const WitnessResult wr = pt_to_pa_existence(form, 1e-8, opts);
    summary["existence"] = {{"exists", wr.exists},
                            {"best_residual", wr.best_residual},
                            {"null_dimension", wr.null_dimension}};
  }

  json params = model_cfg;
  params["route"] = route;
  const fs::path f = out.file("map", params, "json");
  io::write_json(f, summary);
  std::cout << "map: route " << route << ", residual " << io::fmt(cert.residual)
            << " -> " << f.string() << "\n";
  return 0;
}

int run_sense(double delta, double nu, double kappa, double epsilon, double wmax,
              int points, const Output& out) {
  SensorConfig cfg{delta, nu, kappa, epsilon};
  cfg.validate();
  const RVec omegas = RVec::LinSpaced(points, -wmax, wmax);
  RVec flux(points);
  for (Index i = 0; i < points; ++i) flux(i) = reflection_flux(cfg, omegas(i));

  const auto peaks = find_peaks(omegas, flux);
  json params = {{"delta", delta}, {"nu", nu},     {"kappa", kappa},
                 {"epsilon", epsilon}, {"wmax", wmax}, {"points", points}};

  std::vector<std::vector<double>> rows;
  rows.reserve(points);
  for (Index i = 0; i < points; ++i) rows.push_back({omegas(i), flux(i)});
  const fs::path csv = out.file("sense", params, "csv");
  io::write_csv(csv, {"omega_p", "flux"}, rows);

  json summary;
  summary["params"] = params;
  summary["peaks"] = json::array();
  for (const auto& p : peaks)
    summary["peaks"].push_back({{"omega", p.omega}, {"height", p.height}});
  summary["n_peaks"] = peaks.size();
  if (peaks.size() >= 2) {
    summary["splitting"] = peaks.back().omega - peaks.front().omega;
    summary["prediction"] = ep_splitting_prediction(nu, epsilon);
  }
  const fs::path js = out.file("sense", params, "json");
  io::write_json(js, summary);
  std::cout << "sense: " << peaks.size() << " peak(s) -> " << csv.string() << "\n";
  return 0;
}

json run_summary(const EncirclingRun& run) {
  json j;
  j["final_c_plus"] = std::abs(run.trace.amp_plus.back());
  j["final_c_minus"] = std::abs(run.trace.amp_minus.back());
  j["final_entanglement"] = run.entanglement(run.entanglement.size() - 1);
  j["end_swap"] = run.trace.end_swap;
  j["min_branch_overlap"] = run.trace.min_overlap;
  return j;
}

void write_run_csv(const fs::path& file, const EncirclingRun& run) {
  std::vector<std::vector<double>> rows;
  const Index m = run.trace.times.size();
  rows.reserve(m);
  for (Index i = 0; i < m; ++i)
    rows.push_back({run.trace.times(i), std::abs(run.trace.amp_plus[i]),
                    std::abs(run.trace.amp_minus[i]), run.entanglement(i)});
  io::write_csv(file, {"t", "abs_c_plus", "abs_c_minus", "E_N"}, rows);
}

int run_encircle(double gamma_t, double radius, double center_g, double gamma,
                 const std::string& direction, double lambda0, int steps, double rtol,
                 bool dump_propagator, const Output& out) {
  EncirclingPath path;
  path.center_g = center_g;
  path.radius = radius;
  path.gamma = gamma;
  path.duration = gamma_t / gamma;

  const auto frame0 = eigenframe_trace(path, 2);
  const GaussianState initial =
      lambda0 > 0 ? build_asymmetric_state(lambda0, frame0.r_plus.col(0), frame0.r_minus.col(0))
                  : coherent_pseudo_mode_state((Vec(2) << frame0.r_plus.col(0)).finished());

  json params = {{"gamma_t", gamma_t}, {"radius", radius},   {"center_g", center_g},
                 {"gamma", gamma},     {"lambda0", lambda0}, {"steps", steps},
                 {"direction", direction}, {"rtol", rtol}};
  json summary;
  summary["params"] = params;

  auto one = [&](Direction dir, const char* tag) {
    path.direction = dir;
    EncirclingRun run = run_encircling(path, initial, rtol, steps);
    json p2 = params;
    p2["leg"] = tag;
    const fs::path csv = out.file("encircle", p2, "csv");
    write_run_csv(csv, run);
    summary[tag] = run_summary(run);
    summary[tag]["csv"] = csv.string();
    summary[tag]["final_state"] = io::gaussian_state_json(run.states.back());
    if (dump_propagator) {
      json p3 = p2;
      p3["series"] = "propagator";
      const fs::path pcsv = out.file("encircle", p3, "csv");
      io::write_propagator_csv(pcsv, run.propagators);
      summary[tag]["propagator_csv"] = pcsv.string();
    }
    return run;
  };

  if (direction == "ccw") {
    one(Direction::CCW, "ccw");
  } else if (direction == "cw") {
    one(Direction::CW, "cw");
  } else if (direction == "both") {
    EncirclingRun ccw = one(Direction::CCW, "ccw");
    EncirclingRun cw = one(Direction::CW, "cw");
    const ChiralityMetrics met = chirality_metric(cw, ccw);
    summary["chirality"] = {{"max_en_diff", met.max_en_diff},
                            {"final_en_diff", met.final_en_diff},
                            {"amplitude_ratio_log", met.amplitude_ratio_log}};
  } else {
    throw InvalidParameterError("encircle: direction must be cw, ccw or both");
  }

  const fs::path js = out.file("encircle", params, "json");
  io::write_json(js, summary);
  std::cout << "encircle: direction " << direction << " -> " << js.string() << "\n";
  return 0;
}

int run_chern(double omega0, double j, double nu, int grid, int band, const Output& out) {
  KagomeParams p;
  p.omega0 = omega0;
  p.j = j;
  p.nu = nu;
  const BlochField field = kagome_field(p);

  json params = {{"omega0", omega0}, {"j", j}, {"nu", nu}, {"grid", grid}, {"band", band}};
  json summary;
  summary["params"] = params;
  summary["bands"] = json::array();

  const int lo = band >= 0 ? band : 0;
  const int hi = band >= 0 ? band + 1 : field.bands;
  for (int b = lo; b < hi; ++b) {
    const ChernResult lr = chern_lr(field, b, grid);
    const ChernResult sp = chern_symplectic(field, b, grid);
    summary["bands"].push_back({{"band", b},
                                {"chern", lr.value},
                                {"rounded", lr.rounded},
                                {"gap_min", lr.gap_min},
                                {"chern_symplectic", sp.value}});
    std::cout << "band " << b << ": C = " << lr.rounded << " (value " << io::fmt(lr.value)
              << ", gap " << io::fmt(lr.gap_min) << ")\n";
  }
  const fs::path f = out.file("chern", params, "json");
  io::write_json(f, summary);
  std::cout << "chern -> " << f.string() << "\n";
  return 0;
}

int run_strip(double omega0, double j, double nu, int width, int kpoints, const Output& out) {
  KagomeParams p;
  p.omega0 = omega0;
  p.j = j;
  p.nu = nu;
  const RVec ks = RVec::LinSpaced(kpoints, 0.0, 6.283185307179586);
  const StripData data = strip_spectrum(p, width, ks);

  json params = {{"omega0", omega0}, {"j", j}, {"nu", nu}, {"width", width},
                 {"kpoints", kpoints}};
  std::vector<std::vector<double>> rows;
  for (Index ik = 0; ik < data.k_values.size(); ++ik)
    for (Index q = 0; q < data.energies.cols(); ++q)
      rows.push_back({data.k_values(ik), data.energies(ik, q), data.edge_weights(ik, q)});
  const fs::path csv = out.file("strip", params, "csv");
  io::write_csv(csv, {"k_par", "energy", "edge_weight"}, rows);
  std::cout << "strip: " << rows.size() << " states -> " << csv.string() << "\n";
  return 0;
}

int run_qmfs_check(int n, int samples, std::uint64_t seed, const Output& out) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  json params = {{"n", n}, {"samples", samples}, {"seed", seed}};
  double worst_resid = 0.0, worst_spec = 0.0;
  for (int s = 0; s < samples; ++s) {
    Mat h(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) h(i, k) = cplx(gauss(rng), gauss(rng));
    const NonHermitianHamiltonian ham{h};
    const MappingCertificate cert = qmfs_construct(ham);
    worst_resid = std::max(worst_resid, cert.residual);

    Eigen::ComplexEigenSolver<Mat> src(h, false);
    const Vec lam = src.eigenvalues();
    Vec expect(4 * n);
    expect << lam, lam.conjugate(), -lam, -lam.conjugate();
    Eigen::ComplexEigenSolver<Mat> full(
        dynamical_matrix(single_species_form(cert.target)).matrix(), false);
    worst_spec = std::max(worst_spec, multiset_distance(expect, full.eigenvalues()));
  }
  json summary;
  summary["params"] = params;
  summary["max_certificate_residual"] = worst_resid;
  summary["max_spectrum_law_error"] = worst_spec;
  const fs::path f = out.file("qmfs-check", params, "json");
  io::write_json(f, summary);
  std::cout << "qmfs-check: residual " << io::fmt(worst_resid) << ", spectrum law "
            << io::fmt(worst_spec) << " -> " << f.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  parallel::configure_from_environment();

  CLI::App app{"squeezemap: non-Hermitian dynamics in parametrically driven bosonic systems"};
  app.require_subcommand(1);

  Output out;
  std::string config_path;
  std::uint64_t seed = 0x5eed;
  app.add_option("--output-dir", out.dir, "artifact directory")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed for witness searches")->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, EP report, PT phase");
  std::string model = "pt-dimer";
  double g = 1.0, gamma = 1.0, omega = 0.0, eps_model = 0.0;
  spectrum->add_option("--config", config_path, "model config JSON file");
  spectrum->add_option("--model", model, "pt-dimer | detuned-dimer | hoep-trimer");
  spectrum->add_option("--g", g, "coupling");
  spectrum->add_option("--gamma", gamma, "gain/loss rate");
  spectrum->add_option("--omega", omega, "detuning");
  spectrum->add_option("--epsilon", eps_model, "central detuning (trimer)");

  // map
  auto* mapc = app.add_subcommand("map", "unitary mapping certificates");
  std::string route = "qmfs";
  bool existence = false;
  mapc->add_option("--config", config_path, "model config JSON file");
  mapc->add_option("--model", model, "source model");
  mapc->add_option("--g", g, "coupling");
  mapc->add_option("--gamma", gamma, "gain/loss rate");
  mapc->add_option("--omega", omega, "detuning");
  mapc->add_option("--epsilon", eps_model, "central detuning (trimer)");
  mapc->add_option("--route", route, "dpa | ndpa | qmfs");
  mapc->add_flag("--existence", existence, "run the canonical-form witness search");

  // sense
  auto* sense = app.add_subcommand("sense", "DPA reflection spectrum and peaks");
  double delta = 12.5, nu = 12.5, kappa = 1.0, epsilon = 0.0, wmax = 8.0;
  int points = 4001;
  sense->add_option("--delta", delta, "pump detuning");
  sense->add_option("--nu", nu, "drive amplitude");
  sense->add_option("--kappa", kappa, "waveguide coupling");
  sense->add_option("--epsilon", epsilon, "dispersive perturbation");
  sense->add_option("--wmax", wmax, "probe range [-wmax, wmax]");
  sense->add_option("--points", points, "grid points");

  // encircle
  auto* encircle = app.add_subcommand("encircle", "EP encircling runs");
  double gamma_t = 20.0, radius = 0.1, center_g = 0.5, enc_gamma = 1.0, lambda0 = 0.0,
         rtol = 1e-10;
  int steps = 2000;
  std::string direction = "both";
  encircle->add_option("--gamma-T", gamma_t, "dimensionless duration gamma*T");
  encircle->add_option("--radius", radius, "path radius");
  encircle->add_option("--center-g", center_g, "path centre g0");
  encircle->add_option("--gamma", enc_gamma, "gain/loss rate");
  encircle->add_option("--direction", direction, "cw | ccw | both");
  encircle->add_option("--lambda0", lambda0, "initial-state asymmetry (0 = coherent seed)");
  encircle->add_option("--steps", steps, "time grid steps");
  encircle->add_option("--rtol", rtol, "integrator tolerance");
  bool dump_propagator = false;
  encircle->add_flag("--dump-propagator", dump_propagator, "also write the propagator series CSV");

  // chern
  auto* chern = app.add_subcommand("chern", "Kagome Chern numbers");
  double omega0 = 4.5, jhop = 1.0, knu = 0.8;
  int grid = 36, band = -1;
  chern->add_option("--omega0", omega0, "onsite tunneling");
  chern->add_option("--j", jhop, "hopping");
  chern->add_option("--nu", knu, "gain/loss rate");
  chern->add_option("--grid", grid, "BZ grid");
  chern->add_option("--band", band, "band index (default: all)");

  // strip
  auto* strip = app.add_subcommand("strip", "Kagome strip band structure");
  int width = 12, kpoints = 61;
  strip->add_option("--omega0", omega0, "onsite tunneling");
  strip->add_option("--j", jhop, "hopping");
  strip->add_option("--nu", knu, "gain/loss rate");
  strip->add_option("--width", width, "strip width (unit cells)");
  strip->add_option("--kpoints", kpoints, "k_par samples");

  // qmfs-check
  auto* qmfs = app.add_subcommand("qmfs-check", "random-matrix QMFS verification");
  int qn = 4, qsamples = 20;
  qmfs->add_option("--n", qn, "source dimension");
  qmfs->add_option("--samples", qsamples, "number of random draws");

  CLI11_PARSE(app, argc, argv);

  try {
    json model_cfg;
    if (!config_path.empty()) {
      model_cfg = load_config(config_path);
    } else {
      model_cfg["model"] = model;
      if (model == "pt-dimer") model_cfg["params"] = {{"g", g}, {"gamma", gamma}};
      if (model == "detuned-dimer")
        model_cfg["params"] = {{"omega", omega}, {"g", g}, {"gamma", gamma}};
      if (model == "hoep-trimer")
        model_cfg["params"] = {{"g", g}, {"gamma", gamma}, {"epsilon", eps_model}};
    }

    if (spectrum->parsed()) return run_spectrum(model_cfg, out);
    if (mapc->parsed()) return run_map(model_cfg, route, existence, seed, out);
    if (sense->parsed()) return run_sense(delta, nu, kappa, epsilon, wmax, points, out);
    if (encircle->parsed())
      return run_encircle(gamma_t, radius, center_g, enc_gamma, direction, lambda0,
                          steps, rtol, dump_propagator, out);
    if (chern->parsed()) return run_chern(omega0, jhop, knu, grid, band, out);
    if (strip->parsed()) return run_strip(omega0, jhop, knu, width, kpoints, out);
    if (qmfs->parsed()) return run_qmfs_check(qn, qsamples, seed, out);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
