// nvchem — quantum-chemistry-on-a-spin-register simulator CLI.
//
// Subcommands: hamiltonian, ipea, scan, grape, cospectral.
// Human-readable summaries go to stdout; machine outputs only via --out.
// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 non-convergence.

#include "nvchem/basis.hpp"
#include "nvchem/cospectral.hpp"
#include "nvchem/grape.hpp"
#include "nvchem/json_io.hpp"
#include "nvchem/pes_scan.hpp"
#include "nvchem/phase_estimation.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNonConvergence = 3;

struct CommonOptions {
  std::string basis_path;
  std::string nv_params_path;
  std::string out_path;
  std::uint64_t seed = 0;
};

json config_json(const CommonOptions& common, const json& extra) {
  json cfg = extra;
  cfg["basis_file"] = nvchem::resolve_config_path(common.basis_path, "sto3g.json");
  cfg["nv_params_file"] = nvchem::resolve_config_path(common.nv_params_path, "nv_params.json");
  cfg["seed"] = common.seed;
  return cfg;
}

int run_hamiltonian(const CommonOptions& common, double r_pm) {
  const auto basis =
      nvchem::load_basis_file(nvchem::resolve_config_path(common.basis_path, "sto3g.json"));
  const nvchem::FciHamiltonian h = nvchem::fci_at_bond_length(r_pm, basis);
  const nvchem::EigenDecomposition d =
      nvchem::hermitian_eig(h.matrix.cast<nvchem::Complex>());

  std::printf("FCI singlet Hamiltonian at R = %.4f pm (basis %s, %s, %s)\n", r_pm,
              h.basis_labels[0].c_str(), h.basis_labels[1].c_str(), h.basis_labels[2].c_str());
  for (int i = 0; i < 3; ++i)
    std::printf("  [ %14.8f %14.8f %14.8f ]\n", h.matrix(i, 0), h.matrix(i, 1), h.matrix(i, 2));
  std::printf("eigenvalues (Hartree): %.8f %.8f %.8f\n", d.values(0), d.values(1), d.values(2));
  std::printf("trace offset tr/3:     %.8f\n", h.trace_offset);

  if (!common.out_path.empty()) {
    const json doc = {{"R_pm", r_pm},
                      {"matrix", nvchem::to_json(Eigen::MatrixXd(h.matrix))},
                      {"basis_labels", h.basis_labels},
                      {"offset", h.trace_offset},
                      {"eigenvalues", {d.values(0), d.values(1), d.values(2)}},
                      {"config", config_json(common, {{"R_pm", r_pm}})}};
    nvchem::write_json_file(common.out_path, doc);
  }
  return kExitOk;
}

int run_ipea(const CommonOptions& common, double r_pm, const std::string& matrix_path,
             const std::string& trial, int iterations, double polarization, int samples,
             int padding) {
  nvchem::FciHamiltonian h;
  if (!matrix_path.empty()) {
    h = nvchem::hamiltonian_from_json_file(matrix_path);
  } else {
    const auto basis =
        nvchem::load_basis_file(nvchem::resolve_config_path(common.basis_path, "sto3g.json"));
    h = nvchem::fci_at_bond_length(r_pm, basis);
  }

  nvchem::IpeaConfig cfg;
  cfg.samples = samples;
  cfg.zero_padding = padding;
  cfg.polarization = polarization;
  const int trial_ms = (trial == "-1") ? -1 : +1;
  const nvchem::EnergyEstimate estimate =
      nvchem::estimate_energy(h, trial_ms, iterations, cfg);

  std::printf("IPEA energy (trial %s, %d iterations): %.15f +/- %.1e Hartree\n", trial.c_str(),
              iterations, estimate.energy, estimate.uncertainty);
  std::printf("digits:");
  for (int d : estimate.digits) std::printf(" %d", d);
  std::printf("\noffset tr/3: %.15f Hartree\n", h.trace_offset);

  if (!common.out_path.empty()) {
    json doc = nvchem::to_json(estimate);
    doc["R_pm"] = h.bond_length_pm;
    doc["offset_hartree"] = h.trace_offset;
    doc["config"] = config_json(
        common, {{"R_pm", r_pm},
                 {"matrix_file", matrix_path},
                 {"trial", trial},
                 {"iterations", iterations},
                 {"polarization", polarization},
                 {"samples", samples},
                 {"zero_padding", padding}});
    nvchem::write_json_file(common.out_path, doc);
  }
  return kExitOk;
}

int run_scan(const CommonOptions& common, double rmin, double rmax, double step, int iterations,
             const std::string& method, const std::string& plot_path, bool refine, double r_ref,
             int threads) {
  const auto basis =
      nvchem::load_basis_file(nvchem::resolve_config_path(common.basis_path, "sto3g.json"));

  nvchem::ScanConfig cfg;
  cfg.iterations = iterations;
  cfg.method = (method == "ipea") ? nvchem::ScanMethod::ipea : nvchem::ScanMethod::direct_eig;
  cfg.threads = threads;

  const std::vector<nvchem::SurfacePoint> points =
      nvchem::scan(nvchem::grid(rmin, rmax, step), basis, cfg);

  // refinement evaluations follow the scan method
  const auto ground = [&](double r) {
    const nvchem::FciHamiltonian h = nvchem::fci_at_bond_length(r, basis);
    if (cfg.method == nvchem::ScanMethod::ipea)
      return nvchem::estimate_energy(h, +1, cfg.iterations, cfg.ipea).energy;
    return nvchem::hermitian_eig(h.matrix.cast<nvchem::Complex>()).values(0);
  };
  const nvchem::EquilibriumReport eq = nvchem::find_equilibrium(points, refine, ground, r_ref);

  std::printf("%10s %14s %14s %14s %14s\n", "R_pm", "E_ground", "E_excited1", "E_excited2",
              "trace");
  for (const auto& p : points)
    std::printf("%10.3f %14.8f %14.8f %14.8f %14.8f%s\n", p.bond_length_pm, p.e_ground,
                p.e_excited1, p.e_excited2, p.trace, p.flagged ? "  [flagged]" : "");
  std::printf("equilibrium: R_eq = %.3f pm, E_min = %.6f Hartree, binding = %.6f Hartree (vs "
              "R_ref = %.0f pm)\n",
              eq.r_eq_pm, eq.e_min, eq.binding_energy, eq.r_ref_pm);

  if (!common.out_path.empty()) {
    std::ofstream csv(common.out_path);
    if (!csv) throw std::runtime_error("scan: cannot open " + common.out_path);
    csv << "R_pm,E_ground,E_excited1,E_excited2,trace,uncertainty\n";
    csv.precision(17);
    for (const auto& p : points)
      csv << p.bond_length_pm << ',' << p.e_ground << ',' << p.e_excited1 << ',' << p.e_excited2
          << ',' << p.trace << ',' << p.uncertainty << "\n";
  }
  if (!plot_path.empty()) {
    json series = json::array();
    for (const auto& p : points)
      series.push_back({{"R_pm", p.bond_length_pm},
                        {"E_ground", p.e_ground},
                        {"E_excited1", p.e_excited1},
                        {"E_excited2", p.e_excited2},
                        {"flagged", p.flagged}});
    const json doc = {{"surface", series},
                      {"equilibrium", nvchem::to_json(eq)},
                      {"config", config_json(common, {{"rmin", rmin},
                                                      {"rmax", rmax},
                                                      {"step", step},
                                                      {"iterations", iterations},
                                                      {"method", method},
                                                      {"refine", refine},
                                                      {"r_ref_pm", r_ref}})}};
    nvchem::write_json_file(plot_path, doc);
  }
  return kExitOk;
}

int run_grape(const CommonOptions& common, double r_pm, double power, double time, double cap_mhz,
              int max_iterations, int restarts) {
  const auto basis =
      nvchem::load_basis_file(nvchem::resolve_config_path(common.basis_path, "sto3g.json"));
  const nvchem::NvParameters params = nvchem::load_nv_params(
      nvchem::resolve_config_path(common.nv_params_path, "nv_params.json"));

  const nvchem::FciHamiltonian h = nvchem::fci_at_bond_length(r_pm, basis);
  const nvchem::ShiftedHamiltonian shifted = nvchem::shift_hamiltonian(h);

  nvchem::ControlProblem problem = nvchem::default_control_problem(params);
  problem.amplitude_cap_mhz = cap_mhz;
  const nvchem::TargetGate target = nvchem::target_controlled_gate(shifted, power, time);

  nvchem::GrapeOptions options;
  options.seed = common.seed;
  options.max_iterations = max_iterations;
  options.restarts = restarts;
  const auto [pulses, report] = nvchem::grape_optimize(problem, target, options);

  std::printf("GRAPE controlled gate at R = %.3f pm, p = %g, t = %g (1/Hartree)\n", r_pm, power,
              time);
  std::printf("fidelity = %.6f after %d iterations (%d restarts), |grad| = %.2e\n",
              report.fidelity, report.iterations, report.restarts_used, report.gradient_norm);

  if (!common.out_path.empty()) {
    const json doc = {{"R_pm", r_pm},
                      {"power", power},
                      {"time_inv_hartree", time},
                      {"pieces", nvchem::to_json(pulses)},
                      {"piece_duration_ns", problem.piece_duration_us * 1000.0},
                      {"fidelity", report.fidelity},
                      {"converged", report.converged},
                      {"config", config_json(common, {{"R_pm", r_pm},
                                                      {"power", power},
                                                      {"time_inv_hartree", time},
                                                      {"amplitude_cap_mhz", cap_mhz},
                                                      {"max_iterations", max_iterations},
                                                      {"restarts", restarts}})}};
    nvchem::write_json_file(common.out_path, doc);
  }
  if (!report.converged) {
    std::fprintf(stderr, "grape: fidelity %.6f below target 0.99 after %d restarts\n",
                 report.fidelity, report.restarts_used);
    return kExitNonConvergence;
  }
  return kExitOk;
}

int run_cospectral(const CommonOptions& common, const std::string& input, double threshold) {
  const nvchem::Matrix h = nvchem::matrix_from_json(nvchem::read_json_file(input));
  const nvchem::CospectralityReport report = nvchem::cospectral_partner(h, threshold);
  json doc = nvchem::to_json(report);
  doc["config"] = config_json(common, {{"input", input}, {"threshold_rel", threshold}});
  std::cout << doc.dump(2) << "\n";
  if (!common.out_path.empty()) nvchem::write_json_file(common.out_path, doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HeH+ eigenenergies on a simulated NV two-qutrit register"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonOptions common;
  app.add_option("--basis", common.basis_path, "basis-set file (JSON)")->capture_default_str();
  app.add_option("--nv-params", common.nv_params_path, "NV parameter file (JSON)");
  app.add_option("--seed", common.seed, "seed for every stochastic choice");
  app.add_option("--out", common.out_path, "machine-readable output path");

  double r_pm = 90.0;
  std::string matrix_path, trial = "+1", method = "direct-eig", input, plot_path;
  int iterations = 13, samples = 128, padding = 16, threads = 0;
  int grape_iters = 500, restarts = 20;
  double polarization = 1.0, rmin = 70.0, rmax = 130.0, step = 2.5, r_ref = 1000.0;
  double power = 1.0, gate_time = 0.8 * 3.14159265358979323846 / 10.0, cap = 10.0;
  double threshold = 1e-10;
  bool refine = false;
  int scan_iters = 5;

  auto* cmd_h = app.add_subcommand("hamiltonian", "build the 3x3 singlet FCI matrix");
  cmd_h->add_option("--R", r_pm, "bond length (pm)")->required();

  auto* cmd_i = app.add_subcommand("ipea", "iterative phase estimation of an eigenenergy");
  cmd_i->add_option("--R", r_pm, "bond length (pm)");
  cmd_i->add_option("--matrix", matrix_path, "ingest a 3x3 Hamiltonian file instead of --R");
  cmd_i->add_option("--trial", trial, "trial state: +1 or -1")
      ->check(CLI::IsMember({"+1", "-1"}));
  cmd_i->add_option("--iterations", iterations, "IPEA iterations K");
  cmd_i->add_option("--polarization", polarization, "nuclear polarization fraction");
  cmd_i->add_option("--samples", samples, "signal samples per iteration");
  cmd_i->add_option("--padding", padding, "FFT zero-padding factor");

  auto* cmd_s = app.add_subcommand("scan", "sweep bond lengths and locate the equilibrium");
  cmd_s->add_option("--rmin", rmin, "smallest bond length (pm)");
  cmd_s->add_option("--rmax", rmax, "largest bond length (pm)");
  cmd_s->add_option("--step", step, "grid step (pm)");
  cmd_s->add_option("--iterations", scan_iters, "IPEA iterations per point");
  cmd_s->add_option("--method", method, "ipea or direct-eig")
      ->check(CLI::IsMember({"ipea", "direct-eig"}));
  cmd_s->add_option("--plot", plot_path, "plot-ready JSON output path");
  cmd_s->add_flag("--refine", refine, "golden-section refinement of the minimum");
  cmd_s->add_option("--rref", r_ref, "dissociation reference bond length (pm)");
  cmd_s->add_option("--threads", threads, "scan worker threads (0 = hardware)");

  auto* cmd_g = app.add_subcommand("grape", "synthesize the controlled gate pulse sequence");
  cmd_g->add_option("--R", r_pm, "bond length (pm)");
  cmd_g->add_option("--power", power, "evolution power p");
  cmd_g->add_option("--time", gate_time, "simulation time t (1/Hartree)");
  cmd_g->add_option("--cap", cap, "Rabi amplitude cap (MHz)");
  cmd_g->add_option("--max-iterations", grape_iters, "gradient-ascent iterations per restart");
  cmd_g->add_option("--restarts", restarts, "random restarts");

  auto* cmd_c = app.add_subcommand("cospectral", "bipartite-support cospectral partner check");
  cmd_c->add_option("--input", input, "Hermitian matrix file (JSON)")->required();
  cmd_c->add_option("--threshold", threshold, "relative off-diagonal support threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cmd_h->parsed()) return run_hamiltonian(common, r_pm);
    if (cmd_i->parsed())
      return run_ipea(common, r_pm, matrix_path, trial, iterations, polarization, samples,
                      padding);
    if (cmd_s->parsed())
      return run_scan(common, rmin, rmax, step, scan_iters, method, plot_path, refine, r_ref,
                      threads);
    if (cmd_g->parsed())
      return run_grape(common, r_pm, power, gate_time, cap, grape_iters, restarts);
    if (cmd_c->parsed()) return run_cospectral(common, input, threshold);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "nvchem: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "nvchem: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitConfig;
}
