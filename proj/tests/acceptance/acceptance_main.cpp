// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exits nonzero if any criterion fails.

#include "nvchem/basis.hpp"
#include "nvchem/cospectral.hpp"
#include "nvchem/grape.hpp"
#include "nvchem/json_io.hpp"
#include "nvchem/pes_scan.hpp"
#include "nvchem/phase_estimation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace nvchem;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, bool pass, double seconds, const std::string& detail) {
  std::printf("criterion %2d: %s  (%6.2f s)  %s\n", criterion, pass ? "PASS" : "FAIL", seconds,
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

FciHamiltonian reference_hamiltonian() {
  return hamiltonian_from_json_file(std::string(NVCHEM_DATA_DIR) + "/reference_r90.json");
}

BasisSet basis() { return load_basis_file(std::string(NVCHEM_DATA_DIR) + "/sto3g.json"); }

std::array<double, 3> sorted_eigs(const Eigen::Matrix3d& m) {
  const EigenDecomposition d = hermitian_eig(m.cast<Complex>());
  return {d.values(0), d.values(1), d.values(2)};
}

// 1. FCI matrix at R = 90 pm vs the printed reference matrix
void criterion_1() {
  Timer timer;
  const FciHamiltonian built = fci_at_bond_length(90.0, basis());
  const FciHamiltonian reference = reference_hamiltonian();

  const auto eig_built = sorted_eigs(built.matrix);
  const auto eig_ref = sorted_eigs(reference.matrix);
  double eig_dev = 0.0;
  for (int k = 0; k < 3; ++k) eig_dev = std::max(eig_dev, std::abs(eig_built[k] - eig_ref[k]));

  std::array<double, 3> off_built{std::abs(built.matrix(0, 1)), std::abs(built.matrix(0, 2)),
                                  std::abs(built.matrix(1, 2))};
  std::array<double, 3> off_ref{std::abs(reference.matrix(0, 1)),
                                std::abs(reference.matrix(0, 2)),
                                std::abs(reference.matrix(1, 2))};
  std::sort(off_built.begin(), off_built.end());
  std::sort(off_ref.begin(), off_ref.end());
  double off_dev = 0.0;
  for (int k = 0; k < 3; ++k) off_dev = std::max(off_dev, std::abs(off_built[k] - off_ref[k]));

  const double seconds = timer.seconds();
  report(1, eig_dev < 1e-4 && off_dev < 1e-4 && seconds < 1.0, seconds,
         fmt("spectrum dev %.2e, |off-diagonal| dev %.2e (tol 1e-4)", eig_dev, off_dev));
}

// 2. thirteen-iteration IPEA on the ingested reference matrix
void criterion_2() {
  Timer timer;
  const FciHamiltonian h = reference_hamiltonian();
  const EnergyEstimate est = estimate_energy(h, +1, 13);

  const double reference_shifted = -1.020170538763381;  // published full-precision value
  const double expected = reference_shifted + h.trace_offset;
  const double dev_reference = std::abs(est.energy - expected);

  const double truth = sorted_eigs(h.matrix)[0];
  const double dev_oracle = std::abs(est.energy - truth);

  const double seconds = timer.seconds();
  report(2,
         dev_reference <= 5e-13 && est.uncertainty <= 5e-13 && seconds < 10.0, seconds,
         fmt("vs published constant %.3e (tol 5e-13); vs eigensolver %.3e; uncertainty %.1e",
             dev_reference, dev_oracle, est.uncertainty));
  std::printf(
      "              note: the printed 6-digit matrix pins the shifted ground energy at "
      "%.15f,\n              %.3e away from the published 16-digit constant; the estimator "
      "tracks the ingested matrix to %.1e\n",
      truth - h.trace_offset, std::abs((truth - h.trace_offset) - reference_shifted),
      dev_oracle);
}

// 3. equilibrium geometry from a 70-130 pm direct-eig scan
void criterion_3() {
  Timer timer;
  const BasisSet bs = basis();
  ScanConfig config;
  const auto points = scan(grid(70.0, 130.0, 2.5), bs, config);
  const auto ground = [&](double r) {
    return sorted_eigs(fci_at_bond_length(r, bs).matrix)[0];
  };
  const EquilibriumReport eq = find_equilibrium(points, true, ground, 1000.0);
  const double seconds = timer.seconds();
  report(3,
         std::abs(eq.r_eq_pm - 91.3) <= 0.5 && std::abs(eq.e_min - (-2.86269)) <= 5e-4 &&
             seconds < 30.0,
         seconds, fmt("R_eq = %.3f pm (91.3 +/- 0.5), E_min = %.6f (-2.86269 +/- 5e-4)",
                      eq.r_eq_pm, eq.e_min));
}

// 4. binding energy against the R = 1000 pm dissociation reference
void criterion_4() {
  Timer timer;
  const BasisSet bs = basis();
  ScanConfig config;
  const auto points = scan(grid(70.0, 130.0, 2.5), bs, config);
  const auto ground = [&](double r) {
    return sorted_eigs(fci_at_bond_length(r, bs).matrix)[0];
  };
  const EquilibriumReport eq = find_equilibrium(points, true, ground, 1000.0);
  const double seconds = timer.seconds();
  report(4, std::abs(eq.binding_energy - 0.07738) <= 2e-3, seconds,
         fmt("binding %.6f Hartree vs published 0.07738 +/- 2e-3 (E_ref(1000 pm) = %.6f)",
             eq.binding_energy, eq.e_ref));
}

// 5. GRAPE fidelity across geometries, seeded determinism
void criterion_5() {
  Timer timer;
  const BasisSet bs = basis();
  const NvParameters params;
  const ControlProblem problem = default_control_problem(params);
  const double gate_time = 0.8 * std::numbers::pi / 10.0;

  bool pass = true;
  std::string detail;
  double repeat_fidelity = -1.0;
  for (double r : {80.0, 90.0, 100.0}) {
    Timer single;
    const auto shifted = shift_hamiltonian(fci_at_bond_length(r, bs));
    const TargetGate target = target_controlled_gate(shifted, 1.0, gate_time);
    GrapeOptions options;
    options.seed = 7;
    const auto [pulses, rep] = grape_optimize(problem, target, options);
    pass = pass && rep.fidelity >= 0.99 && single.seconds() < 120.0;
    detail += fmt("R=%g F=%.4f  ", r, rep.fidelity);
    if (r == 90.0) repeat_fidelity = rep.fidelity;
  }
  {  // determinism: identical seed reproduces the R = 90 run bitwise
    const auto shifted = shift_hamiltonian(fci_at_bond_length(90.0, bs));
    GrapeOptions options;
    options.seed = 7;
    const auto [pulses, rep] =
        grape_optimize(problem, target_controlled_gate(shifted, 1.0, gate_time), options);
    pass = pass && rep.fidelity == repeat_fidelity;
    detail += fmt("rerun F identical: %s", rep.fidelity == repeat_fidelity ? "yes" : "NO");
  }
  report(5, pass, timer.seconds(), detail);
}

// 6. analytic gradient vs central finite differences
void criterion_6() {
  Timer timer;
  const NvParameters params;
  const ControlProblem problem = default_control_problem(params);
  const auto shifted = shift_hamiltonian(reference_hamiltonian());
  const TargetGate target =
      target_controlled_gate(shifted, 1.0, 0.8 * std::numbers::pi / 10.0);

  std::mt19937 rng(20250806);
  std::uniform_real_distribution<double> uni(-0.2 * problem.amplitude_cap_mhz,
                                             0.2 * problem.amplitude_cap_mhz);
  const double h = 1e-6;
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    PulseSequence pulses{Eigen::MatrixXd(problem.pieces, 4)};
    for (int j = 0; j < problem.pieces; ++j)
      for (int c = 0; c < 4; ++c) pulses.amplitudes_mhz(j, c) = uni(rng);
    const auto [fid, grad] = fidelity_and_gradient(problem, pulses, target);
    for (int j = 0; j < problem.pieces; ++j)
      for (int c = 0; c < 4; ++c) {
        PulseSequence plus = pulses, minus = pulses;
        plus.amplitudes_mhz(j, c) += h;
        minus.amplitudes_mhz(j, c) -= h;
        const double fd = (subspace_fidelity(piecewise_propagator(problem, plus), target) -
                           subspace_fidelity(piecewise_propagator(problem, minus), target)) /
                          (2.0 * h);
        worst = std::max(worst, std::abs(grad(j, c) - fd) / std::max(std::abs(fd), 1e-4));
      }
  }
  report(6, worst < 1e-5, timer.seconds(),
         fmt("worst relative gradient error %.2e over 20 points x 40 components", worst));
}

// 7. cospectrality property sweep plus counterexample
void criterion_7() {
  Timer timer;
  std::mt19937 rng(424242);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  bool all_bipartite = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    Matrix h = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = normal(rng);
    for (int v = 1; v < n; ++v) {
      const int u = static_cast<int>(rng() % static_cast<unsigned>(v));
      const Complex w(normal(rng), normal(rng));
      h(u, v) = w;
      h(v, u) = std::conj(w);
    }
    const CospectralityReport rep = cospectral_partner(h);
    all_bipartite = all_bipartite && rep.bipartite;
    if (rep.bipartite) worst = std::max(worst, rep.spectral_deviation);
  }

  Matrix triangle = Matrix::Zero(3, 3);
  triangle(0, 0) = -1.7;
  triangle(1, 1) = 0.3;
  triangle(2, 2) = 2.1;
  triangle(0, 1) = triangle(1, 0) = 0.8;
  triangle(1, 2) = triangle(2, 1) = -0.6;
  triangle(0, 2) = triangle(2, 0) = 1.1;
  const CospectralityReport tri = cospectral_partner(triangle);
  Matrix flipped = -triangle;
  for (int i = 0; i < 3; ++i) flipped(i, i) = triangle(i, i);
  const double counter_gap =
      (hermitian_eig(triangle).values - hermitian_eig(flipped).values).cwiseAbs().maxCoeff();

  report(7, all_bipartite && worst < 1e-10 && !tri.bipartite && counter_gap > 1e-3,
         timer.seconds(),
         fmt("200 tree-support matrices: max spectral deviation %.2e; triangle spectra differ "
             "by %.2e",
             worst, counter_gap));
}

// 8. polarization leaves the digit path fixed and scales peak weights
void criterion_8() {
  Timer timer;
  const FciHamiltonian h = reference_hamiltonian();
  IpeaConfig config;
  std::vector<std::vector<int>> digit_paths;
  std::vector<double> weights;
  for (double p : {0.3, 0.6, 1.0}) {
    config.polarization = p;
    const EnergyEstimate est = estimate_energy(h, +1, 8, config);
    digit_paths.push_back(est.digits);
    weights.push_back(est.eigenstate_weights.front());
  }
  const bool digits_fixed = digit_paths[0] == digit_paths[2] && digit_paths[1] == digit_paths[2];
  const double r03 = weights[0] / weights[2];
  const double r06 = weights[1] / weights[2];
  report(8,
         digits_fixed && std::abs(r03 - 0.3) <= 0.02 * 0.3 + 2e-3 &&
             std::abs(r06 - 0.6) <= 0.02 * 0.6 + 2e-3,
         timer.seconds(),
         fmt("digits %s; weight ratios %.4f (0.3), %.4f (0.6)",
             digits_fixed ? "identical" : "DIFFER", r03, r06));
}

// 9. trace identity on IPEA scan rows, subtraction vs direct eigenvalue
void criterion_9() {
  Timer timer;
  const BasisSet bs = basis();
  ScanConfig config;
  config.method = ScanMethod::ipea;
  config.iterations = 5;
  const auto points = scan(grid(80.0, 120.0, 5.0), bs, config);

  bool pass = true;
  double worst_identity = 0.0, worst_direct = 0.0;
  for (const auto& p : points) {
    if (p.flagged) {
      pass = false;
      continue;
    }
    worst_identity =
        std::max(worst_identity, std::abs(p.e_ground + p.e_excited1 + p.e_excited2 - p.trace));
    const auto eigs = sorted_eigs(fci_at_bond_length(p.bond_length_pm, bs).matrix);
    // subtraction result carries both estimates' uncertainty
    const double direct_gap = std::abs(p.e_excited2 - eigs[2]);
    worst_direct = std::max(worst_direct, direct_gap - 2.0 * p.uncertainty);
  }
  pass = pass && worst_identity < 1e-10 && worst_direct <= 0.0;
  report(9, pass, timer.seconds(),
         fmt("max |sum - trace| = %.2e (tol 1e-10); subtraction vs direct eigenvalue within "
             "combined uncertainty: %s",
             worst_identity, worst_direct <= 0.0 ? "yes" : "NO"));
}

// 10. IPEA vs eigensolver on random in-window spectra
void criterion_10() {
  Timer timer;
  std::mt19937 rng(20250808);
  std::uniform_real_distribution<double> eig_dist(-9.5, -0.5);
  std::normal_distribution<double> normal;
  int tested = 0;
  double worst = 0.0;
  while (tested < 100) {
    const Eigen::Vector3d lam(eig_dist(rng), eig_dist(rng), eig_dist(rng));
    Eigen::Matrix3d seed_matrix;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) seed_matrix(i, j) = normal(rng);
    const Eigen::HouseholderQR<Eigen::Matrix3d> qr(seed_matrix);
    const Eigen::Matrix3d q = qr.householderQ();
    Eigen::Matrix3d m = q * lam.asDiagonal() * q.transpose();
    m = 0.5 * (m + m.transpose());

    const EigenDecomposition d = hermitian_eig(m.cast<Complex>());
    for (int trial_idx : {0, 2}) {
      int dominant = 0;
      for (int k = 1; k < 3; ++k)
        if (std::norm(d.vectors(trial_idx, k)) > std::norm(d.vectors(trial_idx, dominant)))
          dominant = k;
      if (std::norm(d.vectors(trial_idx, dominant)) < 0.6) continue;
      const EnergyEstimate est =
          estimate_on_shifted({m, 0.0, 0.0}, trial_idx == 0 ? +1 : -1, 8);
      worst = std::max(worst, std::abs(est.energy - d.values(dominant)));
      ++tested;
      break;
    }
  }
  const double seconds = timer.seconds();
  report(10, worst < 1e-7 && seconds < 60.0, seconds,
         fmt("100 random spectra in (-10, 0): worst |IPEA - eig| = %.2e (tol 1e-7)", worst));
}

}  // namespace

int main() {
  std::printf("nvchem acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
