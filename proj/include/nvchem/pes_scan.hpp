// pes_scan.hpp — bond-length sweeps over the three singlet surfaces,
// equilibrium geometry and binding energy.

#pragma once

#include "nvchem/basis.hpp"
#include "nvchem/phase_estimation.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nvchem {

struct SurfacePoint {
  double bond_length_pm = 0;
  double e_ground = 0;    // trial |+1>
  double e_excited1 = 0;  // trial |-1>
  double e_excited2 = 0;  // trace - ground - first excited
  double trace = 0;
  double uncertainty = 0;  // per-estimate interval half-width (0 for direct-eig)
  bool flagged = false;    // estimation failed at this point
  std::string note;
};

struct EquilibriumReport {
  double r_eq_pm = 0;
  double e_min = 0;
  double binding_energy = 0;  // E_ground(R_ref) - E_min
  double r_ref_pm = 0;
  double e_ref = 0;
};

enum class ScanMethod { ipea, direct_eig };

struct ScanConfig {
  int iterations = 5;  // IPEA depth per point
  ScanMethod method = ScanMethod::direct_eig;
  IpeaConfig ipea;
  int threads = 0;  // 0: hardware concurrency; results are merged by R order
};

std::vector<double> grid(double r_min_pm, double r_max_pm, double step_pm);

SurfacePoint scan_point(double bond_length_pm, const BasisSet& basis, const ScanConfig& config);

// Points evaluated independently (optionally in parallel) and returned in R
// order; a failed IPEA point is flagged and the sweep continues.
std::vector<SurfacePoint> scan(const std::vector<double>& bond_lengths_pm, const BasisSet& basis,
                               const ScanConfig& config);

// Quadratic fit through the three lowest sampled points, optionally followed
// by golden-section refinement with fresh evaluations of `ground_energy`.
EquilibriumReport find_equilibrium(const std::vector<SurfacePoint>& points, bool refine,
                                   const std::function<double(double)>& ground_energy,
                                   double r_ref_pm = 1000.0);

}  // namespace nvchem
