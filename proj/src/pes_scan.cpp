#include "nvchem/pes_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace nvchem {

std::vector<double> grid(double r_min_pm, double r_max_pm, double step_pm) {
  if (!(r_min_pm > 0) || !(r_max_pm >= r_min_pm) || !(step_pm > 0))
    throw std::invalid_argument("grid: need 0 < rmin <= rmax and step > 0");
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((r_max_pm - r_min_pm) / step_pm + 1e-9)) + 1;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(r_min_pm + i * step_pm);
  return out;
}

SurfacePoint scan_point(double bond_length_pm, const BasisSet& basis, const ScanConfig& config) {
  SurfacePoint point;
  point.bond_length_pm = bond_length_pm;
  const FciHamiltonian h = fci_at_bond_length(bond_length_pm, basis);
  point.trace = h.matrix.trace();

  if (config.method == ScanMethod::direct_eig) {
    const EigenDecomposition d = hermitian_eig(h.matrix.cast<Complex>());
    point.e_ground = d.values(0);
    point.e_excited1 = d.values(1);
    point.e_excited2 = point.trace - point.e_ground - point.e_excited1;
    point.uncertainty = 0.0;
    return point;
  }

  try {
    const EnergyEstimate ground = estimate_energy(h, +1, config.iterations, config.ipea);
    const EnergyEstimate excited = estimate_energy(h, -1, config.iterations, config.ipea);
    point.e_ground = ground.energy;
    point.e_excited1 = excited.energy;
    point.e_excited2 = point.trace - point.e_ground - point.e_excited1;
    point.uncertainty = ground.uncertainty;
  } catch (const std::runtime_error& err) {
    point.flagged = true;
    point.note = err.what();
  }
  return point;
}

std::vector<SurfacePoint> scan(const std::vector<double>& bond_lengths_pm, const BasisSet& basis,
                               const ScanConfig& config) {
  for (double r : bond_lengths_pm)
    if (!(r > 0)) throw std::invalid_argument("scan: bond lengths must be positive");

  std::vector<SurfacePoint> points(bond_lengths_pm.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int threads = config.threads > 0
                          ? config.threads
                          : static_cast<int>(std::min<size_t>(hw, bond_lengths_pm.size()));

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < bond_lengths_pm.size(); i = next.fetch_add(1))
        points[i] = scan_point(bond_lengths_pm[i], basis, config);
    });
  for (auto& th : pool) th.join();

  std::sort(points.begin(), points.end(), [](const SurfacePoint& a, const SurfacePoint& b) {
    return a.bond_length_pm < b.bond_length_pm;
  });
  return points;
}

EquilibriumReport find_equilibrium(const std::vector<SurfacePoint>& points, bool refine,
                                   const std::function<double(double)>& ground_energy,
                                   double r_ref_pm) {
  std::vector<const SurfacePoint*> usable;
  for (const auto& p : points)
    if (!p.flagged) usable.push_back(&p);
  if (usable.size() < 5)
    throw std::invalid_argument("find_equilibrium: need at least 5 usable points");

  size_t imin = 0;
  for (size_t i = 1; i < usable.size(); ++i)
    if (usable[i]->e_ground < usable[imin]->e_ground) imin = i;
  if (imin == 0 || imin + 1 == usable.size())
    throw std::invalid_argument("find_equilibrium: no interior minimum in the sampled range");

  // quadratic through the bracketing triple (the three lowest samples of a
  // smooth single-well curve)
  const double x0 = usable[imin - 1]->bond_length_pm, y0 = usable[imin - 1]->e_ground;
  const double x1 = usable[imin]->bond_length_pm, y1 = usable[imin]->e_ground;
  const double x2 = usable[imin + 1]->bond_length_pm, y2 = usable[imin + 1]->e_ground;
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double curv = (d1 - d0) / (x2 - x0);  // divided differences
  if (!(curv > 0)) throw std::invalid_argument("find_equilibrium: bracket is not convex");
  const double vertex = 0.5 * (x0 + x1 - d0 / curv);

  EquilibriumReport report;
  report.r_eq_pm = vertex;
  // parabola value at the vertex (Newton form)
  report.e_min = y0 + d0 * (vertex - x0) + curv * (vertex - x0) * (vertex - x1);

  if (refine) {
    double a = x0, b = x2;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ground_energy(c);
    double fd = ground_energy(d);
    while (b - a > 1e-4) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = ground_energy(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = ground_energy(d);
      }
    }
    report.r_eq_pm = 0.5 * (a + b);
    report.e_min = ground_energy(report.r_eq_pm);
  }

  report.r_ref_pm = r_ref_pm;
  report.e_ref = ground_energy(r_ref_pm);
  report.binding_energy = report.e_ref - report.e_min;
  return report;
}

}  // namespace nvchem
