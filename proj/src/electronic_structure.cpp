#include "nvchem/electronic_structure.hpp"

#include "nvchem/linalg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nvchem {

namespace {

constexpr double kPi = std::numbers::pi;

double prim_norm(double a) { return std::pow(2.0 * a / kPi, 0.75); }

// unnormalized s-Gaussian pair quantities (Gaussian product theorem)
double s_prim(double a, const Eigen::Vector3d& ra, double b, const Eigen::Vector3d& rb) {
  const double p = a + b;
  const double ab2 = (ra - rb).squaredNorm();
  return std::pow(kPi / p, 1.5) * std::exp(-a * b / p * ab2);
}

double t_prim(double a, const Eigen::Vector3d& ra, double b, const Eigen::Vector3d& rb) {
  const double p = a + b;
  const double mu = a * b / p;
  const double ab2 = (ra - rb).squaredNorm();
  return mu * (3.0 - 2.0 * mu * ab2) * std::pow(kPi / p, 1.5) * std::exp(-mu * ab2);
}

double v_prim(double a, const Eigen::Vector3d& ra, double b, const Eigen::Vector3d& rb,
              const Eigen::Vector3d& rc, double z) {
  const double p = a + b;
  const double ab2 = (ra - rb).squaredNorm();
  const Eigen::Vector3d rp = (a * ra + b * rb) / p;
  const double pc2 = (rp - rc).squaredNorm();
  return -2.0 * kPi * z / p * std::exp(-a * b / p * ab2) * boys_f0(p * pc2);
}

double eri_prim(double a, const Eigen::Vector3d& ra, double b, const Eigen::Vector3d& rb, double c,
                const Eigen::Vector3d& rc, double d, const Eigen::Vector3d& rd) {
  const double p = a + b;
  const double q = c + d;
  const Eigen::Vector3d rp = (a * ra + b * rb) / p;
  const Eigen::Vector3d rq = (c * rc + d * rd) / q;
  const double ab2 = (ra - rb).squaredNorm();
  const double cd2 = (rc - rd).squaredNorm();
  const double pq2 = (rp - rq).squaredNorm();
  return 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) *
         std::exp(-a * b / p * ab2 - c * d / q * cd2) * boys_f0(p * q / (p + q) * pq2);
}

template <typename F>
double contract2(const ContractedOrbital& o1, const ContractedOrbital& o2, F prim) {
  double acc = 0.0;
  for (const auto& p1 : o1.primitives)
    for (const auto& p2 : o2.primitives)
      acc += p1.coefficient * p2.coefficient * prim(p1.exponent, o1.center, p2.exponent, o2.center);
  return acc;
}

}  // namespace

double boys_f0(double t) {
  if (t < 0.0) throw std::invalid_argument("boys_f0: negative argument");
  if (t < 1e-8) return 1.0 - t / 3.0 + t * t / 10.0 - t * t * t / 42.0;
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(kPi / t) * std::erf(st);
}

ContractedOrbital normalized(ContractedOrbital orbital) {
  if (orbital.primitives.empty())
    throw std::invalid_argument("normalized: orbital needs at least one primitive");
  for (auto& p : orbital.primitives) {
    if (!(p.exponent > 0.0))
      throw std::invalid_argument("normalized: primitive exponents must be positive");
    p.coefficient *= prim_norm(p.exponent);
  }
  const double self = contract2(orbital, orbital, s_prim);
  const double scale = 1.0 / std::sqrt(self);
  for (auto& p : orbital.primitives) p.coefficient *= scale;
  return orbital;
}

MoleculeSpec heh_cation(double bond_length_pm) {
  const double r = bond_length_pm / kBohrPm;
  MoleculeSpec m;
  m.atoms = {{"He", 2.0, {0.0, 0.0, 0.0}}, {"H", 1.0, {0.0, 0.0, r}}};
  m.net_charge = 1;
  m.electron_count = 2;
  return m;
}

IntegralTables integrals_ss(const std::vector<ContractedOrbital>& orbitals,
                            const MoleculeSpec& molecule) {
  const int n = static_cast<int>(orbitals.size());
  if (n != 2) throw std::invalid_argument("integrals_ss: expected exactly two orbitals");

  IntegralTables tables{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      tables.overlap(i, j) = contract2(orbitals[i], orbitals[j], s_prim);
      double core = contract2(orbitals[i], orbitals[j], t_prim);
      for (const auto& atom : molecule.atoms)
        core += contract2(orbitals[i], orbitals[j],
                          [&](double a, const Eigen::Vector3d& ra, double b,
                              const Eigen::Vector3d& rb) {
                            return v_prim(a, ra, b, rb, atom.position, atom.charge);
                          });
      tables.core(i, j) = core;
    }

  // compute only canonical index combinations and mirror, so the 8-fold
  // permutational symmetry holds exactly as stored
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = r; s < n; ++s) {
          if (p * n + q > r * n + s) continue;
          double acc = 0.0;
          for (const auto& pp : orbitals[p].primitives)
            for (const auto& pq : orbitals[q].primitives)
              for (const auto& pr : orbitals[r].primitives)
                for (const auto& ps : orbitals[s].primitives)
                  acc += pp.coefficient * pq.coefficient * pr.coefficient * ps.coefficient *
                         eri_prim(pp.exponent, orbitals[p].center, pq.exponent,
                                  orbitals[q].center, pr.exponent, orbitals[r].center,
                                  ps.exponent, orbitals[s].center);
          tables.eri[p][q][r][s] = tables.eri[q][p][r][s] = tables.eri[p][q][s][r] =
              tables.eri[q][p][s][r] = tables.eri[r][s][p][q] = tables.eri[s][r][p][q] =
                  tables.eri[r][s][q][p] = tables.eri[s][r][q][p] = acc;
        }

  double en = 0.0;
  for (size_t i = 0; i < molecule.atoms.size(); ++i)
    for (size_t j = i + 1; j < molecule.atoms.size(); ++j) {
      const double rij = (molecule.atoms[i].position - molecule.atoms[j].position).norm();
      if (rij <= 0.0)
        throw std::invalid_argument("integrals_ss: coincident nuclei, nuclear repulsion singular");
      en += molecule.atoms[i].charge * molecule.atoms[j].charge / rij;
    }
  tables.nuclear_repulsion = en;
  return tables;
}

HartreeFockResult run_rhf(const IntegralTables& integrals) {
  // symmetric orthogonalization X = S^{-1/2}
  const Matrix s_c = integrals.overlap.cast<Complex>();
  const EigenDecomposition sd = hermitian_eig(s_c);
  if (sd.values(0) <= 0.0)
    throw std::invalid_argument("run_rhf: overlap matrix not positive definite");
  Eigen::Matrix2d svec = sd.vectors.real();
  Eigen::Matrix2d x = svec *
                      Eigen::Vector2d(1.0 / std::sqrt(sd.values(0)), 1.0 / std::sqrt(sd.values(1)))
                          .asDiagonal() *
                      svec.transpose();

  const Eigen::Matrix2d h = integrals.core;
  Eigen::Matrix2d fock = h;  // core guess
  Eigen::Matrix2d density = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d coeffs = Eigen::Matrix2d::Zero();
  Eigen::Vector2d eps = Eigen::Vector2d::Zero();
  double energy = 0.0;
  double dp = 1.0, de = 1.0;
  int it = 0;

  for (it = 1; it <= 500; ++it) {
    const Eigen::Matrix2d fp = x.transpose() * fock * x;
    const EigenDecomposition fd = hermitian_eig(fp.cast<Complex>());
    eps = fd.values;
    coeffs = x * fd.vectors.real();

    const Eigen::Vector2d occ = coeffs.col(0);
    const Eigen::Matrix2d density_new = 2.0 * occ * occ.transpose();

    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    for (int m = 0; m < 2; ++m)
      for (int nn = 0; nn < 2; ++nn) {
        double acc = 0.0;
        for (int l = 0; l < 2; ++l)
          for (int sg = 0; sg < 2; ++sg)
            acc += density_new(l, sg) *
                   (integrals.eri[m][nn][sg][l] - 0.5 * integrals.eri[m][l][sg][nn]);
        g(m, nn) = acc;
      }
    fock = h + g;

    const double energy_new =
        0.5 * (density_new.cwiseProduct(h + fock)).sum() + integrals.nuclear_repulsion;
    dp = (density_new - density).cwiseAbs().maxCoeff();
    de = std::abs(energy_new - energy);
    density = density_new;
    energy = energy_new;
    if (dp < 1e-10 && de < 1e-12) break;
  }
  if (dp >= 1e-10 || de >= 1e-12) {
    std::ostringstream msg;
    msg << "run_rhf: SCF did not converge in 500 iterations (last |dP| = " << dp
        << ", |dE| = " << de << ")";
    throw std::runtime_error(msg.str());
  }

  HartreeFockResult out;
  out.mo_coefficients = coeffs;
  out.orbital_energies = eps;
  out.energy = energy;
  out.iterations = it;
  return out;
}

FciHamiltonian build_fci_singlet(const HartreeFockResult& hf, const IntegralTables& integrals,
                                 double bond_length_pm) {
  const Eigen::Matrix2d c = hf.mo_coefficients;
  const Eigen::Matrix2d h_mo = c.transpose() * integrals.core * c;

  double g_mo[2][2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          double acc = 0.0;
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s)
                  acc += c(p, i) * c(q, j) * c(r, k) * c(s, l) * integrals.eri[p][q][r][s];
          g_mo[i][j][k][l] = acc;
        }

  const double en = integrals.nuclear_repulsion;
  const double h11 = h_mo(0, 0), h22 = h_mo(1, 1), h12 = h_mo(0, 1);

  // basis order (Psi1, Psi6, S); S = (Psi3 - Psi4)/sqrt(2), MO 0 = g, MO 1 = e
  Eigen::Matrix3d m;
  m(0, 0) = 2.0 * h11 + g_mo[0][0][0][0] + en;
  m(1, 1) = 2.0 * h22 + g_mo[1][1][1][1] + en;
  m(2, 2) = h11 + h22 + g_mo[0][0][1][1] + g_mo[0][1][0][1] + en;
  m(0, 1) = m(1, 0) = g_mo[0][1][0][1];
  m(0, 2) = m(2, 0) = std::numbers::sqrt2 * (h12 + g_mo[0][1][0][0]);
  m(1, 2) = m(2, 1) = std::numbers::sqrt2 * (h12 + g_mo[0][1][1][1]);

  FciHamiltonian out;
  out.matrix = m;
  out.bond_length_pm = bond_length_pm;
  out.trace_offset = m.trace() / 3.0;
  out.basis_labels = {"Psi1", "Psi6", "(Psi3-Psi4)/sqrt2"};
  return out;
}

}  // namespace nvchem
