// electronic_structure.hpp — STO-3G integrals for two s-type centers, restricted
// Hartree-Fock, and the 3x3 symmetry-adapted singlet FCI matrix for HeH+.
//
// Units: positions in bohr, exponents in bohr^-2, energies in Hartree. Bond
// lengths cross the public interface in pm and are converted internally.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace nvchem {

inline constexpr double kBohrPm = 52.9177210903;  // 1 bohr in pm

struct GaussianPrimitive {
  double exponent;     // bohr^-2
  double coefficient;  // contraction coefficient (raw, pre-normalization)
};

struct ContractedOrbital {
  Eigen::Vector3d center;  // bohr
  std::vector<GaussianPrimitive> primitives;
};

struct Atom {
  std::string element;
  double charge;             // nuclear charge Z
  Eigen::Vector3d position;  // bohr
};

struct MoleculeSpec {
  std::vector<Atom> atoms;
  int net_charge = 0;
  int electron_count = 0;
};

struct IntegralTables {
  Eigen::Matrix2d overlap;
  Eigen::Matrix2d core;          // T + V
  double eri[2][2][2][2];        // (pq|rs), chemist's notation
  double nuclear_repulsion = 0;  // Hartree
};

struct HartreeFockResult {
  Eigen::Matrix2d mo_coefficients;   // columns, ascending orbital energy
  Eigen::Vector2d orbital_energies;  // Hartree
  double energy = 0;                 // total (electronic + nuclear), Hartree
  int iterations = 0;
};

struct FciHamiltonian {
  Eigen::Matrix3d matrix;    // Hartree, basis (Psi1, Psi6, open-shell singlet)
  double bond_length_pm = 0;
  double trace_offset = 0;   // tr(matrix)/3
  std::array<std::string, 3> basis_labels;
};

// F0 Boys function: F0(t) = (1/2) sqrt(pi/t) erf(sqrt(t)); series branch below 1e-8
double boys_f0(double t);

// Normalize the contraction so the orbital has unit self-overlap.
ContractedOrbital normalized(ContractedOrbital orbital);

// HeH+ molecule at the given bond length (He at origin, H on +z).
MoleculeSpec heh_cation(double bond_length_pm);

// Closed-form s-orbital integrals over two contracted Gaussians plus nuclear
// repulsion. Throws when two nuclei coincide.
IntegralTables integrals_ss(const std::vector<ContractedOrbital>& orbitals,
                            const MoleculeSpec& molecule);

// Restricted Hartree-Fock for 2 electrons in 2 orbitals; core-Hamiltonian
// guess, converged when max density change < 1e-10 and energy change < 1e-12.
HartreeFockResult run_rhf(const IntegralTables& integrals);

// 3x3 singlet FCI matrix over (Psi1, Psi6, (Psi3 - Psi4)/sqrt(2)) from
// Slater-Condon rules in the MO basis; nuclear repulsion on the diagonal.
FciHamiltonian build_fci_singlet(const HartreeFockResult& hf, const IntegralTables& integrals,
                                 double bond_length_pm);

}  // namespace nvchem
