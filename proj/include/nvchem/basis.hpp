// basis.hpp — basis-set data file loading and default-config resolution.
//
// Basis files are JSON: { "elements": { "H": { "primitives": [ { "exponent":
// ..., "coefficient": ... }, ... ] }, ... } } with exponents in bohr^-2.

#pragma once

#include "nvchem/electronic_structure.hpp"

#include <map>
#include <string>
#include <vector>

namespace nvchem {

using BasisSet = std::map<std::string, std::vector<GaussianPrimitive>>;

BasisSet load_basis_file(const std::string& path);

// Normalized contracted orbitals for the molecule, one s function per atom.
std::vector<ContractedOrbital> atomic_orbitals(const MoleculeSpec& molecule,
                                               const BasisSet& basis);

// Resolve a config file: explicit path if non-empty, else $NVCHEM_CONFIG_DIR/<name>,
// else the data directory compiled into the library.
std::string resolve_config_path(const std::string& explicit_path, const std::string& name);

// Convenience: full pipeline bond length (pm) -> FCI Hamiltonian.
FciHamiltonian fci_at_bond_length(double bond_length_pm, const BasisSet& basis);

}  // namespace nvchem
