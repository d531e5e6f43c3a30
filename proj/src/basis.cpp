#include "nvchem/basis.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace nvchem {

using nlohmann::json;

BasisSet load_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_basis_file: cannot open " + path);
  json doc = json::parse(in);
  if (!doc.contains("elements"))
    throw std::invalid_argument("load_basis_file: missing 'elements' in " + path);

  BasisSet basis;
  for (const auto& [element, entry] : doc.at("elements").items()) {
    std::vector<GaussianPrimitive> prims;
    for (const auto& p : entry.at("primitives"))
      prims.push_back({p.at("exponent").get<double>(), p.at("coefficient").get<double>()});
    if (prims.empty())
      throw std::invalid_argument("load_basis_file: element " + element + " has no primitives");
    basis[element] = std::move(prims);
  }
  return basis;
}

std::vector<ContractedOrbital> atomic_orbitals(const MoleculeSpec& molecule,
                                               const BasisSet& basis) {
  std::vector<ContractedOrbital> orbitals;
  orbitals.reserve(molecule.atoms.size());
  for (const auto& atom : molecule.atoms) {
    const auto it = basis.find(atom.element);
    if (it == basis.end())
      throw std::invalid_argument("atomic_orbitals: no basis entry for element " + atom.element);
    orbitals.push_back(normalized({atom.position, it->second}));
  }
  return orbitals;
}

std::string resolve_config_path(const std::string& explicit_path, const std::string& name) {
  namespace fs = std::filesystem;
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv("NVCHEM_CONFIG_DIR")) {
    const fs::path candidate = fs::path(dir) / name;
    if (fs::exists(candidate)) return candidate.string();
  }
  return (fs::path(NVCHEM_DATA_DIR) / name).string();
}

FciHamiltonian fci_at_bond_length(double bond_length_pm, const BasisSet& basis) {
  const MoleculeSpec molecule = heh_cation(bond_length_pm);
  const auto orbitals = atomic_orbitals(molecule, basis);
  const IntegralTables tables = integrals_ss(orbitals, molecule);
  const HartreeFockResult hf = run_rhf(tables);
  return build_fci_singlet(hf, tables, bond_length_pm);
}

}  // namespace nvchem
