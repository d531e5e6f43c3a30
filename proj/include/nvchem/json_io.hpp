// json_io.hpp — JSON conversions for matrices and result records.

#pragma once

#include "nvchem/cospectral.hpp"
#include "nvchem/grape.hpp"
#include "nvchem/pes_scan.hpp"
#include "nvchem/phase_estimation.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace nvchem {

nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const Matrix& m);  // {"re": [[..]], "im": [[..]]}
nlohmann::json to_json(const EnergyEstimate& estimate);
nlohmann::json to_json(const PulseSequence& pulses);
nlohmann::json to_json(const CospectralityReport& report);
nlohmann::json to_json(const EquilibriumReport& report);

// Accepts {"matrix": [[...]]} (optionally with "imag") or a bare 2-d array.
Matrix matrix_from_json(const nlohmann::json& doc);

// 3x3 real symmetric Hamiltonian file, optional "bond_length_pm"
FciHamiltonian hamiltonian_from_json_file(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::string& path);

}  // namespace nvchem
