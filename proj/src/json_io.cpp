#include "nvchem/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace nvchem {

using nlohmann::json;

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Matrix& m) {
  return {{"re", to_json(Eigen::MatrixXd(m.real()))}, {"im", to_json(Eigen::MatrixXd(m.imag()))}};
}

json to_json(const EnergyEstimate& estimate) {
  json spectra = json::array();
  for (const auto& iteration : estimate.spectrum_per_iteration) {
    json peaks = json::array();
    for (const auto& peak : iteration)
      peaks.push_back({{"frequency_hartree", peak.frequency}, {"weight", peak.weight}});
    spectra.push_back(peaks);
  }
  return {{"energy_hartree", estimate.energy},
          {"uncertainty_hartree", estimate.uncertainty},
          {"iterations", estimate.iterations},
          {"trial", estimate.trial_ms > 0 ? "+1" : "-1"},
          {"digits", estimate.digits},
          {"eigenstate_weights", estimate.eigenstate_weights},
          {"quadratures", estimate.quadratures},
          {"spectrum_per_iteration", spectra}};
}

json to_json(const PulseSequence& pulses) {
  json pieces = json::array();
  for (Eigen::Index j = 0; j < pulses.amplitudes_mhz.rows(); ++j)
    pieces.push_back({{"tone1_I", pulses.amplitudes_mhz(j, 0)},
                      {"tone1_Q", pulses.amplitudes_mhz(j, 1)},
                      {"tone2_I", pulses.amplitudes_mhz(j, 2)},
                      {"tone2_Q", pulses.amplitudes_mhz(j, 3)}});
  return pieces;
}

json to_json(const CospectralityReport& report) {
  json out = {{"bipartite", report.bipartite}, {"threshold", report.threshold}};
  if (report.bipartite) {
    out["coloring"] = report.coloring;
    out["partner"] = to_json(report.partner);
    out["max_spectral_deviation"] = report.spectral_deviation;
  } else {
    out["odd_cycle"] = report.odd_cycle;
  }
  return out;
}

json to_json(const EquilibriumReport& report) {
  return {{"r_eq_pm", report.r_eq_pm},
          {"e_min_hartree", report.e_min},
          {"binding_energy_hartree", report.binding_energy},
          {"r_ref_pm", report.r_ref_pm},
          {"e_ref_hartree", report.e_ref}};
}

Matrix matrix_from_json(const json& doc) {
  const json& real_part = doc.is_array() ? doc : doc.at("matrix");
  const size_t n = real_part.size();
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (real_part.at(i).size() != n)
      throw std::invalid_argument("matrix_from_json: matrix must be square");
    for (size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          real_part.at(i).at(j).get<double>();
  }
  if (doc.is_object() && doc.contains("imag")) {
    const json& imag_part = doc.at("imag");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            Complex(0.0, imag_part.at(i).at(j).get<double>());
  }
  return m;
}

FciHamiltonian hamiltonian_from_json_file(const std::string& path) {
  const json doc = read_json_file(path);
  const Matrix m = matrix_from_json(doc);
  if (m.rows() != 3 || m.imag().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("hamiltonian_from_json_file: expected a real 3x3 matrix");
  FciHamiltonian h;
  h.matrix = m.real();
  h.bond_length_pm = doc.is_object() ? doc.value("bond_length_pm", 0.0) : 0.0;
  h.trace_offset = h.matrix.trace() / 3.0;
  h.basis_labels = {"Psi1", "Psi6", "(Psi3-Psi4)/sqrt2"};
  return h;
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_json_file: cannot open " + path);
  out << doc.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_json_file: cannot open " + path);
  return json::parse(in);
}

}  // namespace nvchem
