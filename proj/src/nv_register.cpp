#include "nvchem/nv_register.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nvchem {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// electron/nuclear level ordering (+1, 0, -1) -> indices 0, 1, 2
constexpr int kLevelPlus = 0;
constexpr int kLevelZero = 1;
constexpr int kLevelMinus = 2;
}  // namespace

NvParameters load_nv_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_nv_params: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  NvParameters p;
  p.zero_field_splitting_ghz = doc.value("zero_field_splitting_ghz", p.zero_field_splitting_ghz);
  p.quadrupole_mhz = doc.value("quadrupole_mhz", p.quadrupole_mhz);
  p.hyperfine_mhz = doc.value("hyperfine_mhz", p.hyperfine_mhz);
  p.gamma_e_mhz_per_gauss = doc.value("gamma_e_mhz_per_gauss", p.gamma_e_mhz_per_gauss);
  p.gamma_n_khz_per_gauss = doc.value("gamma_n_khz_per_gauss", p.gamma_n_khz_per_gauss);
  p.field_gauss = doc.value("field_gauss", p.field_gauss);
  p.nuclear_t1_under_illumination_us =
      doc.value("nuclear_t1_under_illumination_us", p.nuclear_t1_under_illumination_us);
  p.repolarization_pulse_ns = doc.value("repolarization_pulse_ns", p.repolarization_pulse_ns);
  if (!(p.zero_field_splitting_ghz > 0))
    throw std::invalid_argument("load_nv_params: zero-field splitting must be positive");
  return p;
}

Spin1Operators spin1_operators() {
  Spin1Operators ops;
  const double r = 1.0 / std::numbers::sqrt2;
  ops.sx = Matrix::Zero(3, 3);
  ops.sx << 0, r, 0, r, 0, r, 0, r, 0;
  ops.sy = Matrix::Zero(3, 3);
  ops.sy << 0, Complex(0, -r), 0, Complex(0, r), 0, Complex(0, -r), 0, Complex(0, r), 0;
  ops.sz = Matrix::Zero(3, 3);
  ops.sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  return ops;
}

Matrix nv_hamiltonian(const NvParameters& params) {
  const Spin1Operators s = spin1_operators();
  const Matrix id3 = Matrix::Identity(3, 3);
  const Matrix sz = kron(s.sz, id3);
  const Matrix iz = kron(id3, s.sz);

  const double delta = kTwoPi * params.zero_field_splitting_ghz * 1000.0;    // rad/us
  const double quad = kTwoPi * params.quadrupole_mhz;                        // rad/us
  const double hf = kTwoPi * params.hyperfine_mhz;                           // rad/us
  const double we = kTwoPi * params.gamma_e_mhz_per_gauss * params.field_gauss;
  const double wn = kTwoPi * params.gamma_n_khz_per_gauss * 1e-3 * params.field_gauss;

  return delta * sz * sz + we * sz + hf * sz * iz + quad * iz * iz + wn * iz;
}

std::vector<TransitionFrequency> transition_frequencies(const NvParameters& params) {
  const Matrix h = nv_hamiltonian(params);
  const auto level = [](int ms, int mi) { return 3 * ms + mi; };
  const double e0 = h(level(kLevelZero, kLevelMinus), level(kLevelZero, kLevelMinus)).real();
  const double ep = h(level(kLevelPlus, kLevelMinus), level(kLevelPlus, kLevelMinus)).real();
  const double em = h(level(kLevelMinus, kLevelMinus), level(kLevelMinus, kLevelMinus)).real();
  return {
      {"mI=-1: ms 0 -> +1", (ep - e0) / kTwoPi},
      {"mI=-1: ms 0 -> -1", (em - e0) / kTwoPi},
  };
}

RegisterState initialize(const InitializationModel& model) {
  if (!(model.polarization >= 0.0 && model.polarization <= 1.0))
    throw std::invalid_argument("initialize: polarization must lie in [0, 1]");
  if (model.trial_ms != +1 && model.trial_ms != -1)
    throw std::invalid_argument("initialize: trial state must be m_s = +1 or -1");

  Vector electron = Vector::Zero(3);
  electron(model.trial_ms == +1 ? kLevelPlus : kLevelMinus) = 1.0;

  Vector psi0 = Vector::Zero(3);
  psi0(kLevelZero) = 1.0 / std::numbers::sqrt2;
  psi0(kLevelMinus) = 1.0 / std::numbers::sqrt2;

  const Matrix nuclear = model.polarization * (psi0 * psi0.adjoint()) +
                         (1.0 - model.polarization) / 3.0 * Matrix::Identity(3, 3);

  RegisterState state{kron(Matrix(electron * electron.adjoint()), nuclear)};
  validate(state);
  return state;
}

void validate(const RegisterState& state) {
  if (state.rho.rows() != 9 || state.rho.cols() != 9)
    throw std::invalid_argument("RegisterState: density matrix must be 9x9");
  const double herm = hermitian_deviation(state.rho);
  if (!(herm < kHermitianTol)) {
    std::ostringstream msg;
    msg << "RegisterState: not Hermitian (deviation " << herm << ")";
    throw std::invalid_argument(msg.str());
  }
  const double tr_dev = std::abs(state.rho.trace() - Complex(1.0, 0.0));
  if (!(tr_dev < kTraceTol)) {
    std::ostringstream msg;
    msg << "RegisterState: trace deviates from 1 by " << tr_dev;
    throw std::invalid_argument(msg.str());
  }
  const EigenDecomposition d = hermitian_eig(state.rho);
  if (d.values(0) < -1e-10) {
    std::ostringstream msg;
    msg << "RegisterState: negative eigenvalue " << d.values(0);
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace nvchem
