// nv_register.hpp — the physical two-qutrit register: spin-1 operators, the NV
// ground-state spin Hamiltonian, transition frequencies, and state preparation.
//
// Basis ordering throughout: electron qutrit (m_s = +1, 0, -1) tensor nuclear
// qutrit (m_I = +1, 0, -1); index = 3*electron + nuclear. Internal frequency
// unit is rad/us; config units are GHz / MHz / kHz / gauss.

#pragma once

#include "nvchem/linalg.hpp"

#include <string>
#include <vector>

namespace nvchem {

struct NvParameters {
  double zero_field_splitting_ghz = 2.87;  // Delta
  double quadrupole_mhz = -4.94;           // Q
  double hyperfine_mhz = 2.16;             // A_hf
  double gamma_e_mhz_per_gauss = 2.8025;   // electron, linear frequency per gauss
  double gamma_n_khz_per_gauss = 0.3077;   // 14N, linear frequency per gauss
  double field_gauss = 11.0;               // B0, along the NV axis
  // Recorded constants (documented, not simulated):
  double nuclear_t1_under_illumination_us = 1.9;
  double repolarization_pulse_ns = 300.0;
};

NvParameters load_nv_params(const std::string& path);

struct RegisterState {
  Matrix rho;  // 9x9 density matrix
};

// trial electron state: +1 or -1 (m_s); probe pair is always (m_I = 0, m_I = -1)
struct InitializationModel {
  double polarization = 1.0;  // p in [0, 1]
  int trial_ms = +1;
};

struct TransitionFrequency {
  std::string label;
  double frequency_mhz;
};

struct Spin1Operators {
  Matrix sx, sy, sz;  // 3x3, (+1, 0, -1) basis
};

Spin1Operators spin1_operators();

// H/hbar = 2*pi*Delta*Sz^2 + gamma_e*B0*Sz + 2*pi*A_hf*Sz*Iz + 2*pi*Q*Iz^2
//        + gamma_n*B0*Iz, in rad/us on the 9-dim product space. Gyromagnetic
// ratios are given as linear frequencies per gauss and converted with 2*pi.
Matrix nv_hamiltonian(const NvParameters& params);

// The two driven electron transitions within the m_I = -1 manifold, from
// diagonal differences of nv_hamiltonian, in MHz.
std::vector<TransitionFrequency> transition_frequencies(const NvParameters& params);

// Electron in the pure trial state; nuclear state is p |psi0><psi0| +
// (1 - p)/3 * identity with psi0 = (|0> + |-1>)/sqrt(2).
RegisterState initialize(const InitializationModel& model);

void validate(const RegisterState& state);  // Hermitian, unit trace, PSD

}  // namespace nvchem
