// phase_estimation.hpp — controlled-U(t) phase kickback on the two-qutrit
// register, Fourier readout of the probe coherence, and base-10 iterative
// phase estimation over nested intervals.
//
// Simulation units: hbar = 1, energies in Hartree, times in 1/Hartree. The
// 3x3 molecular space maps onto the electron qutrit as m_s = (+1, 0, -1);
// the probe coherence is the nuclear (m_I = 0, m_I = -1) element.

#pragma once

#include "nvchem/electronic_structure.hpp"
#include "nvchem/linalg.hpp"
#include "nvchem/nv_register.hpp"

#include <string>
#include <vector>

namespace nvchem {

struct ShiftedHamiltonian {
  Eigen::Matrix3d matrix;     // H' = H - offset * I, traceless
  double offset = 0;          // tr(H)/3, Hartree
  double bond_length_pm = 0;  // source geometry (0 when not applicable)
};

struct ProbeSignal {
  Vector samples;              // complex, length L
  double sample_spacing = 0;   // t_s (1/Hartree)
  double power = 1;            // p: U^p realized as p-fold evolution time
  int iteration = 1;
};

struct SpectrumPeak {
  double frequency = 0;  // Hartree
  double weight = 0;     // amplitude; an isolated unit tone reports 1
};

struct IterationResult {
  int digit = 0;                      // segment index, counted downward from the
                                      // interval's upper edge
  double low = 0, high = 0;           // refined interval, Hartree
  double width = 0;                   // nominal refined width (previous / 10)
  std::vector<SpectrumPeak> spectrum; // as located this iteration
  int samples_used = 0;               // after any boundary-tie retries
};

struct EnergyEstimate {
  double energy = 0;        // Hartree (offset added back)
  double uncertainty = 0;   // half-width of the final interval
  int iterations = 0;
  int trial_ms = +1;
  std::vector<double> eigenstate_weights;  // |a_k|^2 from the first iteration
  std::vector<int> digits;
  std::vector<std::vector<SpectrumPeak>> spectrum_per_iteration;
  // Readout convention: sample = x + i y, the two probe quadratures measured
  // with x- and y-phased pi/2 pulses; the complex signal carries the energy sign.
  std::string quadratures = "x+iy";
};

struct IpeaConfig {
  int samples = 128;        // L per iteration
  int zero_padding = 16;    // FFT padding factor
  double nyquist_margin = 0.8;
  double tie_tolerance = 1e-3;   // boundary-tie guard, in segment widths
  int max_tie_retries = 5;       // each retry doubles L
  double weight_floor = 0.05;    // minimum acceptable peak weight
  double polarization = 1.0;
};

ShiftedHamiltonian shift_hamiltonian(const FciHamiltonian& hamiltonian);

// U_c = |+1><+1|_N x I + |0><0|_N x I + |-1><-1|_N x exp(-i H' t) applied to
// the register state (electron tensor nuclear ordering).
RegisterState controlled_evolution(const ShiftedHamiltonian& shifted, double t,
                                   const RegisterState& state);

// samples_j = 2 * <m_I=-1| tr_e rho(j t_s p) |m_I=0>, j = 1..length. Rejects
// t_s above the Nyquist bound pi / (p * max|eig|).
ProbeSignal sample_signal(const ShiftedHamiltonian& shifted, int trial_ms, double polarization,
                          double sample_spacing, int length, double power);

// Zero-padded DFT, peaks by argmax plus local quadratic interpolation on the
// log-magnitude; multi-tone Gauss-Newton refinement of the located peaks.
std::vector<SpectrumPeak> fourier_spectrum(const ProbeSignal& signal, int zero_padding = 16);

struct Interval {
  double low = -10.0, high = 0.0;
  double width = 0.0;  // nominal width; 0 derives high - low
};

// One base-10 refinement step: sample with p = 10^(k-1), demodulate by the
// interval midpoint, locate the residual peak, keep the tenth that contains it.
IterationResult ipea_iterate(const ShiftedHamiltonian& shifted, int trial_ms,
                             const Interval& interval, int k, const IpeaConfig& config = {});

// Iterate K times on an already-shifted Hamiltonian whose target eigenvalue
// lies in the k = 1 window (-10, 0); adds `offset` back at the end.
EnergyEstimate estimate_on_shifted(const ShiftedHamiltonian& shifted, int trial_ms, int iterations,
                                   const IpeaConfig& config = {});

// Full pipeline: shift, K iterations, offset restored.
EnergyEstimate estimate_energy(const FciHamiltonian& hamiltonian, int trial_ms, int iterations,
                               const IpeaConfig& config = {});

}  // namespace nvchem
