// grape.hpp — gradient-ascent pulse engineering for the controlled evolution
// gate on the 9-level register.
//
// Frame: rotating at the two m_I = -1 electron transition frequencies and at
// the nuclear internal Hamiltonian, with the rotating-wave approximation. In
// this frame the drift reduces to the hyperfine detuning relative to the
// m_I = -1 manifold and the two-tone drive becomes four static generators
// (in-phase/quadrature per tone). Amplitudes are Rabi frequencies in MHz;
// drive phases per tone: H_c = 2*pi*(I*X + Q*Y)/2.

#pragma once

#include "nvchem/linalg.hpp"
#include "nvchem/nv_register.hpp"
#include "nvchem/phase_estimation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace nvchem {

struct ControlProblem {
  Matrix drift;                    // 9x9 Hermitian, rad/us
  std::vector<Matrix> generators;  // X+, Y+, X-, Y- (tone 1 = ms 0<->+1, tone 2 = ms 0<->-1)
  int pieces = 10;
  double piece_duration_us = 0.14;
  double amplitude_cap_mhz = 10.0;  // cap on per-tone |I + iQ|
};

struct PulseSequence {
  // pieces x 4 columns: tone1_I, tone1_Q, tone2_I, tone2_Q (MHz)
  Eigen::MatrixXd amplitudes_mhz;
};

struct TargetGate {
  Matrix unitary;    // 9x9; identity filled outside the scored subspace
  Matrix projector;  // rank-6: nuclear m_I in {0, -1}, all electron levels
};

struct FidelityReport {
  double fidelity = 0;
  int iterations = 0;
  double gradient_norm = 0;
  bool converged = false;
  int restarts_used = 0;
  std::vector<double> fidelity_history;  // accepted line-search steps, winning restart
};

struct GrapeOptions {
  int max_iterations = 500;
  int restarts = 20;
  double target_fidelity = 0.99;
  double stop_fidelity = 0.9999;  // early exit inside a restart
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

// Rotating-frame control problem for the given NV parameters.
ControlProblem default_control_problem(const NvParameters& params);

// Controlled gate: identity on the nuclear |0> branch, exp(-i H' p t) on the
// electron qutrit for the |-1> branch; m_I = +1 is outside the scored subspace.
TargetGate target_controlled_gate(const ShiftedHamiltonian& shifted, double power, double time);

// Ordered product of per-piece exponentials; rejects amplitudes above the cap.
Matrix piecewise_propagator(const ControlProblem& problem, const PulseSequence& pulses);

// F = |tr(P target^dag U P)|^2 / d^2 with d = rank(P); global-phase invariant.
double subspace_fidelity(const Matrix& u, const TargetGate& target);

// Fidelity and its exact gradient with respect to the pulse amplitudes.
std::pair<double, Eigen::MatrixXd> fidelity_and_gradient(const ControlProblem& problem,
                                                         const PulseSequence& pulses,
                                                         const TargetGate& target);

// Gradient ascent with backtracking line search and seeded random restarts;
// deterministic for a fixed seed. Returns the best sequence found.
std::pair<PulseSequence, FidelityReport> grape_optimize(const ControlProblem& problem,
                                                        const TargetGate& target,
                                                        const GrapeOptions& options = {});

}  // namespace nvchem
