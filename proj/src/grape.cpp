#include "nvchem/grape.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nvchem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kLevelPlus = 0;
constexpr int kLevelZero = 1;
constexpr int kLevelMinus = 2;

void check_cap(const ControlProblem& problem, const PulseSequence& pulses) {
  if (pulses.amplitudes_mhz.rows() != problem.pieces || pulses.amplitudes_mhz.cols() != 4)
    throw std::invalid_argument("piecewise_propagator: pulse table must be pieces x 4");
  for (int j = 0; j < problem.pieces; ++j)
    for (int tone = 0; tone < 2; ++tone) {
      const double i_amp = pulses.amplitudes_mhz(j, 2 * tone);
      const double q_amp = pulses.amplitudes_mhz(j, 2 * tone + 1);
      if (std::hypot(i_amp, q_amp) > problem.amplitude_cap_mhz * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "piecewise_propagator: piece " << j + 1 << " tone " << tone + 1
            << " exceeds the amplitude cap (" << std::hypot(i_amp, q_amp) << " > "
            << problem.amplitude_cap_mhz << " MHz)";
        throw std::invalid_argument(msg.str());
      }
    }
}

Matrix piece_hamiltonian(const ControlProblem& problem, const PulseSequence& pulses, int piece) {
  Matrix h = problem.drift;
  for (int c = 0; c < 4; ++c)
    h += (kTwoPi * pulses.amplitudes_mhz(piece, c) / 2.0) * problem.generators[static_cast<size_t>(c)];
  return h;
}

// clip each tone's (I, Q) pair back into the cap disk
void clip_to_cap(Eigen::MatrixXd& amps, double cap) {
  for (Eigen::Index j = 0; j < amps.rows(); ++j)
    for (int tone = 0; tone < 2; ++tone) {
      const double r = std::hypot(amps(j, 2 * tone), amps(j, 2 * tone + 1));
      if (r > cap) {
        amps(j, 2 * tone) *= cap / r;
        amps(j, 2 * tone + 1) *= cap / r;
      }
    }
}

struct RestartResult {
  PulseSequence pulses;
  double fidelity = -1.0;
  int iterations = 0;
  double gradient_norm = 0;
  std::vector<double> history;
};

RestartResult run_restart(const ControlProblem& problem, const TargetGate& target,
                          const GrapeOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.2 * problem.amplitude_cap_mhz,
                                             0.2 * problem.amplitude_cap_mhz);
  PulseSequence pulses{Eigen::MatrixXd(problem.pieces, 4)};
  for (int j = 0; j < problem.pieces; ++j)
    for (int c = 0; c < 4; ++c) pulses.amplitudes_mhz(j, c) = uni(rng);

  auto [fid, grad] = fidelity_and_gradient(problem, pulses, target);
  std::vector<double> history{fid};
  double step = 1.0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double gnorm = grad.norm();
    if (gnorm < 1e-12 || fid >= options.stop_fidelity) break;

    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      PulseSequence trial{pulses.amplitudes_mhz + step * grad};
      clip_to_cap(trial.amplitudes_mhz, problem.amplitude_cap_mhz);
      const double trial_fid = subspace_fidelity(piecewise_propagator(problem, trial), target);
      if (trial_fid > fid) {
        pulses = trial;
        fid = trial_fid;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    history.push_back(fid);
    std::tie(fid, grad) = fidelity_and_gradient(problem, pulses, target);
    step *= 1.6;
  }
  return {pulses, fid, it, grad.norm(), std::move(history)};
}

}  // namespace

ControlProblem default_control_problem(const NvParameters& params) {
  const Matrix h = nv_hamiltonian(params);
  const auto transitions = transition_frequencies(params);
  const double w_plus = kTwoPi * transitions[0].frequency_mhz;   // ms 0 -> +1, rad/us
  const double w_minus = kTwoPi * transitions[1].frequency_mhz;  // ms 0 -> -1, rad/us

  // frame diagonal: electron carriers per m_s plus the full nuclear-dependent
  // m_s = 0 row; what remains is the hyperfine detuning relative to m_I = -1
  ControlProblem problem;
  problem.drift = Matrix::Zero(9, 9);
  for (int ms = 0; ms < 3; ++ms)
    for (int mi = 0; mi < 3; ++mi) {
      const int idx = 3 * ms + mi;
      const double carrier = (ms == kLevelPlus) ? w_plus : (ms == kLevelMinus) ? w_minus : 0.0;
      const double nuclear_row = h(3 * kLevelZero + mi, 3 * kLevelZero + mi).real();
      problem.drift(idx, idx) = h(idx, idx).real() - carrier - nuclear_row;
    }

  const Matrix id3 = Matrix::Identity(3, 3);
  Matrix xp = Matrix::Zero(3, 3), yp = Matrix::Zero(3, 3);
  Matrix xm = Matrix::Zero(3, 3), ym = Matrix::Zero(3, 3);
  xp(kLevelPlus, kLevelZero) = xp(kLevelZero, kLevelPlus) = 1.0;
  yp(kLevelPlus, kLevelZero) = Complex(0.0, -1.0);
  yp(kLevelZero, kLevelPlus) = Complex(0.0, 1.0);
  xm(kLevelMinus, kLevelZero) = xm(kLevelZero, kLevelMinus) = 1.0;
  ym(kLevelMinus, kLevelZero) = Complex(0.0, -1.0);
  ym(kLevelZero, kLevelMinus) = Complex(0.0, 1.0);
  problem.generators = {kron(xp, id3), kron(yp, id3), kron(xm, id3), kron(ym, id3)};
  return problem;
}

TargetGate target_controlled_gate(const ShiftedHamiltonian& shifted, double power, double time) {
  const Matrix u_mol = expm_i(shifted.matrix.cast<Complex>(), power * time);
  const Matrix id3 = Matrix::Identity(3, 3);

  TargetGate target;
  target.unitary = Matrix::Zero(9, 9);
  target.projector = Matrix::Zero(9, 9);
  for (int mi = 0; mi < 3; ++mi) {
    Matrix proj = Matrix::Zero(3, 3);
    proj(mi, mi) = 1.0;
    target.unitary += kron(mi == kLevelMinus ? u_mol : id3, proj);
    if (mi == kLevelZero || mi == kLevelMinus)
      target.projector += kron(id3, proj);
  }
  return target;
}

Matrix piecewise_propagator(const ControlProblem& problem, const PulseSequence& pulses) {
  check_cap(problem, pulses);
  Matrix u = Matrix::Identity(9, 9);
  for (int j = 0; j < problem.pieces; ++j)
    u = expm_i(piece_hamiltonian(problem, pulses, j), problem.piece_duration_us) * u;
  return u;
}

double subspace_fidelity(const Matrix& u, const TargetGate& target) {
  const double d = std::round(target.projector.trace().real());
  const Complex tr =
      (target.projector * target.unitary.adjoint() * u * target.projector).trace();
  return std::norm(tr) / (d * d);
}

std::pair<double, Eigen::MatrixXd> fidelity_and_gradient(const ControlProblem& problem,
                                                         const PulseSequence& pulses,
                                                         const TargetGate& target) {
  check_cap(problem, pulses);
  const int n = problem.pieces;
  const double dt = problem.piece_duration_us;

  std::vector<EigenDecomposition> eigs(static_cast<size_t>(n));
  std::vector<Matrix> step(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    eigs[static_cast<size_t>(j)] = hermitian_eig(piece_hamiltonian(problem, pulses, j));
    const EigenDecomposition& d = eigs[static_cast<size_t>(j)];
    Vector phases(9);
    for (int a = 0; a < 9; ++a) phases(a) = std::exp(Complex(0.0, -d.values(a) * dt));
    step[static_cast<size_t>(j)] = d.vectors * phases.asDiagonal() * d.vectors.adjoint();
  }

  // forward[j] = U_j ... U_1, backward[j] = U_n ... U_{j+1}
  std::vector<Matrix> forward(static_cast<size_t>(n) + 1);
  std::vector<Matrix> backward(static_cast<size_t>(n) + 1);
  forward[0] = Matrix::Identity(9, 9);
  for (int j = 0; j < n; ++j)
    forward[static_cast<size_t>(j) + 1] = step[static_cast<size_t>(j)] * forward[static_cast<size_t>(j)];
  backward[static_cast<size_t>(n)] = Matrix::Identity(9, 9);
  for (int j = n - 1; j >= 0; --j)
    backward[static_cast<size_t>(j)] = backward[static_cast<size_t>(j) + 1] * step[static_cast<size_t>(j)];

  const double d6 = std::round(target.projector.trace().real());
  const Matrix lhs = target.projector * target.unitary.adjoint();
  const Complex tr = (lhs * forward[static_cast<size_t>(n)] * target.projector).trace();
  const double fid = std::norm(tr) / (d6 * d6);

  Eigen::MatrixXd grad(n, 4);
  for (int j = 0; j < n; ++j) {
    const EigenDecomposition& d = eigs[static_cast<size_t>(j)];
    Vector phases(9);
    for (int a = 0; a < 9; ++a) phases(a) = std::exp(Complex(0.0, -d.values(a) * dt));

    // divided differences of exp(-i dt lambda): exact derivative of the
    // per-piece exponential through the eigenbasis
    Matrix loewner(9, 9);
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) {
        const double dl = d.values(a) - d.values(b);
        loewner(a, b) = (std::abs(dl) > 1e-12) ? (phases(a) - phases(b)) / dl
                                               : Complex(0.0, -dt) * phases(a);
      }

    for (int c = 0; c < 4; ++c) {
      // dH/du_c = pi * G_c (u in MHz, H in rad/us)
      const Matrix gt = d.vectors.adjoint() *
                        (std::numbers::pi * problem.generators[static_cast<size_t>(c)]) * d.vectors;
      const Matrix du = d.vectors * gt.cwiseProduct(loewner) * d.vectors.adjoint();
      const Complex dtr =
          (lhs * backward[static_cast<size_t>(j) + 1] * du * forward[static_cast<size_t>(j)] *
           target.projector)
              .trace();
      grad(j, c) = 2.0 * std::real(std::conj(tr) * dtr) / (d6 * d6);
    }
  }
  return {fid, grad};
}

std::pair<PulseSequence, FidelityReport> grape_optimize(const ControlProblem& problem,
                                                        const TargetGate& target,
                                                        const GrapeOptions& options) {
  if (options.max_iterations < 1)
    throw std::invalid_argument("grape_optimize: need at least one iteration");

  const int restarts = std::max(1, options.restarts);
  std::vector<RestartResult> results(static_cast<size_t>(restarts));

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int threads =
      options.threads > 0 ? options.threads : static_cast<int>(std::min<unsigned>(hw, 8));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1))
        results[static_cast<size_t>(r)] =
            run_restart(problem, target, options,
                        options.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1));
    });
  for (auto& th : pool) th.join();

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[static_cast<size_t>(r)].fidelity > results[static_cast<size_t>(best)].fidelity)
      best = r;

  const RestartResult& win = results[static_cast<size_t>(best)];
  FidelityReport report;
  report.fidelity = win.fidelity;
  report.iterations = win.iterations;
  report.gradient_norm = win.gradient_norm;
  report.converged = win.fidelity >= options.target_fidelity;
  report.restarts_used = restarts;
  report.fidelity_history = win.history;
  return {win.pulses, report};
}

}  // namespace nvchem
