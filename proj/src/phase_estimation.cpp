#include "nvchem/phase_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nvchem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNuclearZero = 1;   // ordering (+1, 0, -1)
constexpr int kNuclearMinus = 2;
constexpr int kMaxTones = 4;

Matrix controlled_unitary(const Eigen::Matrix3d& hp, double t) {
  const Matrix u_mol = expm_i(hp.cast<Complex>(), t);
  const Matrix id3 = Matrix::Identity(3, 3);
  Matrix u = Matrix::Zero(9, 9);
  for (int n = 0; n < 3; ++n) {
    Matrix proj = Matrix::Zero(3, 3);
    proj(n, n) = 1.0;
    u += kron(n == kNuclearMinus ? u_mol : id3, proj);
  }
  return u;
}

// raw probe samples for an arbitrary 3x3 generator; the caller owns the
// Nyquist policy (absolute bound for the public op, residual bound inside
// the iteration after midpoint demodulation)
ProbeSignal sample_probe(const Eigen::Matrix3d& hp, int trial_ms, double polarization,
                         double sample_spacing, int length, double power, int iteration) {
  const RegisterState initial = initialize({polarization, trial_ms});
  ProbeSignal signal;
  signal.samples.resize(length);
  signal.sample_spacing = sample_spacing;
  signal.power = power;
  signal.iteration = iteration;
  for (int j = 1; j <= length; ++j) {
    const Matrix u = controlled_unitary(hp, static_cast<double>(j) * sample_spacing * power);
    const Matrix rho = u * initial.rho * u.adjoint();
    const Matrix nuclear = partial_trace(rho, 3, 3, Subsystem::second);
    signal.samples(j - 1) = 2.0 * nuclear(kNuclearMinus, kNuclearZero);
  }
  return signal;
}

void fft_inplace(std::vector<Complex>& x) {
  const size_t n = x.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const Complex a = x[i + k];
        const Complex b = x[i + k + len / 2] * w;
        x[i + k] = a + b;
        x[i + k + len / 2] = a - b;
        w *= wl;
      }
    }
  }
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct ToneFit {
  std::vector<double> frequencies;  // Hartree
  std::vector<Complex> amplitudes;
};

// linear least squares for amplitudes at fixed frequencies
std::vector<Complex> solve_amplitudes(const Vector& samples, double tau,
                                      const std::vector<double>& freqs) {
  const Eigen::Index l = samples.size();
  const int k = static_cast<int>(freqs.size());
  Matrix a(l, k);
  for (int c = 0; c < k; ++c)
    for (Eigen::Index j = 0; j < l; ++j)
      a(j, c) = std::exp(Complex(0.0, -freqs[static_cast<size_t>(c)] * tau *
                                          static_cast<double>(j + 1)));
  const Vector sol = a.colPivHouseholderQr().solve(samples);
  return {sol.data(), sol.data() + k};
}

Vector tone_model(const Vector& samples, double tau, const ToneFit& fit) {
  Vector model = Vector::Zero(samples.size());
  for (size_t c = 0; c < fit.frequencies.size(); ++c)
    for (Eigen::Index j = 0; j < samples.size(); ++j)
      model(j) += fit.amplitudes[c] *
                  std::exp(Complex(0.0, -fit.frequencies[c] * tau * static_cast<double>(j + 1)));
  return model;
}

// joint Gauss-Newton refinement of tone frequencies (amplitudes re-solved
// linearly at each step)
void refine_tones(const Vector& samples, double tau, ToneFit& fit) {
  const Eigen::Index l = samples.size();
  const int k = static_cast<int>(fit.frequencies.size());
  if (k == 0) return;
  for (int it = 0; it < 60; ++it) {
    fit.amplitudes = solve_amplitudes(samples, tau, fit.frequencies);
    const Vector resid = samples - tone_model(samples, tau, fit);
    Eigen::MatrixXd jac(2 * l, k);
    Eigen::VectorXd rhs(2 * l);
    for (Eigen::Index j = 0; j < l; ++j) {
      rhs(2 * j) = resid(j).real();
      rhs(2 * j + 1) = resid(j).imag();
      for (int c = 0; c < k; ++c) {
        const double t = tau * static_cast<double>(j + 1);
        const Complex d = fit.amplitudes[static_cast<size_t>(c)] * Complex(0.0, -t) *
                          std::exp(Complex(0.0, -fit.frequencies[static_cast<size_t>(c)] * t));
        jac(2 * j, c) = d.real();
        jac(2 * j + 1, c) = d.imag();
      }
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(rhs);
    if (!step.allFinite()) break;
    double scale = 0.0;
    for (int c = 0; c < k; ++c) {
      fit.frequencies[static_cast<size_t>(c)] += step(c);
      scale = std::max(scale, std::abs(fit.frequencies[static_cast<size_t>(c)]));
    }
    if (step.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, scale)) break;
  }
  fit.amplitudes = solve_amplitudes(samples, tau, fit.frequencies);
}

// argmax + quadratic interpolation on log-magnitude of the zero-padded DFT
bool locate_peak(const Vector& samples, double tau, int padding, double floor_abs, double& freq,
                 double& weight) {
  const size_t l = static_cast<size_t>(samples.size());
  const size_t n = next_pow2(std::max<size_t>(l * static_cast<size_t>(padding), 16));
  std::vector<Complex> buf(n, Complex(0.0, 0.0));
  for (size_t j = 0; j < l; ++j) buf[j] = samples(static_cast<Eigen::Index>(j));
  fft_inplace(buf);

  size_t m = 0;
  double best = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double mag = std::abs(buf[i]);
    if (mag > best) {
      best = mag;
      m = i;
    }
  }
  const double amp = best / static_cast<double>(l);
  if (amp < floor_abs) return false;

  const double mprev = std::abs(buf[(m + n - 1) % n]) / static_cast<double>(l);
  const double mnext = std::abs(buf[(m + 1) % n]) / static_cast<double>(l);
  double delta = 0.0;
  double vertex = std::log(amp);
  if (mprev > 0.0 && mnext > 0.0) {
    const double l0 = std::log(mprev);
    const double l1 = vertex;
    const double l2 = std::log(mnext);
    const double den = l0 - 2.0 * l1 + l2;
    if (den < 0.0) {
      delta = 0.5 * (l0 - l2) / den;
      delta = std::clamp(delta, -0.5, 0.5);
      vertex = l1 - 0.25 * (l0 - l2) * delta;
    }
  }

  const double half = static_cast<double>(n) / 2.0;
  double bin = static_cast<double>(m) + delta;
  if (bin > half) bin -= static_cast<double>(n);
  freq = -(kTwoPi * bin / static_cast<double>(n)) / tau;
  weight = std::exp(vertex);
  return true;
}

}  // namespace

ShiftedHamiltonian shift_hamiltonian(const FciHamiltonian& hamiltonian) {
  const double dev = (hamiltonian.matrix - hamiltonian.matrix.transpose()).cwiseAbs().maxCoeff();
  if (!(dev < kHermitianTol))
    throw std::invalid_argument("shift_hamiltonian: input matrix is not symmetric");
  ShiftedHamiltonian out;
  out.offset = hamiltonian.matrix.trace() / 3.0;
  out.matrix = hamiltonian.matrix - out.offset * Eigen::Matrix3d::Identity();
  out.bond_length_pm = hamiltonian.bond_length_pm;
  return out;
}

RegisterState controlled_evolution(const ShiftedHamiltonian& shifted, double t,
                                   const RegisterState& state) {
  validate(state);
  const Matrix u = controlled_unitary(shifted.matrix, t);
  return {u * state.rho * u.adjoint()};
}

ProbeSignal sample_signal(const ShiftedHamiltonian& shifted, int trial_ms, double polarization,
                          double sample_spacing, int length, double power) {
  if (length < 16) throw std::invalid_argument("sample_signal: need at least 16 samples");
  const EigenDecomposition d = hermitian_eig(shifted.matrix.cast<Complex>());
  const double band = std::max(std::abs(d.values(0)), std::abs(d.values(2)));
  const double bound = std::numbers::pi / (power * band);
  if (!(sample_spacing < bound)) {
    std::ostringstream msg;
    msg << "sample_signal: t_s = " << sample_spacing << " violates the sampling bound pi/(p*|E|) = "
        << bound;
    throw std::invalid_argument(msg.str());
  }
  return sample_probe(shifted.matrix, trial_ms, polarization, sample_spacing, length, power, 1);
}

std::vector<SpectrumPeak> fourier_spectrum(const ProbeSignal& signal, int zero_padding) {
  if (signal.samples.size() == 0) throw std::invalid_argument("fourier_spectrum: empty signal");
  if (zero_padding < 1) throw std::invalid_argument("fourier_spectrum: zero_padding must be >= 1");
  const double tau = signal.power * signal.sample_spacing;

  // peel tones: argmax + log-magnitude parabola on the residual spectrum,
  // then joint Gauss-Newton refinement
  ToneFit fit;
  Vector resid = signal.samples;
  double strongest = 0.0;
  for (int tone = 0; tone < kMaxTones; ++tone) {
    double freq = 0.0, weight = 0.0;
    const double floor_abs = std::max(1e-9, 0.001 * strongest);
    if (!locate_peak(resid, tau, zero_padding, floor_abs, freq, weight)) break;
    fit.frequencies.push_back(freq);
    refine_tones(signal.samples, tau, fit);
    resid = signal.samples - tone_model(signal.samples, tau, fit);
    strongest = 0.0;
    for (const Complex& a : fit.amplitudes) strongest = std::max(strongest, std::abs(a));
  }

  std::vector<SpectrumPeak> peaks;
  for (size_t c = 0; c < fit.frequencies.size(); ++c) {
    const double w = std::abs(fit.amplitudes[c]);
    if (w >= std::max(1e-9, 0.005 * strongest))
      peaks.push_back({fit.frequencies[c], w});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectrumPeak& a, const SpectrumPeak& b) { return a.weight > b.weight; });
  return peaks;
}

IterationResult ipea_iterate(const ShiftedHamiltonian& shifted, int trial_ms,
                             const Interval& interval, int k, const IpeaConfig& config) {
  if (k < 1) throw std::invalid_argument("ipea_iterate: iteration index must be >= 1");
  if (!(interval.high > interval.low))
    throw std::invalid_argument("ipea_iterate: empty refinement interval");

  const double power = std::pow(10.0, k - 1);
  const double width = interval.width > 0 ? interval.width : interval.high - interval.low;
  const double mid = interval.high - 0.5 * width;
  const double segment = width / 10.0;
  const double ts = config.nyquist_margin * std::numbers::pi / (power * width);

  const Eigen::Matrix3d demod = shifted.matrix - mid * Eigen::Matrix3d::Identity();

  int length = config.samples;
  for (int attempt = 0;; ++attempt) {
    const ProbeSignal signal =
        sample_probe(demod, trial_ms, config.polarization, ts, length, power, k);
    const std::vector<SpectrumPeak> residual_peaks =
        fourier_spectrum(signal, config.zero_padding);
    if (residual_peaks.empty() || residual_peaks.front().weight < config.weight_floor)
      throw std::runtime_error(
          "ipea_iterate: trial state has negligible overlap in this window (peak weight below "
          "floor)");

    const double peak = mid + residual_peaks.front().frequency;
    const double x = (interval.high - peak) / segment;
    if (x < -config.tie_tolerance || x > 10.0 + config.tie_tolerance)
      throw std::runtime_error("ipea_iterate: dominant peak lies outside the refinement interval");

    const double nearest = std::round(x);
    const double boundary_distance = std::abs(x - nearest);
    const bool exact_tie = boundary_distance < 1e-9;
    if (!exact_tie && boundary_distance < config.tie_tolerance &&
        attempt < config.max_tie_retries) {
      length *= 2;  // denser sampling before retry
      continue;
    }

    int digit = exact_tie ? static_cast<int>(nearest) : static_cast<int>(std::floor(x));
    digit = std::clamp(digit, 0, 9);

    IterationResult out;
    out.digit = digit;
    out.high = interval.high - digit * segment;
    out.low = out.high - segment;
    out.width = segment;
    out.samples_used = length;
    out.spectrum.reserve(residual_peaks.size());
    for (const SpectrumPeak& p : residual_peaks)
      out.spectrum.push_back({mid + p.frequency, p.weight});
    return out;
  }
}

EnergyEstimate estimate_on_shifted(const ShiftedHamiltonian& shifted, int trial_ms, int iterations,
                                   const IpeaConfig& config) {
  if (iterations < 1) throw std::invalid_argument("estimate_on_shifted: need K >= 1");

  Interval interval;
  EnergyEstimate out;
  out.iterations = iterations;
  out.trial_ms = trial_ms;
  for (int k = 1; k <= iterations; ++k) {
    const IterationResult step = ipea_iterate(shifted, trial_ms, interval, k, config);
    // nominal width 10^(1-k) avoids drift from chained division
    interval = {step.low, step.high, std::pow(10.0, 1 - k)};
    out.digits.push_back(step.digit);
    out.spectrum_per_iteration.push_back(step.spectrum);
    if (k == 1)
      for (const SpectrumPeak& p : step.spectrum) out.eigenstate_weights.push_back(p.weight);
  }
  out.energy = interval.high - 0.5 * interval.width + shifted.offset;
  out.uncertainty = 0.5 * interval.width;
  return out;
}

EnergyEstimate estimate_energy(const FciHamiltonian& hamiltonian, int trial_ms, int iterations,
                               const IpeaConfig& config) {
  return estimate_on_shifted(shift_hamiltonian(hamiltonian), trial_ms, iterations, config);
}

}  // namespace nvchem
