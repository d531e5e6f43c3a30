#include "nvchem/nv_register.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace nvchem;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
int level(int ms_index, int mi_index) { return 3 * ms_index + mi_index; }
}  // namespace

TEST_CASE("spin1_operators: algebra") {
  const Spin1Operators s = spin1_operators();
  Matrix sz_expected = Matrix::Zero(3, 3);
  sz_expected(0, 0) = 1.0;
  sz_expected(2, 2) = -1.0;
  CHECK((s.sz - sz_expected).cwiseAbs().maxCoeff() == 0.0);

  const Matrix casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
  CHECK((casimir - 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);

  const Matrix commutator = s.sx * s.sy - s.sy * s.sx - Complex(0.0, 1.0) * s.sz;
  CHECK(commutator.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("nv_hamiltonian: diagonal in the product basis") {
  const NvParameters params;
  const Matrix h = nv_hamiltonian(params);
  double off = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (i != j) off = std::max(off, std::abs(h(i, j)));
  CHECK(off == 0.0);
}

TEST_CASE("nv_hamiltonian: zero-field, zero-hyperfine spectrum") {
  NvParameters params;
  params.field_gauss = 0.0;
  params.hyperfine_mhz = 0.0;
  const Matrix h = nv_hamiltonian(params);
  std::vector<double> got, expected;
  for (int ms = -1; ms <= 1; ++ms)
    for (int mi = -1; mi <= 1; ++mi)
      expected.push_back(kTwoPi * params.zero_field_splitting_ghz * 1000.0 * ms * ms +
                         kTwoPi * params.quadrupole_mhz * mi * mi);
  for (int i = 0; i < 9; ++i) got.push_back(h(i, i).real());
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  for (size_t i = 0; i < 9; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("nv_hamiltonian: Zeeman and hyperfine diagonal arithmetic") {
  const NvParameters params;
  const Matrix h = nv_hamiltonian(params);
  const double we = kTwoPi * params.gamma_e_mhz_per_gauss * params.field_gauss;
  const double hf = kTwoPi * params.hyperfine_mhz;

  // the two m_I = -1 electron transitions (diagonal differences)
  const double f_plus = h(level(0, 2), level(0, 2)).real() - h(level(1, 2), level(1, 2)).real();
  const double f_minus = h(level(2, 2), level(2, 2)).real() - h(level(1, 2), level(1, 2)).real();
  CHECK(f_plus - f_minus == doctest::Approx(2.0 * we - 2.0 * hf).epsilon(1e-12));

  // cross-manifold pair (m_I = -1 up-transition vs m_I = +1 down-transition)
  // isolates the bare Zeeman term
  const double f_minus_p1 =
      h(level(2, 0), level(2, 0)).real() - h(level(1, 0), level(1, 0)).real();
  CHECK(f_plus - f_minus_p1 == doctest::Approx(2.0 * we).epsilon(1e-12));

  // hyperfine shift of the up-transition between m_I = 0 and m_I = -1 manifolds
  const double f_plus_mi0 =
      h(level(0, 1), level(0, 1)).real() - h(level(1, 1), level(1, 1)).real();
  CHECK(f_plus_mi0 - f_plus == doctest::Approx(hf).epsilon(1e-12));

  // m_s = 0 lowest within the m_I = -1 manifold
  CHECK(h(level(1, 2), level(1, 2)).real() < h(level(0, 2), level(0, 2)).real());
  CHECK(h(level(1, 2), level(1, 2)).real() < h(level(2, 2), level(2, 2)).real());
}

TEST_CASE("transition_frequencies: defaults near 2.87 GHz, split by Zeeman and hyperfine") {
  const NvParameters params;
  const auto transitions = transition_frequencies(params);
  REQUIRE(transitions.size() == 2);
  CHECK(std::abs(transitions[0].frequency_mhz - 2870.0) < 50.0);
  CHECK(std::abs(transitions[1].frequency_mhz - 2870.0) < 50.0);
  const double split = transitions[0].frequency_mhz - transitions[1].frequency_mhz;
  CHECK(split == doctest::Approx(2.0 * params.gamma_e_mhz_per_gauss * params.field_gauss -
                                 2.0 * params.hyperfine_mhz)
                     .epsilon(1e-10));

  NvParameters zero_field = params;
  zero_field.field_gauss = 0.0;
  const auto at_zero = transition_frequencies(zero_field);
  // coincide up to the hyperfine sign
  CHECK(at_zero[0].frequency_mhz - 2870.0 ==
        doctest::Approx(-(at_zero[1].frequency_mhz - 2870.0)).epsilon(1e-10));

  NvParameters bare{};
  bare.zero_field_splitting_ghz = 0.0;
  bare.field_gauss = 0.0;
  bare.hyperfine_mhz = 0.0;
  const auto trivial = transition_frequencies(bare);
  CHECK(trivial[0].frequency_mhz == 0.0);
  CHECK(trivial[1].frequency_mhz == 0.0);
}

TEST_CASE("initialize: purity, depolarized limit, coherence amplitude") {
  const RegisterState pure = initialize({1.0, +1});
  CHECK(std::abs((pure.rho * pure.rho).trace() - Complex(1.0, 0.0)) < 1e-12);

  const RegisterState mixed = initialize({0.0, +1});
  const Matrix nuclear0 = partial_trace(mixed.rho, 3, 3, Subsystem::second);
  CHECK((nuclear0 - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-14);

  const RegisterState p06 = initialize({0.6, -1});
  const Matrix nuclear = partial_trace(p06.rho, 3, 3, Subsystem::second);
  CHECK(std::abs(nuclear(1, 2)) == doctest::Approx(0.3).epsilon(1e-14));

  for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0})
    CHECK_NOTHROW(validate(initialize({p, +1})));  // RegisterState invariants

  CHECK_THROWS_AS(initialize({1.5, +1}), std::invalid_argument);
  CHECK_THROWS_AS(initialize({0.5, 0}), std::invalid_argument);
}
