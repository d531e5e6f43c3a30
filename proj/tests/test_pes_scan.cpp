#include "nvchem/pes_scan.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace nvchem;

namespace {
BasisSet sto3g() { return load_basis_file(std::string(NVCHEM_DATA_DIR) + "/sto3g.json"); }
}  // namespace

TEST_CASE("grid: inclusive endpoints and validation") {
  const auto g = grid(70.0, 130.0, 2.5);
  CHECK(g.size() == 25);
  CHECK(g.front() == 70.0);
  CHECK(g.back() == doctest::Approx(130.0));
  CHECK_THROWS_AS(grid(-1.0, 10.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(grid(10.0, 5.0, 1.0), std::invalid_argument);
}

TEST_CASE("scan: direct-eig points are ordered and satisfy the trace identity") {
  const BasisSet basis = sto3g();
  ScanConfig config;
  const auto points =
      scan({50.0, 70.0, 85.0, 100.0, 115.0, 130.0, 175.0, 200.0, 250.0, 300.0}, basis, config);
  REQUIRE(points.size() == 10);
  for (const auto& p : points) {
    CHECK(!p.flagged);
    CHECK(p.e_ground < p.e_excited1);
    CHECK(p.e_excited1 < p.e_excited2);
    CHECK(p.e_ground + p.e_excited1 + p.e_excited2 == doctest::Approx(p.trace).epsilon(1e-14));
    // second excited from the subtraction equals the direct third eigenvalue
    const auto eigs =
        testsup::cubic_eigenvalues(fci_at_bond_length(p.bond_length_pm, basis).matrix);
    CHECK(p.e_excited2 == doctest::Approx(eigs[2]).epsilon(1e-10));
  }
}

TEST_CASE("scan: ipea and direct-eig agree within the interval half-width") {
  const BasisSet basis = sto3g();
  ScanConfig direct;
  ScanConfig ipea_cfg;
  ipea_cfg.method = ScanMethod::ipea;
  ipea_cfg.iterations = 5;
  const std::vector<double> rs{80.0, 90.0, 100.0, 110.0, 120.0};
  const auto reference = scan(rs, basis, direct);
  const auto estimated = scan(rs, basis, ipea_cfg);
  for (size_t i = 0; i < rs.size(); ++i) {
    REQUIRE(!estimated[i].flagged);
    CHECK(std::abs(estimated[i].e_ground - reference[i].e_ground) <=
          estimated[i].uncertainty + 1e-15);
    CHECK(std::abs(estimated[i].e_excited1 - reference[i].e_excited1) <=
          estimated[i].uncertainty + 1e-15);
  }
}

TEST_CASE("scan: estimation failure flags the point and the sweep continues") {
  const BasisSet basis = sto3g();
  ScanConfig config;
  config.method = ScanMethod::ipea;
  config.ipea.polarization = 0.02;  // below the peak-weight floor at every point
  const auto points = scan({85.0, 95.0, 105.0}, basis, config);
  REQUIRE(points.size() == 3);
  for (const auto& p : points) {
    CHECK(p.flagged);
    CHECK(!p.note.empty());
  }
}

TEST_CASE("scan: parallel evaluation is bitwise identical to serial") {
  const BasisSet basis = sto3g();
  ScanConfig serial;
  serial.threads = 1;
  ScanConfig parallel;
  parallel.threads = 4;
  const auto g = grid(75.0, 125.0, 5.0);
  const auto a = scan(g, basis, serial);
  const auto b = scan(g, basis, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].e_ground == b[i].e_ground);
    CHECK(a[i].e_excited1 == b[i].e_excited1);
    CHECK(a[i].e_excited2 == b[i].e_excited2);
  }
}

TEST_CASE("scan: smooth ground surface (no spurious curvature clusters)") {
  const BasisSet basis = sto3g();
  ScanConfig config;
  const auto points = scan(grid(70.0, 130.0, 1.0), basis, config);
  // second differences change sign only in a neighborhood of the minimum
  int sign_changes = 0;
  double prev = 0.0;
  for (size_t i = 1; i + 1 < points.size(); ++i) {
    const double dd =
        points[i + 1].e_ground - 2.0 * points[i].e_ground + points[i - 1].e_ground;
    if (i > 1 && dd * prev < 0.0) ++sign_changes;
    prev = dd;
  }
  CHECK(sign_changes <= 2);
}

TEST_CASE("find_equilibrium: exact parabola vertex recovery") {
  std::vector<SurfacePoint> points;
  const double r0 = 91.3, e0 = -2.86269, curv = 2.5e-5;
  for (double r = 80.0; r <= 102.0; r += 2.0) {
    SurfacePoint p;
    p.bond_length_pm = r;
    p.e_ground = e0 + curv * (r - r0) * (r - r0);
    points.push_back(p);
  }
  const auto parabola = [&](double r) { return e0 + curv * (r - r0) * (r - r0); };
  const EquilibriumReport fit = find_equilibrium(points, false, parabola, 1000.0);
  CHECK(fit.r_eq_pm == doctest::Approx(r0).epsilon(1e-10));
  CHECK(fit.e_min == doctest::Approx(e0).epsilon(1e-12));
  CHECK(fit.binding_energy == doctest::Approx(parabola(1000.0) - e0).epsilon(1e-8));

  const EquilibriumReport refined = find_equilibrium(points, true, parabola, 1000.0);
  CHECK(refined.r_eq_pm == doctest::Approx(r0).epsilon(1e-5));
}

TEST_CASE("find_equilibrium: rejects edge minima and short scans") {
  std::vector<SurfacePoint> increasing;
  for (double r = 90.0; r <= 100.0; r += 1.0) {
    SurfacePoint p;
    p.bond_length_pm = r;
    p.e_ground = r;  // monotone, minimum at the edge
    increasing.push_back(p);
  }
  const auto dummy = [](double r) { return r; };
  CHECK_THROWS_AS(find_equilibrium(increasing, false, dummy), std::invalid_argument);
  increasing.resize(3);
  CHECK_THROWS_AS(find_equilibrium(increasing, false, dummy), std::invalid_argument);
}

TEST_CASE("find_equilibrium: reference geometry from a coarse scan") {
  const BasisSet basis = sto3g();
  ScanConfig config;
  const auto points = scan(grid(70.0, 130.0, 2.5), basis, config);
  const auto ground = [&](double r) {
    return testsup::cubic_eigenvalues(fci_at_bond_length(r, basis).matrix)[0];
  };
  const EquilibriumReport report = find_equilibrium(points, true, ground, 1000.0);
  CHECK(report.r_eq_pm == doctest::Approx(91.35).epsilon(0.01));
  CHECK(report.e_min == doctest::Approx(-2.862695).epsilon(1e-5));
  CHECK(report.binding_energy > 0.0);
}
