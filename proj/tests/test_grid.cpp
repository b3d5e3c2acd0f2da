#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trotterlab/grid.hpp"
#include "trotterlab/numerics.hpp"

using namespace trotterlab;

namespace {

Wavefunction random_fill(const GridSpec& g, Rep rep, std::uint64_t seed) {
  Wavefunction psi = make_wavefunction(g, rep);
  Rng rng(seed);
  for (auto& v : psi.values) v = rng.complex_normal();
  normalize(psi);
  return psi;
}

}  // namespace

TEST_CASE("grid construction validates shapes") {
  GridSpec r = make_grid(GridKind::radial_1d, {4096}, {60.0}, true, 1);
  CHECK(r.spacing(0) == doctest::Approx(60.0 / 4097.0).epsilon(1e-15));
  CHECK(r.position(0, 0) == doctest::Approx(60.0 / 4097.0).epsilon(1e-15));
  CHECK(r.total() == 4096);

  GridSpec t = make_grid(GridKind::tensor_3n, {4}, {6.0}, true, 2);
  CHECK(t.naxes() == 6);
  CHECK(t.total() == 4096);

  CHECK_THROWS_AS(make_grid(GridKind::radial_1d, {12}, {10.0}, true, 1),
                  std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(make_grid(GridKind::cartesian_3d, {4, 4, 4}, {5.0}, true, 1),
                  std::invalid_argument);  // below the floor
  CHECK_THROWS_AS(make_grid(GridKind::tensor_3n, {2}, {5.0}, true, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridKind::tensor_3n, {64}, {5.0}, true, 4),
                  std::invalid_argument);  // over the point budget
}

TEST_CASE("particle sub-offsets keep pairs apart") {
  GridSpec t = make_grid(GridKind::tensor_3n, {8}, {6.0}, true, 2);
  CHECK(t.offsets[0] == doctest::Approx(1.0 / 4.0));
  CHECK(t.offsets[3] == doctest::Approx(3.0 / 4.0));
  double min_sep = 1e300;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      min_sep = std::min(min_sep, std::abs(t.position(0, i) - t.position(3, j)));
  CHECK(min_sep > 0.1);
}

TEST_CASE("transforms are unitary and invertible") {
  for (auto kind : {GridKind::radial_1d, GridKind::cartesian_3d, GridKind::tensor_3n}) {
    GridSpec g = kind == GridKind::radial_1d
                     ? make_grid(kind, {256}, {20.0}, true, 1)
                     : kind == GridKind::cartesian_3d
                           ? make_grid(kind, {16, 16, 16}, {8.0}, true, 1)
                           : make_grid(kind, {4}, {5.0}, true, 2);
    Wavefunction psi = random_fill(g, Rep::position, 5);
    Wavefunction mom = transform(psi, Rep::momentum);
    CHECK(norm(mom) == doctest::Approx(1.0).epsilon(1e-12));
    Wavefunction back = transform(mom, Rep::position);
    CHECK(diff_norm(psi, back) < 1e-12);
  }
}

TEST_CASE("radial momentum lattice diagonalizes the discrete laplacian") {
  const int n = 64;
  GridSpec g = make_grid(GridKind::radial_1d, {n}, {10.0}, true, 1);
  double dr = g.spacing(0);
  for (int m : {0, 3, n - 1}) {
    Wavefunction psi = make_wavefunction(g, Rep::position);
    for (int j = 0; j < n; ++j)
      psi.values[j] = std::sin(M_PI * (m + 1) * (j + 1) / (n + 1.0));
    normalize(psi);
    // second difference applied directly
    Wavefunction lap = psi;
    for (int j = 0; j < n; ++j) {
      std::complex<double> left = j > 0 ? psi.values[j - 1] : 0.0;
      std::complex<double> right = j + 1 < n ? psi.values[j + 1] : 0.0;
      lap.values[j] = (2.0 * psi.values[j] - left - right) / (dr * dr);
    }
    double lam = (2.0 - 2.0 * std::cos(M_PI * (m + 1) / (n + 1.0))) / (dr * dr);
    CHECK(g.radial_lambda(m) == doctest::Approx(lam).epsilon(1e-13));
    Wavefunction scaled = psi;
    for (auto& v : scaled.values) v *= lam;
    CHECK(diff_norm(lap, scaled) < 1e-9 * lam);
  }
}

TEST_CASE("cartesian plane waves are delta functions in momentum") {
  const int n = 16;
  GridSpec g = make_grid(GridKind::cartesian_3d, {n, n, n}, {8.0}, true, 1);
  double p0 = g.momentum(0, 2);
  Wavefunction psi = make_wavefunction(g, Rep::position);
  for_each_position(g, [&](std::size_t flat, const double* x) {
    psi.values[flat] = std::exp(std::complex<double>(0.0, p0 * x[0]));
  });
  normalize(psi);
  Wavefunction mom = transform(psi, Rep::momentum);
  double captured = 0.0, total = 0.0;
  for_each_momentum(g, [&](std::size_t flat, const double* p, bool) {
    double w = std::norm(mom.values[flat]) * g.measure_momentum();
    total += w;
    if (std::abs(p[0] - p0) < 1e-12 && std::abs(p[1]) < 1e-12 && std::abs(p[2]) < 1e-12)
      captured += w;
  });
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(captured == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("h2 norm of a plane wave is the closed-form bracket") {
  const int n = 16;
  GridSpec g = make_grid(GridKind::cartesian_3d, {n, n, n}, {8.0}, true, 1);
  double p0 = g.momentum(0, 3), p1 = g.momentum(1, 1);
  Wavefunction psi = make_wavefunction(g, Rep::position);
  for_each_position(g, [&](std::size_t flat, const double* x) {
    psi.values[flat] = std::exp(std::complex<double>(0.0, p0 * x[0] + p1 * x[1]));
  });
  normalize(psi);
  double p2 = p0 * p0 + p1 * p1;
  CHECK(h2_norm(psi) == doctest::Approx(std::sqrt(1.0 + p2 * p2)).epsilon(1e-12));
}

TEST_CASE("dc handling: projection and inverse momentum symbol") {
  const int n = 8;
  GridSpec g = make_grid(GridKind::cartesian_3d, {n, n, n}, {4.0}, true, 1);
  Wavefunction psi = random_fill(g, Rep::momentum, 9);
  int dc_count = 0;
  for_each_momentum(g, [&](std::size_t, const double*, bool dc) {
    if (dc) ++dc_count;
  });
  CHECK(dc_count == 1);

  Wavefunction proj = psi;
  project_dc_free(proj);
  for_each_momentum(g, [&](std::size_t flat, const double*, bool dc) {
    if (dc) CHECK(std::abs(proj.values[flat]) == 0.0);
  });

  Wavefunction inv = apply_multiplier(inverse_momentum_multiplier(), proj);
  for_each_momentum(g, [&](std::size_t flat, const double* p, bool dc) {
    if (dc) {
      CHECK(std::abs(inv.values[flat]) == 0.0);
    } else {
      double plen = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      CHECK(std::abs(inv.values[flat] - proj.values[flat] / plen) < 1e-13);
    }
  });
}

TEST_CASE("symbol sampling rejects non-finite values away from dc") {
  GridSpec g = make_grid(GridKind::cartesian_3d, {8, 8, 8}, {4.0}, true, 1);
  FourierMultiplier bad;
  bad.symbol = [](const double* p, int) { return 1.0 / (p[0] - p[0]); };  // NaN everywhere
  CHECK_THROWS_AS(sample_symbol(bad, g), std::domain_error);
}

TEST_CASE("norms use the lattice measures") {
  GridSpec g = make_grid(GridKind::radial_1d, {128}, {10.0}, true, 1);
  Wavefunction psi = make_wavefunction(g, Rep::position);
  for (auto& v : psi.values) v = 1.0;
  CHECK(norm(psi) == doctest::Approx(std::sqrt(128.0 * g.spacing(0))).epsilon(1e-13));
}
