#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trotterlab/audit.hpp"

using namespace trotterlab;

namespace {

GridSpec cart16() { return make_grid(GridKind::cartesian_3d, {16, 16, 16}, {8.0}, true, 1); }
GridSpec pair4() { return make_grid(GridKind::tensor_3n, {4}, {5.0}, true, 2); }

// single momentum mode with particle momenta (t,t,t) and (-t,-t,-t)
Wavefunction opposite_pair_mode(const GridSpec& g) {
  Wavefunction psi = make_wavefunction(g, Rep::momentum);
  double t = 2.0 * M_PI / (g.dims[0] * g.spacing(0));
  bool found = false;
  for_each_momentum(g, [&](std::size_t flat, const double* p, bool) {
    bool hit = true;
    for (int a = 0; a < 3; ++a) hit = hit && std::abs(p[a] - t) < 1e-9;
    for (int a = 3; a < 6; ++a) hit = hit && std::abs(p[a] + t) < 1e-9;
    if (hit) {
      psi.values[flat] = 1.0;
      found = true;
    }
  });
  REQUIRE(found);
  return psi;
}

}  // namespace

TEST_CASE("random states are normalized, dc-free and reproducible") {
  GridSpec g = cart16();
  Rng a(5), b(5);
  Wavefunction fa = random_state(g, 4.0, a);
  Wavefunction fb = random_state(g, 4.0, b);
  CHECK(norm(fa) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fa.values[0]) == 0.0);  // flat 0 is the zero mode in momentum rep
  CHECK(fa.rep == Rep::momentum);
  double maxdiff = 0.0;
  for (std::size_t i = 0; i < fa.values.size(); ++i)
    maxdiff = std::max(maxdiff, std::abs(fa.values[i] - fb.values[i]));
  CHECK(maxdiff == 0.0);

  Rng c(5), d(5);
  double rough = h2_norm(random_state(g, 2.0, c));
  double smoothed = h2_norm(random_state(g, 6.0, d));
  CHECK(smoothed < rough);
}

TEST_CASE("hardy ratio needs an origin-avoiding grid") {
  GridSpec centered = make_grid(GridKind::cartesian_3d, {16, 16, 16}, {8.0}, false, 1);
  Rng rng(2);
  Wavefunction f = random_state(centered, 4.0, rng);
  CHECK_THROWS_AS(hardy_ratio(f), std::invalid_argument);

  GridSpec radial = make_grid(GridKind::radial_1d, {64}, {10.0}, true, 1);
  Wavefunction u = make_wavefunction(radial, Rep::position);
  u.values[3] = 1.0;
  CHECK_THROWS_AS(hardy_ratio(u), std::invalid_argument);
}

TEST_CASE("hardy ratios sit far below the constant 2") {
  GridSpec g = cart16();
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    worst = std::max(worst, hardy_ratio(random_state(g, 4.0, rng)));
  CHECK(worst < 2.0);
  CHECK(worst > 0.01);
}

TEST_CASE("sobolev embedding ratios respect 1/(2 sqrt pi)") {
  GridSpec g = cart16();
  Rng rng(9);
  double bound = 1.0 / (2.0 * std::sqrt(M_PI));
  for (int i = 0; i < 20; ++i) {
    double r = sobolev_embedding_ratio(random_state(g, 4.0, rng));
    CHECK(r < bound);
    CHECK(r > 0.0);
  }
  Wavefunction t = make_wavefunction(pair4(), Rep::momentum);
  CHECK_THROWS_AS(sobolev_embedding_ratio(t), std::invalid_argument);
}

TEST_CASE("weight function norm is pi") {
  CHECK(y_weight_l2_norm() == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("mixed derivative inequality on hand-built modes") {
  GridSpec g = pair4();
  Wavefunction opp = opposite_pair_mode(g);
  IneqCheck c = mixed_derivative_ineq(opp);
  CHECK(c.ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(c.pass);

  // equal momenta make the relative momentum vanish
  Wavefunction sym = make_wavefunction(g, Rep::momentum);
  double t = 2.0 * M_PI / (g.dims[0] * g.spacing(0));
  for_each_momentum(g, [&](std::size_t flat, const double* p, bool) {
    bool hit = true;
    for (int a = 0; a < 6; ++a) hit = hit && std::abs(p[a] - t) < 1e-9;
    if (hit) sym.values[flat] = 1.0;
  });
  CHECK(mixed_derivative_ineq(sym).ratio == 0.0);

  Rng rng(13);
  Wavefunction c16 = random_state(cart16(), 4.0, rng);
  CHECK_THROWS_AS(mixed_derivative_ineq(c16), std::invalid_argument);
}

TEST_CASE("mixed derivative inequality on random states") {
  GridSpec g = pair4();
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    IneqCheck c = mixed_derivative_ineq(random_state(g, 4.0, rng));
    CHECK(c.pass);
    CHECK(c.ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("momentum counting collapses to 1/sqrt(N) on a single mode") {
  GridSpec g = pair4();
  Wavefunction mode = opposite_pair_mode(g);
  IneqCheck c = momentum_counting(mode, 2);
  CHECK(c.ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(c.pass);
  CHECK_THROWS_AS(momentum_counting(mode, 3), std::invalid_argument);

  Rng rng(19);
  for (int i = 0; i < 20; ++i) {
    IneqCheck r = momentum_counting(random_state(g, 4.0, rng), 2);
    CHECK(r.pass);
  }
}

TEST_CASE("pairwise potential ratios stay under the counting bound") {
  GridSpec g = pair4();
  Potential V = sample_coulomb_pairwise({1.0}, g);
  double bound = 2.0 * 1.0 * std::pow(2.0, 1.5);
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    double r = nbody_potential_ratio(random_state(g, 4.0, rng), V);
    CHECK(r > 0.0);
    CHECK(r <= bound);
  }
  Potential W = sample_gaussian_well(1.0, 1.0, g);
  Wavefunction f = random_state(g, 4.0, rng);
  CHECK_THROWS_AS(nbody_potential_ratio(f, W), std::invalid_argument);
}

TEST_CASE("power iteration is deterministic and bounded") {
  GridSpec g = pair4();
  Potential V = sample_coulomb_pairwise({1.0}, g);
  double a = power_iteration_opnorm(V, 12, 99);
  double b = power_iteration_opnorm(V, 12, 99);
  CHECK(a == b);
  CHECK(a > 0.01);
  CHECK(a <= 2.0 * std::pow(2.0, 1.5) + 1e-9);
}

TEST_CASE("audit drivers fill rows with consistent verdicts") {
  AuditConfig cc;
  cc.seed = 11;
  cc.samples = 10;
  cc.grid = cart16();
  cc.spectral_decay = 4.0;
  cc.margin = 1.05;

  auto hardy = hardy_audit(cc);
  CHECK(hardy.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(hardy[i].audit == "hardy");
    CHECK(hardy[i].sample == i);
    CHECK(hardy[i].bound == 2.0);
    CHECK(hardy[i].margin == 1.05);
    CHECK(hardy[i].pass);
    CHECK_FALSE(hardy[i].warn);
  }

  auto sob = sobolev_audit(cc);
  CHECK(sob.size() == 10);
  for (const auto& row : sob) {
    CHECK(row.bound == doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))));
    CHECK(row.pass);
  }

  AuditConfig tc = cc;
  tc.grid = pair4();
  auto mixed = mixed_derivative_audit(tc);
  auto momentum = momentum_counting_audit(tc);
  for (const auto& row : mixed) {
    CHECK(row.bound == 1.0);
    CHECK(row.margin == 1.0);
    CHECK(row.pass);
    CHECK_FALSE(row.warn);
  }
  for (const auto& row : momentum) CHECK(row.pass);

  auto nb = nbody_audit(tc, {1.5});
  for (const auto& row : nb) {
    CHECK(row.bound == doctest::Approx(3.0 * std::pow(2.0, 1.5)));
    CHECK(row.pass);
  }
}
