#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trotterlab/numerics.hpp"
#include "trotterlab/trotter.hpp"

using namespace trotterlab;

namespace {

Wavefunction gaussian_on(const GridSpec& g, double sigma) {
  Wavefunction psi = make_wavefunction(g, Rep::position);
  for_each_position(g, [&](std::size_t flat, const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < g.naxes(); ++a) r2 += x[a] * x[a];
    psi.values[flat] = std::exp(-r2 / (2.0 * sigma * sigma));
  });
  normalize(psi);
  return psi;
}

struct SmoothFixture {
  GridSpec g = make_grid(GridKind::radial_1d, {256}, {20.0}, true, 1);
  Potential V = sample_gaussian_well(5.0, 2.0, g);
  DiscreteHamiltonian H = make_hamiltonian(V);
  Wavefunction psi0 = make_wavefunction(g, Rep::position);
  SmoothFixture() {
    for (int i = 0; i < 256; ++i) {
      double r = g.position(0, i);
      psi0.values[i] = r * std::exp(-(r - 5.0) * (r - 5.0));
    }
    normalize(psi0);
  }
};

}  // namespace

TEST_CASE("evolve is the composition of single steps") {
  SmoothFixture fx;
  TrotterPlan plan = make_plan(fx.H, 0.8, 4);
  Wavefunction manual = fx.psi0;
  for (int k = 0; k < 4; ++k) manual = lie_trotter_step(plan, manual);
  EvolveTrace trace;
  Wavefunction composed = evolve(plan, fx.psi0, &trace);
  CHECK(diff_norm(manual, composed) < 1e-13);
  CHECK(trace.norms.size() == 5);
  CHECK(trace.h2.size() == 5);
  for (double n : trace.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero potential makes the splitting exact") {
  GridSpec g = make_grid(GridKind::cartesian_3d, {16, 16, 16}, {8.0}, true, 1);
  Potential V = sample_zero(g);
  DiscreteHamiltonian H = make_hamiltonian(V);
  Wavefunction psi0 = gaussian_on(g, 1.0);
  CHECK(global_error(make_plan(H, 0.5, 3), psi0) < 1e-9);
  CHECK(norm(splitting_defect(H, 0.25, psi0)) < 1e-9);
}

TEST_CASE("degenerate parameters give zero error") {
  SmoothFixture fx;
  CHECK(global_error(make_plan(fx.H, 0.0, 1), fx.psi0) < 1e-13);
  CHECK(local_error(fx.H, 0.0, fx.psi0) < 1e-13);
}

TEST_CASE("reversed ordering changes the step but not the magnitude class") {
  SmoothFixture fx;
  TrotterPlan fwd = make_plan(fx.H, 0.2, 1);
  TrotterPlan rev = make_plan(fx.H, 0.2, 1, true);
  Wavefunction a = lie_trotter_step(fwd, fx.psi0);
  Wavefunction b = lie_trotter_step(rev, fx.psi0);
  CHECK(diff_norm(a, b) > 1e-6);
  CHECK(norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("smooth local error scales like t^2") {
  SmoothFixture fx;
  double r1 = local_error(fx.H, 0.08, fx.psi0) / (0.08 * 0.08);
  double r2 = local_error(fx.H, 0.04, fx.psi0) / (0.04 * 0.04);
  double r3 = local_error(fx.H, 0.02, fx.psi0) / (0.02 * 0.02);
  CHECK(r2 == doctest::Approx(r1).epsilon(0.15));
  CHECK(r3 == doctest::Approx(r2).epsilon(0.15));
  CHECK(r3 > 1e-6);  // genuinely second order, not exact
}

TEST_CASE("commutator action matches a finite difference of conjugated phases") {
  SmoothFixture fx;
  auto [comm, weight] = commutator_action(fx.H, 0.05, fx.psi0);
  CHECK(weight >= 0.0);
  CHECK(norm(comm) > 0.0);
  // [e^{-isA}, B] psi = e^{-isA}(B psi) - B(e^{-isA} psi)
  Wavefunction bpsi = fx.psi0;
  for (int i = 0; i < 256; ++i) bpsi.values[i] *= fx.V.values[i];
  Wavefunction left = apply_multiplier(kinetic_phase(0.05), bpsi);
  Wavefunction right = apply_multiplier(kinetic_phase(0.05), fx.psi0);
  right = transform(right, Rep::position);
  for (int i = 0; i < 256; ++i) right.values[i] *= fx.V.values[i];
  Wavefunction explicit_comm = transform(left, Rep::position);
  for (int i = 0; i < 256; ++i) explicit_comm.values[i] -= right.values[i];
  CHECK(diff_norm(comm, explicit_comm) < 1e-11);
}

TEST_CASE("quadrature reproduces the defect on a smooth problem") {
  SmoothFixture fx;
  double t = 0.1;
  Wavefunction defect = splitting_defect(fx.H, t, fx.psi0);
  Wavefunction quad = error_representation_quadrature(fx.H, t, fx.psi0, 16);
  Wavefunction d_pos = transform(defect, Rep::position);
  Wavefunction q_pos = transform(quad, Rep::position);
  double rel = diff_norm(d_pos, q_pos) / norm(d_pos);
  CHECK(rel < 1e-6);
  CHECK(norm(d_pos) > 1e-8);  // the comparison is not vacuous
}

TEST_CASE("quadrature argument validation") {
  SmoothFixture fx;
  CHECK_THROWS_AS(error_representation_quadrature(fx.H, 0.1, fx.psi0, 3), std::invalid_argument);
  Wavefunction zero_t = error_representation_quadrature(fx.H, 0.0, fx.psi0, 8);
  CHECK(norm(zero_t) < 1e-13);
}

TEST_CASE("defect is the direct difference of the two propagators") {
  SmoothFixture fx;
  double t = 0.07;
  Wavefunction defect = splitting_defect(fx.H, t, fx.psi0);
  TrotterPlan one = make_plan(fx.H, t, 1);
  Wavefunction u1 = lie_trotter_step(one, fx.psi0);
  Wavefunction uref = exact_propagator(fx.H, t, fx.psi0);
  Wavefunction manual = transform(u1, Rep::position);
  Wavefunction uref_pos = transform(uref, Rep::position);
  for (std::size_t i = 0; i < manual.values.size(); ++i)
    manual.values[i] -= uref_pos.values[i];
  CHECK(diff_norm(transform(defect, Rep::position), manual) < 1e-12);
}

TEST_CASE("global error shrinks when the step does") {
  SmoothFixture fx;
  double e_coarse = global_error(make_plan(fx.H, 0.5, 2), fx.psi0);
  double e_fine = global_error(make_plan(fx.H, 0.5, 16), fx.psi0);
  CHECK(e_fine < e_coarse);
  CHECK(e_coarse < 1.0);
}
