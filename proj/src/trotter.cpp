#include "trotterlab/trotter.hpp"

#include <cmath>
#include <stdexcept>

#include "trotterlab/numerics.hpp"

namespace trotterlab {

TrotterPlan make_plan(const DiscreteHamiltonian& H, double T, int L, bool reversed) {
  if (L < 1) throw std::invalid_argument("make_plan: L must be >= 1");
  if (T < 0) throw std::invalid_argument("make_plan: T must be >= 0");
  TrotterPlan p;
  p.H = &H;
  p.T = T;
  p.L = L;
  p.reversed = reversed;
  return p;
}

namespace {

struct StepKernel {
  std::vector<std::complex<double>> kin;  // momentum factors for one step
  std::vector<std::complex<double>> pot;  // position factors for one step
};

StepKernel make_kernel(const DiscreteHamiltonian& H, double t) {
  StepKernel k;
  k.kin = sample_symbol(kinetic_phase(t), H.grid);
  k.pot = potential_phase(t, H.pot);
  return k;
}

Wavefunction apply_kernel(const StepKernel& k, const TrotterPlan& plan,
                          const Wavefunction& psi) {
  Wavefunction cur = transform(psi, Rep::position);
  if (plan.reversed) {
    for (std::size_t i = 0; i < cur.values.size(); ++i) cur.values[i] *= k.pot[i];
    cur = transform(cur, Rep::momentum);
    apply_sampled_momentum(k.kin, cur);
    return transform(cur, Rep::position);
  }
  cur = transform(cur, Rep::momentum);
  apply_sampled_momentum(k.kin, cur);
  cur = transform(cur, Rep::position);
  for (std::size_t i = 0; i < cur.values.size(); ++i) cur.values[i] *= k.pot[i];
  return cur;
}

}  // namespace

Wavefunction lie_trotter_step(const TrotterPlan& plan, const Wavefunction& psi) {
  StepKernel k = make_kernel(*plan.H, plan.step());
  return apply_kernel(k, plan, psi);
}

Wavefunction evolve(const TrotterPlan& plan, const Wavefunction& psi0, EvolveTrace* trace) {
  StepKernel k = make_kernel(*plan.H, plan.step());
  Wavefunction cur = transform(psi0, Rep::position);
  if (trace) {
    trace->norms.push_back(norm(cur));
    trace->h2.push_back(h2_norm(cur));
  }
  for (int step = 0; step < plan.L; ++step) {
    cur = apply_kernel(k, plan, cur);
    if (trace) {
      trace->norms.push_back(norm(cur));
      trace->h2.push_back(h2_norm(cur));
    }
  }
  if (psi0.rep == Rep::momentum) return transform(cur, Rep::momentum);
  return cur;
}

double global_error(const TrotterPlan& plan, const Wavefunction& psi0) {
  if (plan.T == 0) return 0.0;
  Wavefunction approx = evolve(plan, psi0, nullptr);
  Wavefunction exact = exact_propagator(*plan.H, plan.T, psi0);
  Wavefunction ea = transform(approx, Rep::position);
  Wavefunction ee = transform(exact, Rep::position);
  return diff_norm(ea, ee);
}

double local_error(const DiscreteHamiltonian& H, double t, const Wavefunction& psi0) {
  if (t == 0) return 0.0;
  TrotterPlan plan = make_plan(H, t, 1);
  Wavefunction approx = lie_trotter_step(plan, psi0);
  Wavefunction exact = exact_propagator(H, t, psi0);
  Wavefunction ea = transform(approx, Rep::position);
  Wavefunction ee = transform(exact, Rep::position);
  return diff_norm(ea, ee);
}

std::pair<Wavefunction, double> commutator_action(const DiscreteHamiltonian& H, double s,
                                                  const Wavefunction& psi) {
  Wavefunction pos = transform(psi, Rep::position);
  // e^{-isA}(B psi)
  Wavefunction bpsi = pos;
  for (std::size_t i = 0; i < bpsi.values.size(); ++i) bpsi.values[i] *= H.pot.values[i];
  Wavefunction left = apply_multiplier(kinetic_phase(s), bpsi);
  // B(e^{-isA} psi)
  Wavefunction right = apply_multiplier(kinetic_phase(s), pos);
  for (std::size_t i = 0; i < right.values.size(); ++i) right.values[i] *= H.pot.values[i];
  for (std::size_t i = 0; i < left.values.size(); ++i) left.values[i] -= right.values[i];
  double n = norm(left);
  return {std::move(left), n};
}

Wavefunction splitting_defect(const DiscreteHamiltonian& H, double t, const Wavefunction& psi0) {
  TrotterPlan plan = make_plan(H, t, 1);
  Wavefunction approx = transform(lie_trotter_step(plan, psi0), Rep::position);
  Wavefunction exact = transform(exact_propagator(H, t, psi0), Rep::position);
  for (std::size_t i = 0; i < approx.values.size(); ++i)
    approx.values[i] -= exact.values[i];
  return approx;
}

Wavefunction error_representation_quadrature(const DiscreteHamiltonian& H, double t,
                                             const Wavefunction& psi0, int nodes) {
  if (nodes < 4)
    throw std::invalid_argument("error_representation_quadrature: need >= 4 nodes");
  Wavefunction acc = make_wavefunction(H.grid, Rep::position);
  if (t == 0) return acc;
  Quadrature q = gauss_legendre(nodes, 0.0, t);
  for (int k = 0; k < nodes; ++k) {
    double s = q.nodes[k];
    Wavefunction chi = exact_propagator(H, t - s, transform(psi0, Rep::position));
    Wavefunction comm = commutator_action(H, s, chi).first;
    auto phase = potential_phase(s, H.pot);
    apply_potential_phase(phase, comm);
    std::complex<double> w(0.0, q.weights[k]);  // leading factor i
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * comm.values[i];
  }
  return acc;
}

}  // namespace trotterlab
