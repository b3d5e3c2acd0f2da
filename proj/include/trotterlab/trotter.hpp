#pragma once

#include <utility>

#include "trotterlab/operators.hpp"

namespace trotterlab {

struct TrotterPlan {
  const DiscreteHamiltonian* H = nullptr;
  double T = 0.0;
  int L = 1;
  bool reversed = false;  // exploratory e^{-itA} e^{-itB} order
  double step() const { return T / L; }
};

TrotterPlan make_plan(const DiscreteHamiltonian& H, double T, int L, bool reversed = false);

Wavefunction lie_trotter_step(const TrotterPlan& plan, const Wavefunction& psi);

struct EvolveTrace {
  std::vector<double> norms;
  std::vector<double> h2;
};

Wavefunction evolve(const TrotterPlan& plan, const Wavefunction& psi0,
                    EvolveTrace* trace = nullptr);

double global_error(const TrotterPlan& plan, const Wavefunction& psi0);
double local_error(const DiscreteHamiltonian& H, double t, const Wavefunction& psi0);

std::pair<Wavefunction, double> commutator_action(const DiscreteHamiltonian& H, double s,
                                                  const Wavefunction& psi);

Wavefunction error_representation_quadrature(const DiscreteHamiltonian& H, double t,
                                             const Wavefunction& psi0, int nodes);

// U1(t) psi - U(t) psi, the direct side of the representation identity
Wavefunction splitting_defect(const DiscreteHamiltonian& H, double t, const Wavefunction& psi0);

}  // namespace trotterlab
