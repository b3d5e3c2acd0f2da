#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trotterlab/grid.hpp"

namespace trotterlab {

enum class PotentialKind { zero, coulomb_one_body, coulomb_pairwise, gaussian_well };

struct Potential {
  PotentialKind kind = PotentialKind::zero;
  GridSpec grid;
  std::vector<double> values;
  double c = 0.0;                // one-body coefficient
  std::vector<double> cjk;       // pairwise coefficients, row-major over j < k
  double c0 = 0.0;               // max |c_jk|
  double depth = 0.0, width = 0.0;
  double max_abs() const;
  bool singular() const { return kind == PotentialKind::coulomb_one_body ||
                                 kind == PotentialKind::coulomb_pairwise; }
};

Potential sample_zero(const GridSpec& grid);
Potential sample_coulomb_one_body(double c, const GridSpec& grid);
Potential sample_coulomb_pairwise(const std::vector<double>& cjk, const GridSpec& grid);
Potential sample_gaussian_well(double depth, double width, const GridSpec& grid);

FourierMultiplier kinetic_phase(double t);
FourierMultiplier kinetic_multiplier();  // symbol |p|^2

// pointwise e^{-i t V}
std::vector<std::complex<double>> potential_phase(double t, const Potential& V);
void apply_potential_phase(const std::vector<std::complex<double>>& phase, Wavefunction& psi);

struct DiscreteHamiltonian {
  GridSpec grid;
  Potential pot;
  double solver_tol = 1e-10;
  int krylov_max = 60;
  // radial eigendecomposition cache, filled on first exact propagation
  struct EigCache {
    std::vector<double> eigval;
    std::vector<double> eigvec;  // column-major n x n
  };
  mutable std::shared_ptr<EigCache> eig;
};

DiscreteHamiltonian make_hamiltonian(Potential pot);

Wavefunction hamiltonian_apply(const DiscreteHamiltonian& H, const Wavefunction& psi);
Wavefunction exact_propagator(const DiscreteHamiltonian& H, double t, const Wavefunction& psi);

const DiscreteHamiltonian::EigCache& radial_eigensolve(const DiscreteHamiltonian& H);

// Krylov exponential on non-radial grids, exposed for direct testing
Wavefunction lanczos_expm(const DiscreteHamiltonian& H, double t, const Wavefunction& psi,
                          double tol, int m_max);

// s-wave bookkeeping: psi sampled at radial nodes with the 4 pi r^2 dr measure
struct SWaveProfile {
  GridSpec radial;
  std::vector<std::complex<double>> psi;
};

Wavefunction radial_reduce(const SWaveProfile& profile);       // u = r psi
SWaveProfile radial_expand(const Wavefunction& u);             // psi = u / r
double swave_norm(const SWaveProfile& profile);                // 3-D L2 norm
SWaveProfile swave_profile_from_cartesian(const Wavefunction& psi3d, const GridSpec& radial,
                                          double asym_tol = 1e-8);

}  // namespace trotterlab
