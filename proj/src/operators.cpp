#include "trotterlab/operators.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace trotterlab {

double Potential::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

Potential sample_zero(const GridSpec& grid) {
  Potential V;
  V.kind = PotentialKind::zero;
  V.grid = grid;
  V.values.assign(grid.total(), 0.0);
  return V;
}

Potential sample_coulomb_one_body(double c, const GridSpec& grid) {
  if (grid.kind == GridKind::tensor_3n)
    throw std::invalid_argument("sample_coulomb_one_body: use the pairwise sampler on tensor grids");
  if (!grid.offset_on())
    throw std::invalid_argument("sample_coulomb_one_body: grid must be origin-offset");
  Potential V;
  V.kind = PotentialKind::coulomb_one_body;
  V.grid = grid;
  V.c = c;
  V.values.resize(grid.total());
  int na = grid.naxes();
  for_each_position(grid, [&](std::size_t flat, const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < na; ++a) r2 += x[a] * x[a];
    V.values[flat] = c / std::sqrt(r2);
  });
  return V;
}

Potential sample_coulomb_pairwise(const std::vector<double>& cjk, const GridSpec& grid) {
  if (grid.kind != GridKind::tensor_3n)
    throw std::invalid_argument("sample_coulomb_pairwise: tensor-3N grid required");
  int N = grid.particles;
  std::size_t npairs = static_cast<std::size_t>(N) * (N - 1) / 2;
  if (cjk.size() != npairs)
    throw std::invalid_argument("sample_coulomb_pairwise: need one coefficient per pair j<k");
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k)
      if (grid.offsets[3 * j] == grid.offsets[3 * k])
        throw std::invalid_argument("sample_coulomb_pairwise: particle pair coincides at samples");
  Potential V;
  V.kind = PotentialKind::coulomb_pairwise;
  V.grid = grid;
  V.cjk = cjk;
  for (double c : cjk) V.c0 = std::max(V.c0, std::abs(c));
  V.values.resize(grid.total());
  for_each_position(grid, [&](std::size_t flat, const double* x) {
    double sum = 0.0;
    std::size_t pair = 0;
    for (int j = 0; j < N; ++j) {
      for (int k = j + 1; k < N; ++k, ++pair) {
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          double d = x[3 * j + a] - x[3 * k + a];
          d2 += d * d;
        }
        sum += cjk[pair] / std::sqrt(d2);
      }
    }
    V.values[flat] = sum;
  });
  return V;
}

Potential sample_gaussian_well(double depth, double width, const GridSpec& grid) {
  if (width <= 0) throw std::invalid_argument("sample_gaussian_well: width must be positive");
  Potential V;
  V.kind = PotentialKind::gaussian_well;
  V.grid = grid;
  V.depth = depth;
  V.width = width;
  V.values.resize(grid.total());
  int na = grid.naxes();
  for_each_position(grid, [&](std::size_t flat, const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < na; ++a) r2 += x[a] * x[a];
    V.values[flat] = -depth * std::exp(-r2 / (width * width));
  });
  return V;
}

FourierMultiplier kinetic_multiplier() {
  FourierMultiplier m;
  m.symbol = [](const double* p, int na) {
    double p2 = 0.0;
    for (int a = 0; a < na; ++a) p2 += p[a] * p[a];
    return std::complex<double>(p2, 0.0);
  };
  return m;
}

FourierMultiplier kinetic_phase(double t) {
  FourierMultiplier m;
  m.symbol = [t](const double* p, int na) {
    double p2 = 0.0;
    for (int a = 0; a < na; ++a) p2 += p[a] * p[a];
    return std::exp(std::complex<double>(0.0, -t * p2));
  };
  return m;
}

std::vector<std::complex<double>> potential_phase(double t, const Potential& V) {
  std::vector<std::complex<double>> phase(V.values.size());
  for (std::size_t i = 0; i < V.values.size(); ++i)
    phase[i] = std::exp(std::complex<double>(0.0, -t * V.values[i]));
  return phase;
}

void apply_potential_phase(const std::vector<std::complex<double>>& phase, Wavefunction& psi) {
  if (psi.rep != Rep::position)
    throw std::invalid_argument("apply_potential_phase: position rep required");
  for (std::size_t i = 0; i < phase.size(); ++i) psi.values[i] *= phase[i];
}

DiscreteHamiltonian make_hamiltonian(Potential pot) {
  DiscreteHamiltonian H;
  H.grid = pot.grid;
  H.pot = std::move(pot);
  return H;
}

Wavefunction hamiltonian_apply(const DiscreteHamiltonian& H, const Wavefunction& psi) {
  Wavefunction kin = apply_multiplier(kinetic_multiplier(), psi);
  Wavefunction pos = transform(psi, Rep::position);
  Wavefunction out = transform(kin, Rep::position);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += H.pot.values[i] * pos.values[i];
  if (psi.rep == Rep::momentum) return transform(out, Rep::momentum);
  return out;
}

const DiscreteHamiltonian::EigCache& radial_eigensolve(const DiscreteHamiltonian& H) {
  if (H.grid.kind != GridKind::radial_1d)
    throw std::invalid_argument("radial_eigensolve: radial grid required");
  if (H.eig) return *H.eig;
  int n = H.grid.dims[0];
  double dr = H.grid.spacing(0);
  auto cache = std::make_shared<DiscreteHamiltonian::EigCache>();
  cache->eigval.resize(n);
  std::vector<double> sub(n - 1, -1.0 / (dr * dr));
  for (int i = 0; i < n; ++i) cache->eigval[i] = 2.0 / (dr * dr) + H.pot.values[i];
  cache->eigvec.assign(static_cast<std::size_t>(n) * n, 0.0);
  int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, cache->eigval.data(), sub.data(),
                            cache->eigvec.data(), n);
  if (info != 0) throw std::runtime_error("radial_eigensolve: dstevd failed");
  H.eig = cache;
  return *H.eig;
}

namespace {

// y += Q op(diag) Q^T x for complex x, via two real mat-vecs per part
Wavefunction radial_spectral_apply(const DiscreteHamiltonian& H, double t,
                                   const Wavefunction& psi) {
  const auto& eig = radial_eigensolve(H);
  int n = H.grid.dims[0];
  std::vector<double> cr(n, 0.0), ci(n, 0.0);
  // coefficients c = Q^T psi
  for (int j = 0; j < n; ++j) {
    const double* q = &eig.eigvec[static_cast<std::size_t>(j) * n];
    double ar = 0.0, ai = 0.0;
    for (int i = 0; i < n; ++i) {
      ar += q[i] * psi.values[i].real();
      ai += q[i] * psi.values[i].imag();
    }
    cr[j] = ar;
    ci[j] = ai;
  }
  Wavefunction out = make_wavefunction(H.grid, Rep::position);
  for (int j = 0; j < n; ++j) {
    double ph = -t * eig.eigval[j];
    double c = std::cos(ph), s = std::sin(ph);
    double re = cr[j] * c - ci[j] * s;
    double im = cr[j] * s + ci[j] * c;
    const double* q = &eig.eigvec[static_cast<std::size_t>(j) * n];
    for (int i = 0; i < n; ++i)
      out.values[i] += std::complex<double>(q[i] * re, q[i] * im);
  }
  return out;
}

}  // namespace

Wavefunction exact_propagator(const DiscreteHamiltonian& H, double t, const Wavefunction& psi) {
  Wavefunction pos = transform(psi, Rep::position);
  Wavefunction out;
  if (H.grid.kind == GridKind::radial_1d) {
    out = radial_spectral_apply(H, t, pos);
  } else {
    out = lanczos_expm(H, t, pos, H.solver_tol, H.krylov_max);
  }
  if (psi.rep == Rep::momentum) return transform(out, Rep::momentum);
  return out;
}

Wavefunction radial_reduce(const SWaveProfile& profile) {
  Wavefunction u = make_wavefunction(profile.radial, Rep::position);
  int n = profile.radial.dims[0];
  for (int i = 0; i < n; ++i) u.values[i] = profile.radial.position(0, i) * profile.psi[i];
  return u;
}

SWaveProfile radial_expand(const Wavefunction& u) {
  if (u.grid.kind != GridKind::radial_1d)
    throw std::invalid_argument("radial_expand: radial wavefunction required");
  SWaveProfile p;
  p.radial = u.grid;
  int n = u.grid.dims[0];
  p.psi.resize(n);
  Wavefunction upos = transform(u, Rep::position);
  for (int i = 0; i < n; ++i) p.psi[i] = upos.values[i] / u.grid.position(0, i);
  return p;
}

double swave_norm(const SWaveProfile& profile) {
  double dr = profile.radial.spacing(0);
  long double s = 0.0L;
  int n = profile.radial.dims[0];
  for (int i = 0; i < n; ++i) {
    double r = profile.radial.position(0, i);
    s += std::norm(profile.psi[i]) * r * r;
  }
  return std::sqrt(static_cast<double>(4.0L * M_PI * s * dr));
}

SWaveProfile swave_profile_from_cartesian(const Wavefunction& psi3d, const GridSpec& radial,
                                          double asym_tol) {
  if (psi3d.grid.kind != GridKind::cartesian_3d)
    throw std::invalid_argument("swave_profile_from_cartesian: cartesian-3d input required");
  Wavefunction pos = transform(psi3d, Rep::position);
  const GridSpec& g = pos.grid;
  // exact shells: the offset lattice radius is determined by an integer key
  std::map<long long, std::pair<std::complex<double>, int>> shells;
  double peak = 0.0;
  for (const auto& v : pos.values) peak = std::max(peak, std::abs(v));
  int n0 = g.dims[0], n1 = g.dims[1], n2 = g.dims[2];
  std::size_t flat = 0;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k, ++flat) {
        long long a = 2 * i + 1 - n0, b = 2 * j + 1 - n1, c = 2 * k + 1 - n2;
        long long key = a * a + b * b + c * c;
        auto& slot = shells[key];
        slot.first += pos.values[flat];
        slot.second += 1;
      }
  flat = 0;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k, ++flat) {
        long long a = 2 * i + 1 - n0, b = 2 * j + 1 - n1, c = 2 * k + 1 - n2;
        long long key = a * a + b * b + c * c;
        const auto& slot = shells.at(key);
        std::complex<double> mean = slot.first / static_cast<double>(slot.second);
        if (std::abs(pos.values[flat] - mean) > asym_tol * peak)
          throw std::invalid_argument("swave_profile_from_cartesian: input is not spherically symmetric");
      }
  double dx = g.spacing(0);
  std::vector<double> radii;
  std::vector<std::complex<double>> means;
  for (const auto& [key, slot] : shells) {
    radii.push_back(0.5 * dx * std::sqrt(static_cast<double>(key)));
    means.push_back(slot.first / static_cast<double>(slot.second));
  }
  SWaveProfile prof;
  prof.radial = radial;
  int nr = radial.dims[0];
  prof.psi.resize(nr);
  for (int i = 0; i < nr; ++i) {
    double r = radial.position(0, i);
    auto hi = std::lower_bound(radii.begin(), radii.end(), r);
    if (hi == radii.begin()) {
      prof.psi[i] = means.front();
    } else if (hi == radii.end()) {
      prof.psi[i] = {0.0, 0.0};
    } else {
      std::size_t iu = static_cast<std::size_t>(hi - radii.begin());
      double w = (r - radii[iu - 1]) / (radii[iu] - radii[iu - 1]);
      prof.psi[i] = (1.0 - w) * means[iu - 1] + w * means[iu];
    }
  }
  return prof;
}

}  // namespace trotterlab
