#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "trotterlab/operators.hpp"

namespace trotterlab {

namespace {

struct KrylovStep {
  std::vector<Wavefunction> basis;
  std::vector<double> alpha, beta;  // tridiagonal entries, beta[j] couples j and j+1
  double next_beta = 0.0;
  bool breakdown = false;
};

KrylovStep build_krylov(const DiscreteHamiltonian& H, const Wavefunction& v0, int m) {
  KrylovStep k;
  k.basis.reserve(m);
  k.basis.push_back(v0);
  for (int j = 0; j < m; ++j) {
    Wavefunction w = hamiltonian_apply(H, k.basis[j]);
    double a = inner(k.basis[j], w).real();
    k.alpha.push_back(a);
    for (std::size_t i = 0; i < w.values.size(); ++i)
      w.values[i] -= a * k.basis[j].values[i];
    if (j > 0)
      for (std::size_t i = 0; i < w.values.size(); ++i)
        w.values[i] -= k.beta[j - 1] * k.basis[j - 1].values[i];
    // full reorthogonalization keeps the tridiagonal honest at 1e-10 targets
    for (const auto& q : k.basis) {
      std::complex<double> c = inner(q, w);
      for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] -= c * q.values[i];
    }
    double b = norm(w);
    if (b < 1e-14) {
      k.breakdown = true;
      k.next_beta = 0.0;
      return k;
    }
    if (j + 1 < m) {
      k.beta.push_back(b);
      for (auto& v : w.values) v /= b;
      k.basis.push_back(std::move(w));
    } else {
      k.next_beta = b;
    }
  }
  return k;
}

// coefficients of e^{-i dt T} e_1 in the Krylov basis
std::vector<std::complex<double>> expm_tridiag(const std::vector<double>& alpha,
                                               const std::vector<double>& beta, double dt) {
  int m = static_cast<int>(alpha.size());
  std::vector<double> d = alpha, e = beta;
  std::vector<double> z(static_cast<std::size_t>(m) * m, 0.0);
  int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', m, d.data(), e.data(), z.data(), m);
  if (info != 0) throw std::runtime_error("lanczos_expm: tridiagonal eigensolve failed");
  std::vector<std::complex<double>> coef(m, {0.0, 0.0});
  for (int j = 0; j < m; ++j) {
    std::complex<double> ph = std::exp(std::complex<double>(0.0, -dt * d[j]));
    double z0 = z[static_cast<std::size_t>(j) * m];
    for (int i = 0; i < m; ++i)
      coef[i] += z[static_cast<std::size_t>(j) * m + i] * ph * z0;
  }
  return coef;
}

}  // namespace

Wavefunction lanczos_expm(const DiscreteHamiltonian& H, double t, const Wavefunction& psi,
                          double tol, int m_max) {
  Wavefunction state = transform(psi, Rep::position);
  double nrm = norm(state);
  if (nrm == 0 || t == 0) return state;
  double remaining = std::abs(t);
  double sign = (t >= 0) ? 1.0 : -1.0;
  int guard = 0;
  while (remaining > 1e-15) {
    Wavefunction v0 = state;
    double step_nrm = norm(v0);
    for (auto& v : v0.values) v /= step_nrm;
    KrylovStep k = build_krylov(H, v0, m_max);
    double dt = remaining;
    int m = static_cast<int>(k.alpha.size());
    std::vector<std::complex<double>> coef;
    while (true) {
      coef = expm_tridiag(k.alpha, k.beta, sign * dt);
      double err = k.breakdown ? 0.0 : k.next_beta * std::abs(coef[m - 1]) * dt;
      if (err <= tol * std::max(1.0, std::abs(t)) || dt < 1e-12) break;
      dt *= 0.5;
    }
    Wavefunction next = make_wavefunction(state.grid, Rep::position);
    for (int j = 0; j < m; ++j) {
      std::complex<double> c = coef[j] * step_nrm;
      for (std::size_t i = 0; i < next.values.size(); ++i)
        next.values[i] += c * k.basis[j].values[i];
    }
    state = std::move(next);
    remaining -= dt;
    if (++guard > 10000) throw std::runtime_error("lanczos_expm: substep limit exceeded");
  }
  if (psi.rep == Rep::momentum) return transform(state, Rep::momentum);
  return state;
}

}  // namespace trotterlab
