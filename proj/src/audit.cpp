#include "trotterlab/audit.hpp"

#include <cmath>
#include <stdexcept>

namespace trotterlab {

Wavefunction random_state(const GridSpec& grid, double decay, Rng& rng) {
  Wavefunction psi = make_wavefunction(grid, Rep::momentum);
  int na = grid.naxes();
  for_each_momentum(grid, [&](std::size_t flat, const double* p, bool dc) {
    std::complex<double> z = rng.complex_normal();  // drawn unconditionally for stream stability
    if (dc) {
      psi.values[flat] = {0.0, 0.0};
      return;
    }
    double p2 = 0.0;
    for (int a = 0; a < na; ++a) p2 += p[a] * p[a];
    psi.values[flat] = z * std::pow(1.0 + p2, -0.5 * decay);
  });
  normalize(psi);
  return psi;
}

double hardy_ratio(const Wavefunction& f) {
  if (f.grid.kind != GridKind::cartesian_3d || !f.grid.offset_on())
    throw std::invalid_argument("hardy_ratio: offset cartesian-3d grid required");
  double nf = norm(f);
  Wavefunction g = apply_multiplier(inverse_momentum_multiplier(), f);
  Wavefunction gpos = transform(g, Rep::position);
  for_each_position(f.grid, [&](std::size_t flat, const double* x) {
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    gpos.values[flat] /= r;
  });
  return norm(gpos) / nf;
}

double nbody_potential_ratio(const Wavefunction& f, const Potential& pairwise) {
  if (pairwise.kind != PotentialKind::coulomb_pairwise)
    throw std::invalid_argument("nbody_potential_ratio: pairwise Coulomb potential required");
  double nf = norm(f);
  Wavefunction g = apply_multiplier(inverse_momentum_multiplier(), f);
  Wavefunction gpos = transform(g, Rep::position);
  for (std::size_t i = 0; i < gpos.values.size(); ++i)
    gpos.values[i] *= pairwise.values[i];
  return norm(gpos) / nf;
}

IneqCheck mixed_derivative_ineq(const Wavefunction& g) {
  if (g.grid.kind != GridKind::tensor_3n || g.grid.particles != 2)
    throw std::invalid_argument("mixed_derivative_ineq: two-particle tensor grid required");
  Wavefunction mom = transform(g, Rep::momentum);
  double mu = mom.grid.measure_momentum();
  long double rhs_y = 0.0L, rhs_z = 0.0L;
  long double lhs[3] = {0.0L, 0.0L, 0.0L};
  for_each_momentum(mom.grid, [&](std::size_t flat, const double* p, bool) {
    double eta2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    double zeta2 = p[3] * p[3] + p[4] * p[4] + p[5] * p[5];
    double w = std::norm(mom.values[flat]);
    rhs_y += eta2 * eta2 * w;
    rhs_z += zeta2 * zeta2 * w;
    for (int j = 0; j < 3; ++j) {
      double d = 0.5 * (p[j] - p[3 + j]);
      lhs[j] += eta2 * d * d * w;
    }
  });
  double rhs = static_cast<double>(0.75L * rhs_y + 0.25L * rhs_z) * mu;
  IneqCheck out;
  for (int j = 0; j < 3; ++j) {
    double r = (rhs == 0.0) ? 0.0 : static_cast<double>(lhs[j]) * mu / rhs;
    out.ratio = std::max(out.ratio, r);
  }
  out.pass = out.ratio <= 1.0 + 1e-12;
  return out;
}

IneqCheck momentum_counting(const Wavefunction& f, int N) {
  if (f.grid.kind != GridKind::tensor_3n || f.grid.particles != N)
    throw std::invalid_argument("momentum_counting: tensor grid with matching N required");
  Wavefunction mom = transform(f, Rep::momentum);
  double mu = mom.grid.measure_momentum();
  std::vector<long double> pj2sum(N, 0.0L);
  long double nrm2 = 0.0L, lap2 = 0.0L;
  for_each_momentum(mom.grid, [&](std::size_t flat, const double* p, bool) {
    double w = std::norm(mom.values[flat]);
    nrm2 += w;
    double tot = 0.0;
    for (int j = 0; j < N; ++j) {
      double pj2 = 0.0;
      for (int a = 0; a < 3; ++a) pj2 += p[3 * j + a] * p[3 * j + a];
      double bracket = 1.0 + pj2;
      pj2sum[j] += bracket * bracket * w;
      tot += pj2;
    }
    lap2 += tot * tot * w;
  });
  double lhs = 0.0;
  for (int j = 0; j < N; ++j)
    lhs += std::sqrt(static_cast<double>(pj2sum[j]) * mu);
  lhs *= (N - 1);
  double nf = std::sqrt(static_cast<double>(nrm2) * mu);
  double lap = std::sqrt(static_cast<double>(lap2) * mu);
  double rhs = (N - 1) * std::pow(N, 1.5) * nf + (N - 1) * std::sqrt(double(N)) * lap;
  IneqCheck out;
  out.ratio = (rhs == 0.0) ? 0.0 : lhs / rhs;
  out.pass = out.ratio <= 1.0 + 1e-12;
  return out;
}

double sobolev_embedding_ratio(const Wavefunction& f) {
  if (f.grid.kind != GridKind::cartesian_3d)
    throw std::invalid_argument("sobolev_embedding_ratio: cartesian-3d grid required");
  Wavefunction pos = transform(f, Rep::position);
  double sup = 0.0;
  for (const auto& v : pos.values) sup = std::max(sup, std::abs(v));
  Wavefunction mom = transform(f, Rep::momentum);
  double mu = mom.grid.measure_momentum();
  long double s = 0.0L;
  for_each_momentum(mom.grid, [&](std::size_t flat, const double* p, bool) {
    double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    double bracket = 1.0 + p2;
    s += bracket * bracket * std::norm(mom.values[flat]);
  });
  return sup / std::sqrt(static_cast<double>(s) * mu);
}

double y_weight_l2_norm() {
  // int_0^inf 4 pi r^2 (1+r^2)^{-2} dr via r = tan(theta)
  double val = adaptive_simpson(
      [](double th) {
        double t = std::tan(th);
        double c = std::cos(th);
        return 4.0 * M_PI * t * t / ((1.0 + t * t) * (1.0 + t * t)) / (c * c);
      },
      0.0, M_PI / 2.0 - 1e-12, 1e-12);
  return std::sqrt(val);
}

double power_iteration_opnorm(const Potential& pairwise, int iters, std::uint64_t seed) {
  Rng rng(seed);
  Wavefunction v = random_state(pairwise.grid, 2.0, rng);
  FourierMultiplier invp = inverse_momentum_multiplier();
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    Wavefunction g = transform(apply_multiplier(invp, v), Rep::position);
    for (std::size_t i = 0; i < g.values.size(); ++i)
      g.values[i] *= pairwise.values[i] * pairwise.values[i];
    Wavefunction w = apply_multiplier(invp, g);
    lam = norm(w);
    if (lam == 0.0) return 0.0;
    w = transform(w, Rep::position);
    for (auto& x : w.values) x /= lam;
    v = std::move(w);
  }
  return std::sqrt(lam);
}

namespace {

AuditRow judge(const std::string& name, int sample, double ratio, double bound,
               double margin) {
  AuditRow row;
  row.audit = name;
  row.sample = sample;
  row.ratio = ratio;
  row.bound = bound;
  row.margin = margin;
  double hard = bound * std::max(margin, 1.05);
  row.pass = ratio <= hard;
  row.warn = row.pass && ratio > bound * margin;
  return row;
}

}  // namespace

std::vector<AuditRow> hardy_audit(const AuditConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<AuditRow> rows;
  for (int i = 0; i < cfg.samples; ++i) {
    Wavefunction f = random_state(cfg.grid, cfg.spectral_decay, rng);
    rows.push_back(judge("hardy", i, hardy_ratio(f), 2.0, cfg.margin));
  }
  return rows;
}

std::vector<AuditRow> sobolev_audit(const AuditConfig& cfg) {
  Rng rng(cfg.seed + 1);
  std::vector<AuditRow> rows;
  double bound = 1.0 / (2.0 * std::sqrt(M_PI));
  for (int i = 0; i < cfg.samples; ++i) {
    Wavefunction f = random_state(cfg.grid, cfg.spectral_decay, rng);
    rows.push_back(judge("sobolev", i, sobolev_embedding_ratio(f), bound, cfg.margin));
  }
  return rows;
}

std::vector<AuditRow> mixed_derivative_audit(const AuditConfig& cfg) {
  Rng rng(cfg.seed + 2);
  std::vector<AuditRow> rows;
  for (int i = 0; i < cfg.samples; ++i) {
    Wavefunction g = random_state(cfg.grid, cfg.spectral_decay, rng);
    IneqCheck c = mixed_derivative_ineq(g);
    AuditRow row = judge("mixed_derivative", i, c.ratio, 1.0, 1.0);
    row.pass = c.pass;
    row.warn = false;
    rows.push_back(row);
  }
  return rows;
}

std::vector<AuditRow> momentum_counting_audit(const AuditConfig& cfg) {
  Rng rng(cfg.seed + 3);
  std::vector<AuditRow> rows;
  for (int i = 0; i < cfg.samples; ++i) {
    Wavefunction f = random_state(cfg.grid, cfg.spectral_decay, rng);
    IneqCheck c = momentum_counting(f, cfg.grid.particles);
    AuditRow row = judge("momentum_counting", i, c.ratio, 1.0, 1.0);
    row.pass = c.pass;
    row.warn = false;
    rows.push_back(row);
  }
  return rows;
}

std::vector<AuditRow> nbody_audit(const AuditConfig& cfg, const std::vector<double>& cjk) {
  Rng rng(cfg.seed + 4);
  Potential V = sample_coulomb_pairwise(cjk, cfg.grid);
  int N = cfg.grid.particles;
  double bound = 2.0 * V.c0 * std::pow(N, 1.5);
  std::vector<AuditRow> rows;
  for (int i = 0; i < cfg.samples; ++i) {
    Wavefunction f = random_state(cfg.grid, cfg.spectral_decay, rng);
    rows.push_back(judge("nbody_potential", i, nbody_potential_ratio(f, V), bound, cfg.margin));
  }
  return rows;
}

}  // namespace trotterlab
