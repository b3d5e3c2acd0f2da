#include "trotterlab/cutoff.hpp"

#include <cmath>
#include <stdexcept>

#include "trotterlab/numerics.hpp"

namespace trotterlab {

namespace {

double bump(double r) {
  if (r <= 0.5 || r >= 1.0) return 0.0;
  return std::exp(-1.0 / ((r - 0.5) * (1.0 - r)));
}

double gfun(double lam) { return 1.0 / ((lam - 0.5) * (1.0 - lam)); }
double gprime(double lam) { return (2.0 * lam - 1.5) * gfun(lam) * gfun(lam); }

}  // namespace

CutoffProfile::CutoffProfile(int resolution) : resolution_(resolution) {
  if (resolution < 10000)
    throw std::invalid_argument("build_cutoff: resolution must be >= 10000");
  double total = adaptive_simpson(bump, 0.5, 1.0, 1e-12);
  if (!(total > 0))
    throw std::runtime_error("build_cutoff: quadrature failed on the transition integral");
  c0_ = 1.0 / total;

  lam_.resize(resolution_);
  f_.resize(resolution_);
  fp_.resize(resolution_);
  fpp_.resize(resolution_);
  // cumulative integral assembled from per-cell quadratures, summed from the right
  std::vector<long double> suffix(resolution_, 0.0L);
  for (int i = 0; i < resolution_; ++i) lam_[i] = static_cast<double>(i) / (resolution_ - 1);
  for (int i = resolution_ - 2; i >= 0; --i) {
    double a = lam_[i], b = lam_[i + 1];
    long double cell = 0.0L;
    if (b > 0.5 && a < 1.0)
      cell = adaptive_simpson(bump, std::max(a, 0.5), std::min(b, 1.0), 1e-12, 24);
    suffix[i] = suffix[i + 1] + cell;
  }
  for (int i = 0; i < resolution_; ++i) {
    double l = lam_[i];
    if (l <= 0.5) {
      f_[i] = 1.0;
      fp_[i] = 0.0;
      fpp_[i] = 0.0;
    } else if (l >= 1.0) {
      f_[i] = 0.0;
      fp_[i] = 0.0;
      fpp_[i] = 0.0;
    } else {
      f_[i] = static_cast<double>(c0_ * suffix[i]);
      fp_[i] = -c0_ * bump(l);
      fpp_[i] = c0_ * gprime(l) * bump(l);
    }
  }
}

double CutoffProfile::f_le(double lam) const {
  if (lam <= 0.5) return 1.0;
  if (lam >= 1.0) return 0.0;
  double pos = lam * (resolution_ - 1);
  int i = static_cast<int>(pos);
  if (i >= resolution_ - 1) i = resolution_ - 2;
  double h = lam_[i + 1] - lam_[i];
  double u = (lam - lam_[i]) / h;
  // cubic Hermite on the tabulated values with exact derivatives
  double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  double h10 = u * (1 - u) * (1 - u);
  double h01 = u * u * (3 - 2 * u);
  double h11 = u * u * (u - 1);
  return h00 * f_[i] + h10 * h * fp_[i] + h01 * f_[i + 1] + h11 * h * fp_[i + 1];
}

double CutoffProfile::fp_gt(double lam) const {
  if (lam <= 0.5 || lam >= 1.0) return 0.0;
  return c0_ * bump(lam);
}

double CutoffProfile::fpp_gt(double lam) const {
  if (lam <= 0.5 || lam >= 1.0) return 0.0;
  return -c0_ * gprime(lam) * bump(lam);
}

double CutoffProfile::f_le_exact(double lam) const {
  if (lam <= 0.5) return 1.0;
  if (lam >= 1.0) return 0.0;
  return c0_ * adaptive_simpson(bump, lam, 1.0, 1e-12);
}

CutoffProfile build_cutoff(int resolution) { return CutoffProfile(resolution); }

CutoffConstants cutoff_constants(const CutoffProfile& profile) {
  CutoffConstants out;
  const int scan = 1000000;
  double best1 = 0.0, best2 = 0.0, arg1 = 0.75, arg2 = 0.75;
  for (int i = 0; i <= scan; ++i) {
    double l = 0.5 + 0.5 * static_cast<double>(i) / scan;
    double v1 = l * l * std::abs(profile.fpp_gt(l));
    double v2 = std::abs(l * profile.fp_gt(l) - profile.f_gt(l));
    if (v1 > best1) {
      best1 = v1;
      arg1 = l;
    }
    if (v2 > best2) {
      best2 = v2;
      arg2 = l;
    }
  }
  double w = 0.5 / scan;
  auto t1 = maximize_scalar(
      [&](double l) { return l * l * std::abs(profile.fpp_gt(l)); }, arg1 - w, arg1 + w);
  auto t2 = maximize_scalar(
      [&](double l) { return std::abs(l * profile.fp_gt(l) - profile.f_gt(l)); }, arg2 - w,
      arg2 + w);
  out.cf1 = t1.second;
  out.arg1 = t1.first;
  out.cf2 = t2.second;
  out.arg2 = t2.first;
  long double cap1 = 8.0L * std::exp(26.0L / 3.0L);
  long double cap2 = 1.0L + 4.0L * std::exp(32.0L / 3.0L);
  out.cf1_within_cap = out.cf1 <= static_cast<double>(cap1);
  out.cf2_within_cap = out.cf2 <= static_cast<double>(cap2);
  out.cf2_within_c0 = out.cf2 <= 1.0 + profile.c0();
  return out;
}

std::pair<Potential, Potential> split_potential(const CutoffProfile& profile,
                                                const Potential& V, double s, double beta) {
  if (V.kind != PotentialKind::coulomb_one_body)
    throw std::invalid_argument("split_potential: one-body Coulomb potential required");
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("split_potential: s must be in (0,1]");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("split_potential: beta must be in (0,1)");
  double sb = std::pow(s, beta);
  Potential reg = V, sin = V;
  int na = V.grid.naxes();
  for_each_position(V.grid, [&](std::size_t flat, const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < na; ++a) r2 += x[a] * x[a];
    double lam = std::sqrt(r2) / sb;
    double fle = profile.f_le(lam);
    sin.values[flat] = V.values[flat] * fle;
    reg.values[flat] = V.values[flat] * (1.0 - fle);
  });
  return {std::move(reg), std::move(sin)};
}

double f_le_square_integral(const CutoffProfile& profile) {
  double tail = adaptive_simpson(
      [&](double u) { double v = profile.f_le(u); return v * v; }, 0.5, 1.0, 1e-11);
  return 0.5 + tail;
}

double vsin_l2_norm(const CutoffProfile& profile, double s, double beta) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("vsin_l2_norm: s must be in (0,1]");
  double sb = std::pow(s, beta);
  return std::sqrt(4.0 * M_PI * sb * f_le_square_integral(profile));
}

double vsin_l2_norm_sharp(double s, double beta) {
  return std::sqrt(4.0 * M_PI * std::pow(s, beta));
}

VregAuditReport vreg_pointwise_bounds(const CutoffProfile& profile, double s, double beta,
                                      int samples) {
  CutoffConstants cc = cutoff_constants(profile);
  double sb = std::pow(s, beta);
  VregAuditReport rep;
  Rng rng(20240517u);
  for (int i = 0; i < samples; ++i) {
    // bias samples toward the transition band, with flat and tail coverage
    double u = rng.uniform();
    double r;
    if (u < 0.6) {
      r = sb * (0.5 + 0.5 * rng.uniform());
    } else if (u < 0.8) {
      r = sb * 0.5 * rng.uniform();
    } else {
      r = sb * (1.0 + 9.0 * rng.uniform());
    }
    if (r <= 0) continue;
    double lam = r / sb;
    double g = profile.f_gt(lam);
    double gp = profile.fp_gt(lam);
    double gpp = profile.fpp_gt(lam);
    double grad_field = std::abs(lam * gp - g) / (r * r);
    double lap_field = std::abs(lam * lam * gpp) / (r * r * r);
    if (lam <= 0.5) {
      if (grad_field != 0.0 || lap_field != 0.0)
        throw std::runtime_error("vreg_pointwise_bounds: field leaked into the flat region");
      continue;
    }
    double grad_bound = cc.cf2 / (r * r);
    double lap_bound = cc.cf1 / (r * r * r);
    double gr = grad_field / grad_bound;
    double lr = (lap_field == 0.0) ? 0.0 : lap_field / lap_bound;
    if (gr > rep.worst_grad_ratio) {
      rep.worst_grad_ratio = gr;
      rep.worst_grad_radius = r;
    }
    if (lr > rep.worst_lap_ratio) {
      rep.worst_lap_ratio = lr;
      rep.worst_lap_radius = r;
    }
  }
  rep.pass = rep.worst_grad_ratio <= 1.0 + 1e-12 && rep.worst_lap_ratio <= 1.0 + 1e-12;
  return rep;
}

}  // namespace trotterlab
