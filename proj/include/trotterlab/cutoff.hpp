#pragma once

#include <utility>
#include <vector>

#include "trotterlab/operators.hpp"

namespace trotterlab {

// smooth transition profile: F_le = 1 below 1/2, bump-integral decay to 0 at 1
class CutoffProfile {
 public:
  explicit CutoffProfile(int resolution);

  double c0() const { return c0_; }
  int resolution() const { return resolution_; }

  double f_le(double lam) const;           // table-interpolated branch for lambda <= 1
  double f_gt(double lam) const { return 1.0 - f_le(lam); }
  double fp_gt(double lam) const;          // d/dlam of f_gt
  double fpp_gt(double lam) const;
  double f_le_exact(double lam) const;     // direct quadrature, for interpolation audits

  const std::vector<double>& table_lambda() const { return lam_; }
  const std::vector<double>& table_f_le() const { return f_; }
  const std::vector<double>& table_fp_le() const { return fp_; }
  const std::vector<double>& table_fpp_le() const { return fpp_; }

 private:
  int resolution_;
  double c0_;
  std::vector<double> lam_, f_, fp_, fpp_;
};

CutoffProfile build_cutoff(int resolution);

struct CutoffConstants {
  double cf1 = 0.0, cf2 = 0.0;
  double arg1 = 0.0, arg2 = 0.0;
  bool cf1_within_cap = false;  // vs 8 e^{26/3}
  bool cf2_within_cap = false;  // vs 1 + 4 e^{32/3}
  bool cf2_within_c0 = false;     // vs 1 + computed C0
};

CutoffConstants cutoff_constants(const CutoffProfile& profile);

std::pair<Potential, Potential> split_potential(const CutoffProfile& profile,
                                                const Potential& V, double s, double beta);

double vsin_l2_norm(const CutoffProfile& profile, double s, double beta);
double vsin_l2_norm_sharp(double s, double beta);  // indicator in place of F
double f_le_square_integral(const CutoffProfile& profile);

struct VregAuditReport {
  double worst_grad_ratio = 0.0, worst_lap_ratio = 0.0;
  double worst_grad_radius = 0.0, worst_lap_radius = 0.0;
  bool pass = false;
};

VregAuditReport vreg_pointwise_bounds(const CutoffProfile& profile, double s,
                                      double beta = 0.5, int samples = 100000);

}  // namespace trotterlab
