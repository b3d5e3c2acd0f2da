#include "trotterlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace trotterlab {

double chls3() { return 2.0; }

double c_n(int N, double c0) {
  if (N < 2) throw std::invalid_argument("c_n: N must be >= 2");
  if (c0 < 0) throw std::invalid_argument("c_n: c0 must be >= 0");
  long double n32 = std::pow(static_cast<long double>(N), 1.5L);
  long double n3 = static_cast<long double>(N) * N * N;
  long double v = 2.0L + 3.0L * c0 * chls3() * n32 + 2.0L * c0 * c0 * chls3() * chls3() * n3;
  return static_cast<double>(v);
}

double cf1_closed_form_cap() { return static_cast<double>(8.0L * std::exp(26.0L / 3.0L)); }
double cf2_closed_form_cap() { return static_cast<double>(1.0L + 4.0L * std::exp(32.0L / 3.0L)); }

double tilde_cf(double cf1, double cf2) {
  long double v = 4.0L * std::sqrt(6.0L) / 3.0L * cf1 + 24.0L * chls3() * cf2 + 2.0L;
  return static_cast<double>(v);
}

double tilde_cf_certified() { return tilde_cf(cf1_closed_form_cap(), cf2_closed_form_cap()); }

double tilde_cn(int N, double c0, double cf1, double cf2) {
  if (N < 2) throw std::invalid_argument("tilde_cn: N must be >= 2");
  long double n = N;
  long double cn = c_n(N, c0);
  long double shape = (n - 1.0L) * std::pow(n, 1.5L) + (n - 1.0L) * std::sqrt(n) * (cn - 1.0L);
  long double v = 0.8L * c0 * tilde_cf(cf1, cf2) * shape;
  return static_cast<double>(v);
}

double tilde_cn_certified(int N, double c0) {
  return tilde_cn(N, c0, cf1_closed_form_cap(), cf2_closed_form_cap());
}

LinFit tilde_cn_slope(const std::vector<int>& Ns, double c0) {
  std::vector<double> lx, ly;
  for (int N : Ns) {
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(tilde_cn_certified(N, c0)));
  }
  return linear_fit(lx, ly);
}

std::vector<int> dyadic_ns() { return {2, 4, 8, 16, 32, 64}; }

std::vector<int> integer_ns() {
  std::vector<int> out;
  for (int n = 2; n <= 64; ++n) out.push_back(n);
  return out;
}

BoundValue theorem_bound(double T, double t, double h2norm, int N, double c0) {
  if (t < 0) throw std::invalid_argument("theorem_bound: t must be >= 0");
  BoundValue b;
  b.t_warning = t > 1.0;
  b.value = tilde_cn_certified(N, c0) * T * std::pow(t, 0.25) * h2norm;
  return b;
}

double h2_growth_one_body(double abs_c) {
  return 2.0 + 3.0 * abs_c * chls3() + 2.0 * abs_c * abs_c * chls3() * chls3();
}

double h2_growth_nbody(int N, double c0) { return c_n(N, c0); }

double second_moment_bound(double h_psi_norm, double psi_norm, int N, double c0) {
  if (h_psi_norm < 0 || psi_norm < 0)
    throw std::invalid_argument("second_moment_bound: norms must be >= 0");
  if (N < 2) throw std::invalid_argument("second_moment_bound: N must be >= 2");
  double n32 = std::pow(static_cast<double>(N), 1.5);
  double n3 = static_cast<double>(N) * N * N;
  return (1.0 + 2.0 * c0 * n32) * h_psi_norm + (2.0 * c0 * n32 + 4.0 * c0 * c0 * n3) * psi_norm;
}

double chls_upper_bound(int n) {
  if (n < 3) throw std::invalid_argument("chls_upper_bound: n must be >= 3");
  long double nn = n;
  long double term1 = 2.0L * std::pow(static_cast<long double>(M_PI), nn / 2.0L) /
                      ((nn - 2.0L) * std::tgamma(nn / 2.0L));
  long double term2 = 8.0L * std::pow(static_cast<long double>(M_PI), nn) /
                      ((std::pow(2.0L, nn / 2.0L - 1.0L) - 1.0L) *
                       std::tgamma(nn / 2.0L + 1.0L) * std::tgamma(nn / 2.0L + 1.0L));
  return static_cast<double>(9.0L + term1 + term2);
}

double one_body_cf(double cf1, double cf2) {
  long double v = 2.0L * std::sqrt(6.0L) / 3.0L * cf1 + 12.0L * chls3() * cf2 + 2.0L;
  return static_cast<double>(v);
}

double one_body_local_constant(double abs_c, double cf1, double cf2) {
  return 0.8 * abs_c * one_body_cf(cf1, cf2) * h2_growth_one_body(abs_c);
}

double one_body_local_constant_certified(double abs_c) {
  return one_body_local_constant(abs_c, cf1_closed_form_cap(), cf2_closed_form_cap());
}

BoundValue one_body_theorem_bound(double T, double t, double h2norm, double abs_c) {
  BoundValue b;
  b.t_warning = t > 1.0;
  b.value = one_body_local_constant_certified(abs_c) * T * std::pow(t, 0.25) * h2norm;
  return b;
}

double smooth_commutator_constant(double lap_v_sup, double grad_v_sup, double p_max) {
  return lap_v_sup + 2.0 * grad_v_sup * p_max;
}

double smooth_theorem_bound(double k_comm, double T, double t) {
  return 0.5 * k_comm * T * t;
}

std::vector<ConstantRow> constant_report(int N, double c0, double cf1_emp, double cf2_emp,
                                         double c0_emp) {
  std::vector<ConstantRow> rows;
  rows.push_back({"C_HLS3", chls3(), "sharp three-dimensional constant"});
  rows.push_back({"C0", c0_emp, "computed transition normalization"});
  rows.push_back({"C_F1", cf1_emp, "computed supremum"});
  rows.push_back({"C_F1_cap", cf1_closed_form_cap(), "closed-form cap 8 e^{26/3}"});
  rows.push_back({"C_F2", cf2_emp, "computed supremum"});
  rows.push_back({"C_F2_cap", cf2_closed_form_cap(), "closed-form cap 1 + 4 e^{32/3}"});
  rows.push_back({"C_N", c_n(N, c0), "growth constant"});
  rows.push_back({"tilde_CF_empirical", tilde_cf(cf1_emp, cf2_emp), "from computed suprema"});
  rows.push_back({"tilde_CF_certified", tilde_cf_certified(), "from closed-form caps"});
  rows.push_back({"tilde_CN_empirical", tilde_cn(N, c0, cf1_emp, cf2_emp),
                  "from computed suprema"});
  rows.push_back({"tilde_CN_certified", tilde_cn_certified(N, c0), "from closed-form caps"});
  return rows;
}

}  // namespace trotterlab
