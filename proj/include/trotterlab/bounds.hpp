#pragma once

#include <string>
#include <vector>

#include "trotterlab/numerics.hpp"

namespace trotterlab {

double chls3();  // sharp three-dimensional constant

double c_n(int N, double c0);

double cf1_closed_form_cap();  // 8 e^{26/3}
double cf2_closed_form_cap();  // 1 + 4 e^{32/3}

double tilde_cf(double cf1, double cf2);
double tilde_cf_certified();

double tilde_cn(int N, double c0, double cf1, double cf2);
double tilde_cn_certified(int N, double c0);

LinFit tilde_cn_slope(const std::vector<int>& Ns, double c0);
std::vector<int> dyadic_ns();          // {2,4,8,16,32,64}
std::vector<int> integer_ns();         // {2,...,64}

struct BoundValue {
  double value = 0.0;
  bool t_warning = false;  // t outside the stated range (0,1]
};

BoundValue theorem_bound(double T, double t, double h2norm, int N, double c0);

double h2_growth_one_body(double abs_c);
double h2_growth_nbody(int N, double c0);

double second_moment_bound(double h_psi_norm, double psi_norm, int N, double c0);

double chls_upper_bound(int n);  // closed-form bound, n >= 3

// one-body certified chain assembled from the one-body growth constant
double one_body_cf(double cf1, double cf2);
double one_body_local_constant(double abs_c, double cf1, double cf2);
double one_body_local_constant_certified(double abs_c);
BoundValue one_body_theorem_bound(double T, double t, double h2norm, double abs_c);

// bounded-commutator baseline for smooth potentials
double smooth_commutator_constant(double lap_v_sup, double grad_v_sup, double p_max);
double smooth_theorem_bound(double k_comm, double T, double t);

struct ConstantRow {
  std::string name;
  double value = 0.0;
  std::string note;
};

std::vector<ConstantRow> constant_report(int N, double c0, double cf1_emp, double cf2_emp,
                                         double c0_emp);

}  // namespace trotterlab
