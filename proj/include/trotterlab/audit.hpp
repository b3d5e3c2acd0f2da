#pragma once

#include <string>
#include <vector>

#include "trotterlab/numerics.hpp"
#include "trotterlab/operators.hpp"

namespace trotterlab {

struct AuditConfig {
  std::uint64_t seed = 1;
  int samples = 100;
  GridSpec grid;
  double spectral_decay = 4.0;
  double margin = 1.05;
};

Wavefunction random_state(const GridSpec& grid, double decay, Rng& rng);

double hardy_ratio(const Wavefunction& f);
double nbody_potential_ratio(const Wavefunction& f, const Potential& pairwise);

struct IneqCheck {
  double ratio = 0.0;
  bool pass = false;
};

IneqCheck mixed_derivative_ineq(const Wavefunction& g);
IneqCheck momentum_counting(const Wavefunction& f, int N);

double sobolev_embedding_ratio(const Wavefunction& f);
double y_weight_l2_norm();  // L2(R^3) norm of (1+|y|^2)^{-1}

double power_iteration_opnorm(const Potential& pairwise, int iters, std::uint64_t seed);

struct AuditRow {
  std::string audit;
  int sample = 0;
  double ratio = 0.0;
  double bound = 0.0;
  double margin = 1.0;
  bool pass = false;
  bool warn = false;
};

std::vector<AuditRow> hardy_audit(const AuditConfig& cfg);
std::vector<AuditRow> sobolev_audit(const AuditConfig& cfg);
std::vector<AuditRow> mixed_derivative_audit(const AuditConfig& cfg);
std::vector<AuditRow> momentum_counting_audit(const AuditConfig& cfg);
std::vector<AuditRow> nbody_audit(const AuditConfig& cfg, const std::vector<double>& cjk);

}  // namespace trotterlab
