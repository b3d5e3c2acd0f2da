#pragma once

#include <string>
#include <vector>

#include "trotterlab/bounds.hpp"
#include "trotterlab/trotter.hpp"

namespace trotterlab {

struct RateRow {
  double t = 0.0;
  double error = 0.0;
  double bound = 0.0;
  bool in_window = false;
  std::string kind;  // "global" or "local"
};

struct FitOutcome {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int n_window = 0;
  bool reliable = false;
  bool exact = false;  // every error at solver noise, fit skipped
  std::string note;
};

struct WindowRule {
  bool apply_tmin = false;
  double t_min = 0.0;
  double error_cap = 0.5;
};

// singular potentials get the crossover cut; the local-study crossover is
// resolution-limited rather than amplitude-limited
WindowRule window_rule_for(const Potential& pot, const GridSpec& grid, bool local_study);

void mark_window(std::vector<RateRow>& rows, const WindowRule& rule);
FitOutcome fit_order(const std::vector<RateRow>& rows);

struct BoundModel {
  enum class Kind { nbody, one_body, smooth, none } kind = Kind::none;
  int N = 2;
  double c0 = 1.0;
  double abs_c = 0.0;
  double k_comm = 0.0;
  double h2norm = 1.0;
};

double eval_bound(const BoundModel& model, double T, double t);
BoundModel bound_model_for(const Potential& pot, const GridSpec& grid, double h2norm);

struct StudySetup {
  const DiscreteHamiltonian* H = nullptr;
  Wavefunction psi0;
  double T = 1.0;
  int k_min = 3;
  int k_max = 12;
  bool local = false;
  BoundModel bound;
};

struct RateStudyOutcome {
  std::vector<RateRow> rows;
  FitOutcome fit;
  WindowRule window;
  double vmax = 0.0;
  double h2_initial = 0.0;
};

RateStudyOutcome rate_study(const StudySetup& setup);

struct TraceRow {
  double time = 0.0;
  double ratio = 0.0;
};

struct H2TraceOutcome {
  std::vector<TraceRow> rows;
  double max_ratio = 0.0;
  double growth_bound = 0.0;
  bool pass = false;
};

H2TraceOutcome h2_trace(const DiscreteHamiltonian& H, const Wavefunction& psi0, double T,
                        int samples);

}  // namespace trotterlab
