#include "trotterlab/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace trotterlab {

WindowRule window_rule_for(const Potential& pot, const GridSpec& grid, bool local_study) {
  WindowRule rule;
  if (!pot.singular()) return rule;  // error cap only
  rule.apply_tmin = true;
  if (local_study) {
    double h = grid.spacing(0);
    for (int a = 1; a < grid.naxes(); ++a) h = std::min(h, grid.spacing(a));
    rule.t_min = 16.0 * h * h;
  } else {
    rule.t_min = 2.0 / pot.max_abs();
  }
  return rule;
}

void mark_window(std::vector<RateRow>& rows, const WindowRule& rule) {
  for (auto& row : rows) {
    row.in_window = row.error <= rule.error_cap && row.error > 0.0;
    if (rule.apply_tmin && row.t < rule.t_min) row.in_window = false;
  }
}

FitOutcome fit_order(const std::vector<RateRow>& rows) {
  FitOutcome out;
  bool all_tiny = !rows.empty();
  for (const auto& row : rows)
    if (row.error > 1e-10) all_tiny = false;
  if (all_tiny) {
    out.exact = true;
    out.note = "exact";
    return out;
  }
  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    if (!row.in_window || row.error <= 0.0) continue;
    lx.push_back(std::log(row.t));
    ly.push_back(std::log(row.error));
  }
  out.n_window = static_cast<int>(lx.size());
  if (out.n_window < 4) {
    out.note = "degenerate window";
    return out;
  }
  LinFit fit = linear_fit(lx, ly);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r2 = fit.r2;
  out.reliable = fit.r2 >= 0.9;
  if (!out.reliable) out.note = "unreliable";
  return out;
}

double eval_bound(const BoundModel& model, double T, double t) {
  switch (model.kind) {
    case BoundModel::Kind::nbody:
      return theorem_bound(T, t, model.h2norm, model.N, model.c0).value;
    case BoundModel::Kind::one_body:
      return one_body_theorem_bound(T, t, model.h2norm, model.abs_c).value;
    case BoundModel::Kind::smooth:
      return smooth_theorem_bound(model.k_comm, T, t);
    case BoundModel::Kind::none:
      return 0.0;
  }
  return 0.0;
}

BoundModel bound_model_for(const Potential& pot, const GridSpec& grid, double h2norm) {
  BoundModel model;
  model.h2norm = h2norm;
  switch (pot.kind) {
    case PotentialKind::coulomb_pairwise:
      model.kind = BoundModel::Kind::nbody;
      model.N = grid.particles;
      model.c0 = pot.c0;
      break;
    case PotentialKind::coulomb_one_body:
      model.kind = BoundModel::Kind::one_body;
      model.abs_c = std::abs(pot.c);
      break;
    case PotentialKind::gaussian_well: {
      model.kind = BoundModel::Kind::smooth;
      // analytic suprema of |grad V| and |lap V| for the well, radial scans
      double d = pot.depth, w = pot.width;
      auto grad = [&](double r) {
        return std::abs(2.0 * d * r / (w * w)) * std::exp(-r * r / (w * w));
      };
      auto lap = [&](double r) {
        double w2 = w * w;
        return std::abs(d * std::exp(-r * r / w2) * (4.0 * r * r / (w2 * w2) - 6.0 / w2));
      };
      double gs = 0.0, ls = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        double r = 4.0 * w * i / 4000.0;
        gs = std::max(gs, grad(r));
        ls = std::max(ls, lap(r));
      }
      double pmax2 = 0.0;
      for (int a = 0; a < grid.naxes(); ++a) {
        double pm = M_PI / grid.spacing(a);
        pmax2 += pm * pm;
      }
      model.k_comm = smooth_commutator_constant(ls, gs, std::sqrt(pmax2));
      break;
    }
    case PotentialKind::zero:
      model.kind = BoundModel::Kind::none;
      break;
  }
  return model;
}

RateStudyOutcome rate_study(const StudySetup& setup) {
  if (setup.k_max - setup.k_min + 1 < 6)
    throw std::invalid_argument("rate_study: ladder needs >= 6 points");
  RateStudyOutcome out;
  out.vmax = setup.H->pot.max_abs();
  out.h2_initial = h2_norm(setup.psi0);
  Wavefunction psi0 = transform(setup.psi0, Rep::position);
  Wavefunction reference;
  if (!setup.local) reference = exact_propagator(*setup.H, setup.T, psi0);
  for (int k = setup.k_min; k <= setup.k_max; ++k) {
    double t = std::ldexp(1.0, -k);
    RateRow row;
    row.t = t;
    row.kind = setup.local ? "local" : "global";
    if (setup.local) {
      row.error = local_error(*setup.H, t, psi0);
      row.bound = eval_bound(setup.bound, t, t);
    } else {
      int L = static_cast<int>(std::llround(setup.T / t));
      TrotterPlan plan = make_plan(*setup.H, setup.T, L);
      Wavefunction approx = evolve(plan, psi0, nullptr);
      row.error = diff_norm(approx, reference);
      row.bound = eval_bound(setup.bound, setup.T, t);
    }
    out.rows.push_back(row);
  }
  out.window = window_rule_for(setup.H->pot, setup.H->grid, setup.local);
  mark_window(out.rows, out.window);
  out.fit = fit_order(out.rows);
  return out;
}

H2TraceOutcome h2_trace(const DiscreteHamiltonian& H, const Wavefunction& psi0, double T,
                        int samples) {
  if (samples < 20) throw std::invalid_argument("h2_trace: need >= 20 sample times");
  H2TraceOutcome out;
  Wavefunction pos = transform(psi0, Rep::position);
  double h0 = h2_norm(pos);
  if (h0 == 0) throw std::invalid_argument("h2_trace: zero initial state");
  for (int i = 0; i < samples; ++i) {
    double t = T * i / (samples - 1.0);
    Wavefunction psit = (i == 0) ? pos : exact_propagator(H, t, pos);
    TraceRow row;
    row.time = t;
    row.ratio = h2_norm(psit) / h0;
    out.max_ratio = std::max(out.max_ratio, row.ratio);
    out.rows.push_back(row);
  }
  switch (H.pot.kind) {
    case PotentialKind::coulomb_one_body:
      out.growth_bound = h2_growth_one_body(std::abs(H.pot.c));
      break;
    case PotentialKind::coulomb_pairwise:
      out.growth_bound = h2_growth_nbody(H.grid.particles, H.pot.c0);
      break;
    default:
      out.growth_bound = h2_growth_one_body(H.pot.max_abs());
      break;
  }
  out.pass = out.max_ratio <= out.growth_bound;
  return out;
}

}  // namespace trotterlab
