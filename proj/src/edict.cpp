#include "semsteg/edict.hpp"

#include <algorithm>
#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/kernels.hpp"

namespace semsteg {

namespace {

LatentGrid noise_estimate(const Predictor& pred, const LatentGrid& x, int t, const ConditionSet* c) {
  return c != nullptr ? pred.guided_predict(x, t, *c) : pred.predict(x, t, nullptr);
}

void check_finite(const CoupledState& s, int t) {
  if (!s.z.all_finite() || !s.u.all_finite()) {
    throw NumericalError(t, "non-finite coupled state (divergent predictor or schedule)");
  }
}

void check_state(const CoupledState& s) {
  require_same_shape(s.z, s.u, "coupled_state");
  if (!s.z.all_finite() || !s.u.all_finite()) throw ValidationError("coupled_state", "non-finite input");
}

void check_window(StepWindow w, const NoiseSchedule& sched) {
  if (w.t_start < 0 || w.t_end > sched.steps() || w.t_start > w.t_end) {
    throw ValidationError("window", "invalid step window [" + std::to_string(w.t_start) + ", " +
                                        std::to_string(w.t_end) + "]");
  }
}

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("mixing_p", "must be in (0,1]");
}

}  // namespace

void SamplerParams::validate() const {
  check_p(mixing_p);
  if (!(edit_strength > 0.0 && edit_strength <= 1.0)) {
    throw ValidationError("edit_strength", "must be in (0,1]");
  }
}

StepWindow step_window(const SamplerParams& params, int steps) {
  params.validate();
  // Guard against 0.3 * 10 = 3.0000000000000004 rounding up to 4.
  const double scaled = params.edit_strength * steps;
  int n = static_cast<int>(std::ceil(scaled - 1e-9 * scaled));
  n = std::clamp(n, 1, steps);
  return {0, n};
}

CoupledState edict_mix(const CoupledState& inter, double p) {
  check_p(p);
  require_same_shape(inter.z, inter.u, "coupled_state");
  CoupledState out{LatentGrid(inter.z.shape()), LatentGrid(inter.z.shape())};
  kernels::parallel::axpby(p, inter.z.values(), 1.0 - p, inter.u.values(), out.z.values());
  kernels::parallel::axpby(p, inter.u.values(), 1.0 - p, out.z.values(), out.u.values());
  return out;
}

CoupledState edict_unmix(const CoupledState& state, double p) {
  check_p(p);
  require_same_shape(state.z, state.u, "coupled_state");
  const double inv_p = 1.0 / p;
  const double q = 1.0 - p;
  CoupledState out{LatentGrid(state.z.shape()), LatentGrid(state.z.shape())};
  kernels::parallel::axpby(inv_p, state.u.values(), -q * inv_p, state.z.values(), out.u.values());
  kernels::parallel::axpby(inv_p, state.z.values(), -q * inv_p, out.u.values(), out.z.values());
  return out;
}

CoupledState edict_forward(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c,
                           const SamplerParams& params) {
  return edict_forward(state, sched, pred, c, params.mixing_p, step_window(params, sched.steps()));
}

CoupledState edict_forward(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c, double p,
                           StepWindow window) {
  check_state(state);
  check_window(window, sched);
  check_p(p);
  CoupledState s = state;
  for (int t = window.t_start + 1; t <= window.t_end; ++t) {
    const CoupledState inter = edict_unmix(s, p);
    check_finite(inter, t);
    const double g = sched.gamma(t);
    const double w = sched.omega(t);
    const LatentGrid eps_z = noise_estimate(pred, inter.z, t, c);
    kernels::parallel::axpby(g, inter.u.values(), -w, eps_z.values(), s.u.values());
    if (!s.u.all_finite()) throw NumericalError(t, "non-finite intermediate state");
    const LatentGrid eps_u = noise_estimate(pred, s.u, t, c);
    kernels::parallel::axpby(g, inter.z.values(), -w, eps_u.values(), s.z.values());
    check_finite(s, t);
  }
  return s;
}

CoupledState edict_reverse(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c,
                           const SamplerParams& params) {
  return edict_reverse(state, sched, pred, c, params.mixing_p, step_window(params, sched.steps()));
}

CoupledState edict_reverse(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c, double p,
                           StepWindow window) {
  check_state(state);
  check_window(window, sched);
  check_p(p);
  CoupledState s = state;
  CoupledState inter{LatentGrid(s.z.shape()), LatentGrid(s.z.shape())};
  for (int t = window.t_end; t > window.t_start; --t) {
    const double a = sched.a(t);
    const double b = sched.b(t);
    const LatentGrid eps_u = noise_estimate(pred, s.u, t, c);
    kernels::parallel::axpby(a, s.z.values(), b, eps_u.values(), inter.z.values());
    if (!inter.z.all_finite()) throw NumericalError(t, "non-finite intermediate state");
    const LatentGrid eps_z = noise_estimate(pred, inter.z, t, c);
    kernels::parallel::axpby(a, s.u.values(), b, eps_z.values(), inter.u.values());
    s = edict_mix(inter, p);
    check_finite(s, t);
  }
  return s;
}

LatentGrid ddim_sample(const LatentGrid& z, const NoiseSchedule& sched, const Predictor& pred,
                       const ConditionSet* c, DdimDirection direction,
                       const SamplerParams& params) {
  if (!z.all_finite()) throw ValidationError("z", "non-finite input");
  const StepWindow w = step_window(params, sched.steps());
  LatentGrid x = z;
  LatentGrid next(z.shape());
  if (direction == DdimDirection::Denoising) {
    for (int t = w.t_end; t > w.t_start; --t) {
      const LatentGrid eps = noise_estimate(pred, x, t, c);
      kernels::parallel::axpby(sched.a(t), x.values(), sched.b(t), eps.values(), next.values());
      std::swap(x, next);
      if (!x.all_finite()) throw NumericalError(t, "non-finite DDIM state");
    }
  } else {
    for (int t = w.t_start + 1; t <= w.t_end; ++t) {
      const LatentGrid eps = noise_estimate(pred, x, t, c);
      kernels::parallel::axpby(sched.gamma(t), x.values(), -sched.omega(t), eps.values(), next.values());
      std::swap(x, next);
      if (!x.all_finite()) throw NumericalError(t, "non-finite DDIM state");
    }
  }
  return x;
}

}  // namespace semsteg
