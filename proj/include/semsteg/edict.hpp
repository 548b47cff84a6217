#pragma once

// Coupled-chain exact-inversion sampler and the single-chain DDIM baseline.

#include "semsteg/latent.hpp"
#include "semsteg/predictor.hpp"
#include "semsteg/schedule.hpp"

namespace semsteg {

struct CoupledState {
  LatentGrid z;
  LatentGrid u;

  static CoupledState replicate(const LatentGrid& x) { return {x, x}; }
  bool operator==(const CoupledState&) const = default;
};

struct SamplerParams {
  double mixing_p = 0.93;
  double edit_strength = 1.0;

  void validate() const;
};

// Steps t_start + 1 .. t_end are traversed.
struct StepWindow {
  int t_start = 0;
  int t_end = 0;
};

// Mixing layer of the reverse step and its inverse (the unmixing that opens
// each forward step):
//   mix:   z- = p z' + (1-p) u';     u- = p u' + (1-p) z-
//   unmix: u' = (u - (1-p) z) / p;   z' = (z - (1-p) u') / p
CoupledState edict_mix(const CoupledState& inter, double mixing_p);
CoupledState edict_unmix(const CoupledState& state, double mixing_p);

// [0, ceil(edit_strength * T)]
StepWindow step_window(const SamplerParams& params, int steps);

// Noising: clean end -> noisy end. Unmix, then undo the affine coupling:
//   u' = (u - (1-p) z) / p
//   z' = (z - (1-p) u') / p
//   u+ = gamma u' - omega eps(z', t)
//   z+ = gamma z' - omega eps(u+, t)
// With conditions present eps is the guided prediction.
CoupledState edict_forward(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c,
                           const SamplerParams& params);
CoupledState edict_forward(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c, double mixing_p,
                           StepWindow window);

// Denoising, the exact inverse of edict_forward:
//   z' = a z + b eps(u, t)
//   u' = a u + b eps(z', t)
//   z- = p z' + (1-p) u'
//   u- = p u' + (1-p) z-
CoupledState edict_reverse(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c,
                           const SamplerParams& params);
CoupledState edict_reverse(const CoupledState& state, const NoiseSchedule& sched,
                           const Predictor& pred, const ConditionSet* c, double mixing_p,
                           StepWindow window);

enum class DdimDirection { Noising, Denoising };

// Single chain. Denoising is z_{t-1} = a z_t + b eps(z_t, t); noising is the
// usual approximate inversion z_t = gamma z_{t-1} - omega eps(z_{t-1}, t).
LatentGrid ddim_sample(const LatentGrid& z, const NoiseSchedule& sched, const Predictor& pred,
                       const ConditionSet* c, DdimDirection direction,
                       const SamplerParams& params);

}  // namespace semsteg
