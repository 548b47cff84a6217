#include "semsteg/pipeline.hpp"

#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/reference.hpp"

namespace semsteg {

void PipelineConfig::validate() const {
  if (token.empty()) throw ValidationError("token", "must be non-empty");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda", "must be in [0,1]");
  if (steps < 1) throw ValidationError("steps", "must be >= 1");
  if (reference_steps < 0) throw ValidationError("reference_steps", "must be >= 0");
  if (embed_dim == 0) throw ValidationError("embed_dim", "must be >= 1");
  if (!(mixing_p > 0.0 && mixing_p <= 1.0)) throw ValidationError("mixing_p", "must be in (0,1]");
  if (!(edit_strength > 0.0 && edit_strength <= 1.0)) {
    throw ValidationError("edit_strength", "must be in (0,1]");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta", "must be in [0,1]");
  if (!std::isfinite(snr_db)) throw ValidationError("snr_db", "must be finite");
  if (channel_h == 0.0 || !std::isfinite(channel_h)) throw ValidationError("channel_h", "must be non-zero");
  if (shape.size() == 0) throw ValidationError("shape", "zero-size latent");
  // Schedule bounds are checked by NoiseSchedule itself.
  NoiseSchedule(steps, beta_start, beta_end);
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Legit: return "legit";
    case Scenario::E1: return "E1";
    case Scenario::E2: return "E2";
    case Scenario::E3: return "E3";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "legit") return Scenario::Legit;
  if (name == "E1" || name == "e1") return Scenario::E1;
  if (name == "E2" || name == "e2") return Scenario::E2;
  if (name == "E3" || name == "e3") return Scenario::E3;
  throw ValidationError("scenario", "unknown scenario '" + std::string(name) + "'");
}

const MetricsReport& TrialRecord::report(Scenario s) const {
  switch (s) {
    case Scenario::Legit: return legit;
    case Scenario::E1: return eaves1;
    case Scenario::E2: return eaves2;
    case Scenario::E3: return eaves3;
  }
  return legit;
}

namespace {

const PipelineConfig& validated(const PipelineConfig& c) {
  c.validate();
  return c;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig cfg)
    : cfg_(validated(cfg)),
      sched_(cfg_.steps, cfg_.beta_start, cfg_.beta_end),
      ref_sched_(cfg_.reference_steps > 0 ? cfg_.reference_steps : cfg_.steps, cfg_.beta_start,
                 cfg_.beta_end),
      pred_(PredictorSpec{cfg_.predictor, Seed64{cfg_.predictor_seed}, cfg_.embed_dim,
                          4 * cfg_.embed_dim},
            cfg_.shape),
      ref_pred_(PredictorSpec{cfg_.predictor, Seed64{cfg_.reference_predictor_seed}, cfg_.embed_dim,
                              4 * cfg_.embed_dim},
                cfg_.shape),
      key_embedding_(embed_text(cfg_.public_key_text, cfg_.embed_dim)),
      feature_embedding_(embed_text(cfg_.feature_text, cfg_.embed_dim)) {
  legit_ = conditions_for(cfg_.token);
  wrong_token_ = conditions_for(cfg_.eavesdropper_token);
  tokenless_ = conditions_for(cfg_.default_reference_token);
  mask_ = build_mask(cfg_.token, cfg_.shape, cfg_.eta);
  wrong_mask_ = build_mask(cfg_.eavesdropper_token, cfg_.shape, cfg_.eta);
}

ConditionSet Pipeline::conditions_for(std::string_view token) const {
  ConditionSet c{key_embedding_, feature_embedding_, {}, cfg_.lambda};
  const ReferenceLatent ref = generate_reference(token, c, ref_sched_, ref_pred_, cfg_.shape);
  c.ref_embedding = embed_reference(ref, cfg_.embed_dim);
  c.validate();
  return c;
}

CoupledState Pipeline::perturb_state(const CoupledState& s, const PerturbationMask& m) const {
  return {perturb(s.z, m), cfg_.perturb_both_chains ? perturb(s.u, m) : s.u};
}

CoupledState Pipeline::hide(const LatentGrid& secret) const {
  if (secret.shape() != cfg_.shape) {
    throw ValidationError("secret", "expected " + cfg_.shape.str() + ", got " + secret.shape().str());
  }
  const SamplerParams params = sampler();
  const CoupledState noised = edict_forward(CoupledState::replicate(secret), sched_, pred_, nullptr, params);
  const CoupledState perturbed = perturb_state(noised, mask_);
  return edict_reverse(perturbed, sched_, pred_, &legit_, params);
}

LatentGrid Pipeline::reveal_with(const CoupledState& stego_hat, const PerturbationMask* mask,
                                 const ConditionSet& c) const {
  const SamplerParams params = sampler();
  CoupledState s = edict_forward(stego_hat, sched_, pred_, &c, params);
  if (mask != nullptr) s = perturb_state(s, *mask);
  return edict_reverse(s, sched_, pred_, nullptr, params).z;
}

LatentGrid Pipeline::reveal(const CoupledState& stego_hat) const {
  return reveal_with(stego_hat, &mask_, legit_);
}

LatentGrid Pipeline::eavesdrop(const CoupledState& stego_hat, Scenario scenario) const {
  switch (scenario) {
    case Scenario::Legit: return reveal(stego_hat);
    case Scenario::E1: return stego_hat.z;
    case Scenario::E2: return reveal_with(stego_hat, &wrong_mask_, wrong_token_);
    case Scenario::E3: return reveal_with(stego_hat, nullptr, tokenless_);
  }
  return stego_hat.z;
}

CoupledState Pipeline::transmit_stego(const CoupledState& stego, Seed64 noise_seed) const {
  ChannelConfig ch{cfg_.snr_db, cfg_.channel_h, noise_seed, cfg_.noiseless, cfg_.complex_iq};
  const LatentGrid stacked = concat_channels(stego.z, stego.u);
  const SymbolFrame rx = transmit(encode(stacked), ch);
  auto [z, u] = split_channels(decode(rx, ch, stacked.shape()));
  return {std::move(z), std::move(u)};
}

Seed64 channel_seed(Seed64 trial_seed) { return hash_token(to_hex(trial_seed), "channel"); }

TrialRecord Pipeline::run_trial(const LatentGrid& secret, Seed64 trial_seed) const {
  TrialRecord rec;
  rec.config = cfg_;
  rec.trial_seed = trial_seed;
  rec.peak = dynamic_range(secret);

  const CoupledState stego = hide(secret);
  rec.stego_distance = relative_distance(stego.z, secret);
  rec.edict_roundtrip_error = max_abs_diff(reveal(stego), secret);

  const CoupledState received = transmit_stego(stego, channel_seed(trial_seed));
  const std::size_t win = cfg_.ssim_window;
  rec.legit = evaluate(reveal(received), secret, rec.peak, win);
  rec.eaves1 = evaluate(eavesdrop(received, Scenario::E1), secret, rec.peak, win);
  rec.eaves2 = evaluate(eavesdrop(received, Scenario::E2), secret, rec.peak, win);
  rec.eaves3 = evaluate(eavesdrop(received, Scenario::E3), secret, rec.peak, win);
  return rec;
}

}  // namespace semsteg
