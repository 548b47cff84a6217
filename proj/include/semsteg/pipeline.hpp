#pragma once

// End-to-end hide / transmit / reveal and the three eavesdropper models.

#include <cstdint>
#include <string>
#include <string_view>

#include "semsteg/edict.hpp"
#include "semsteg/link.hpp"
#include "semsteg/metrics.hpp"
#include "semsteg/predictor.hpp"
#include "semsteg/schedule.hpp"
#include "semsteg/token.hpp"

namespace semsteg {

struct PipelineConfig {
  std::string token;
  std::string public_key_text = "a portrait photo of a person in natural light";
  std::string feature_text = "pose skeleton keypoints";
  double lambda = 1.0;

  int steps = 50;
  double beta_start = kDefaultBetaStart;
  double beta_end = kDefaultBetaEnd;

  PredictorKind predictor = PredictorKind::TinyMLP;
  std::uint64_t predictor_seed = 1;
  std::uint64_t reference_predictor_seed = 2;
  int reference_steps = 0;  // 0: same as steps
  std::size_t embed_dim = kDefaultEmbedDim;

  double mixing_p = 0.93;
  double edit_strength = 0.5;

  double eta = 0.05;
  bool perturb_both_chains = true;

  double snr_db = 10.0;
  double channel_h = 1.0;
  bool noiseless = false;
  bool complex_iq = false;

  Shape shape{4, 8, 8};
  std::size_t ssim_window = 0;

  std::string eavesdropper_token = "856427";
  std::string default_reference_token = "public-default-reference";
  std::string seed = "0";  // base string for per-trial seeds

  void validate() const;
  bool operator==(const PipelineConfig&) const = default;
};

enum class Scenario { Legit, E1, E2, E3 };

std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

struct TrialRecord {
  PipelineConfig config;
  std::size_t point = 0;
  std::size_t trial = 0;
  Seed64 trial_seed{};
  double peak = 1.0;
  MetricsReport legit;
  MetricsReport eaves1;
  MetricsReport eaves2;
  MetricsReport eaves3;
  double edict_roundtrip_error = 0.0;
  double stego_distance = 0.0;  // ||stego - secret|| / ||secret||

  const MetricsReport& report(Scenario s) const;
  bool operator==(const TrialRecord&) const = default;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg);

  const PipelineConfig& config() const noexcept { return cfg_; }
  const NoiseSchedule& schedule() const noexcept { return sched_; }
  const Predictor& predictor() const noexcept { return pred_; }
  SamplerParams sampler() const noexcept { return {cfg_.mixing_p, cfg_.edit_strength}; }

  // Key + feature embeddings plus the embedding of the token's reference.
  ConditionSet conditions_for(std::string_view token) const;
  const ConditionSet& legit_conditions() const noexcept { return legit_; }

  // Forward (unconditioned) -> token mask -> guided reverse. Returns both
  // chains; `z` is the stego latent proper.
  CoupledState hide(const LatentGrid& secret) const;
  // Guided forward -> restore -> unconditioned reverse, with the config token.
  LatentGrid reveal(const CoupledState& stego_hat) const;
  // Reveal with an arbitrary mask and condition set; a null mask skips the
  // restoration step.
  LatentGrid reveal_with(const CoupledState& stego_hat, const PerturbationMask* mask,
                         const ConditionSet& c) const;
  LatentGrid eavesdrop(const CoupledState& stego_hat, Scenario scenario) const;

  // Stack both chains into one frame, send it, split on receipt.
  CoupledState transmit_stego(const CoupledState& stego, Seed64 noise_seed) const;

  TrialRecord run_trial(const LatentGrid& secret, Seed64 trial_seed) const;

 private:
  CoupledState perturb_state(const CoupledState& s, const PerturbationMask& m) const;

  PipelineConfig cfg_;
  NoiseSchedule sched_;
  NoiseSchedule ref_sched_;
  Predictor pred_;
  Predictor ref_pred_;
  std::vector<double> key_embedding_;
  std::vector<double> feature_embedding_;
  ConditionSet legit_;
  ConditionSet wrong_token_;
  ConditionSet tokenless_;
  PerturbationMask mask_;
  PerturbationMask wrong_mask_;
};

// Channel noise seed derived from a trial seed.
Seed64 channel_seed(Seed64 trial_seed);

}  // namespace semsteg
