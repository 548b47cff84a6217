#pragma once

// Deterministic stand-ins for the conditional noise-prediction network.
// Exact inversion of the coupled sampler holds for any deterministic
// predictor, so these are seeded toy functions rather than trained models.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semsteg/determinism.hpp"
#include "semsteg/latent.hpp"

namespace semsteg {

inline constexpr std::size_t kDefaultEmbedDim = 64;
inline constexpr std::size_t kTimeEmbedDim = 16;
inline constexpr double kLinearBiasScale = 0.1;

// Public key text, structural feature and reference embeddings plus the
// image-guidance weight. An empty ref_embedding means "no reference" and is
// fed to the predictor as zeros.
struct ConditionSet {
  std::vector<double> key_embedding;
  std::vector<double> feature_embedding;
  std::vector<double> ref_embedding;
  double lambda = 1.0;

  std::size_t dim() const noexcept { return key_embedding.size(); }
  bool has_reference() const noexcept { return !ref_embedding.empty(); }
  // Throws ValidationError unless embeddings are unit-norm, equal length and
  // lambda is in [0, 1].
  void validate() const;
  ConditionSet without_reference() const;
};

// Unit vector from the text's "embed" stream.
std::vector<double> embed_text(std::string_view text, std::size_t dim);

enum class PredictorKind { Zero, Linear, TinyMLP };

std::string to_string(PredictorKind k);
PredictorKind parse_predictor_kind(std::string_view name);

struct PredictorSpec {
  PredictorKind kind = PredictorKind::TinyMLP;
  Seed64 weight_seed{};
  std::size_t embed_dim = kDefaultEmbedDim;
  std::size_t hidden_width = 4 * kDefaultEmbedDim;
};

class Predictor {
 public:
  Predictor(PredictorSpec spec, Shape shape);

  const PredictorSpec& spec() const noexcept { return spec_; }
  const Shape& shape() const noexcept { return shape_; }

  // eps(z, t, c). A null condition set feeds zero embeddings.
  LatentGrid predict(const LatentGrid& z, int t, const ConditionSet* c) const;

  // (1 - lambda) * eps(z, t, key, feature) + lambda * eps(z, t, key, feature, ref)
  LatentGrid guided_predict(const LatentGrid& z, int t, const ConditionSet& c) const;

  // Largest absolute second-layer weight (TinyMLP only, 0 otherwise).
  double max_output_weight() const noexcept;

 private:
  void evaluate(std::span<const double> z, int t, std::span<const double> key,
                std::span<const double> feature, std::span<const double> ref,
                std::span<double> out) const;
  void check_input(const LatentGrid& z) const;

  PredictorSpec spec_;
  Shape shape_;
  std::size_t inputs_ = 0;

  // Linear: signed permutation plus rank-1 condition bias.
  std::vector<std::size_t> perm_;
  std::vector<double> perm_sign_;
  std::vector<double> cond_dir_;
  std::vector<double> bias_grid_;

  // TinyMLP: out = W2 tanh(W1 [z, t_emb, sqrt(d) * cond]).
  std::vector<double> w1_;
  std::vector<double> w2_;
};

std::vector<double> time_embedding(int t);

inline LatentGrid predict(const Predictor& p, const LatentGrid& z, int t, const ConditionSet* c) {
  return p.predict(z, t, c);
}
inline LatentGrid guided_predict(const Predictor& p, const LatentGrid& z, int t,
                                 const ConditionSet& c) {
  return p.guided_predict(z, t, c);
}

}  // namespace semsteg
