#include "semsteg/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semsteg/errors.hpp"
#include "semsteg/kernels.hpp"

namespace semsteg {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
  const double n = norm(v);
  for (double& e : v) e /= n;
}

void check_unit(const std::vector<double>& v, std::size_t dim, const char* field) {
  if (v.size() != dim) throw ValidationError(field, "dimension mismatch");
  if (std::abs(norm(v) - 1.0) > 1e-9) throw ValidationError(field, "must have unit norm");
}

}  // namespace

void ConditionSet::validate() const {
  if (key_embedding.empty()) throw ValidationError("key_embedding", "empty");
  check_unit(key_embedding, dim(), "key_embedding");
  check_unit(feature_embedding, dim(), "feature_embedding");
  if (has_reference()) check_unit(ref_embedding, dim(), "ref_embedding");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda", "must be in [0,1]");
}

ConditionSet ConditionSet::without_reference() const {
  ConditionSet c = *this;
  c.ref_embedding.clear();
  return c;
}

std::vector<double> embed_text(std::string_view text, std::size_t dim) {
  if (dim == 0) throw ValidationError("embed_dim", "must be >= 1");
  auto v = gaussian_stream(hash_token(text, domain::kEmbed), dim);
  normalize(v);
  return v;
}

std::string to_string(PredictorKind k) {
  switch (k) {
    case PredictorKind::Zero: return "zero";
    case PredictorKind::Linear: return "linear";
    case PredictorKind::TinyMLP: return "tiny_mlp";
  }
  return "?";
}

PredictorKind parse_predictor_kind(std::string_view name) {
  if (name == "zero") return PredictorKind::Zero;
  if (name == "linear") return PredictorKind::Linear;
  if (name == "tiny_mlp" || name == "tinymlp") return PredictorKind::TinyMLP;
  throw ValidationError("predictor", "unknown kind '" + std::string(name) + "'");
}

std::vector<double> time_embedding(int t) {
  std::vector<double> e(kTimeEmbedDim);
  const std::size_t half = kTimeEmbedDim / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const double freq = std::pow(10000.0, -static_cast<double>(k) / static_cast<double>(half));
    e[k] = std::sin(t * freq);
    e[half + k] = std::cos(t * freq);
  }
  return e;
}

Predictor::Predictor(PredictorSpec spec, Shape shape) : spec_(spec), shape_(shape) {
  if (shape.size() == 0) throw ValidationError("shape", "empty latent shape");
  if (spec.embed_dim == 0) throw ValidationError("embed_dim", "must be >= 1");
  const std::size_t n = shape.size();
  const std::size_t d = spec.embed_dim;

  switch (spec.kind) {
    case PredictorKind::Zero:
      break;
    case PredictorKind::Linear: {
      RandomStream rs(spec.weight_seed);
      perm_.resize(n);
      std::iota(perm_.begin(), perm_.end(), std::size_t{0});
      for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rs.next_uniform() * static_cast<double>(i));
        std::swap(perm_[i - 1], perm_[j]);
      }
      perm_sign_.resize(n);
      for (double& s : perm_sign_) s = rs.next_uniform() < 0.5 ? -1.0 : 1.0;
      GaussianSampler g(Seed64{rs.next_u64()});
      cond_dir_.resize(3 * d);
      g.fill(cond_dir_);
      normalize(cond_dir_);
      bias_grid_.resize(n);
      g.fill(bias_grid_);
      break;
    }
    case PredictorKind::TinyMLP: {
      if (spec.hidden_width == 0) throw ValidationError("hidden_width", "must be >= 1");
      inputs_ = n + kTimeEmbedDim + 3 * d;
      const std::size_t h = spec.hidden_width;
      GaussianSampler g(spec.weight_seed);
      w1_.resize(h * inputs_);
      w2_.resize(n * h);
      g.fill(w1_);
      g.fill(w2_);
      const double s1 = 1.0 / std::sqrt(static_cast<double>(inputs_));
      const double s2 = 1.0 / std::sqrt(static_cast<double>(h));
      for (double& w : w1_) w *= s1;
      for (double& w : w2_) w *= s2;
      break;
    }
  }
}

double Predictor::max_output_weight() const noexcept {
  double m = 0.0;
  for (double w : w2_) m = std::max(m, std::abs(w));
  return m;
}

void Predictor::check_input(const LatentGrid& z) const {
  if (z.shape() != shape_) {
    throw ValidationError("z", "predictor built for " + shape_.str() + ", got " + z.shape().str());
  }
  if (!z.all_finite()) throw ValidationError("z", "non-finite predictor input");
}

void Predictor::evaluate(std::span<const double> z, int t, std::span<const double> key,
                         std::span<const double> feature, std::span<const double> ref,
                         std::span<double> out) const {
  const std::size_t n = shape_.size();
  const std::size_t d = spec_.embed_dim;
  auto cond_at = [&](std::size_t i) -> double {
    if (i < d) return key.empty() ? 0.0 : key[i];
    if (i < 2 * d) return feature.empty() ? 0.0 : feature[i - d];
    return ref.empty() ? 0.0 : ref[i - 2 * d];
  };

  switch (spec_.kind) {
    case PredictorKind::Zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case PredictorKind::Linear: {
      double proj = 0.0;
      for (std::size_t i = 0; i < 3 * d; ++i) proj += cond_dir_[i] * cond_at(i);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = perm_sign_[i] * z[perm_[i]] + kLinearBiasScale * proj * bias_grid_[i];
      }
      return;
    }
    case PredictorKind::TinyMLP: {
      std::vector<double> input(inputs_);
      std::copy(z.begin(), z.end(), input.begin());
      const auto temb = time_embedding(t);
      std::copy(temb.begin(), temb.end(), input.begin() + static_cast<std::ptrdiff_t>(n));
      const double cond_scale = std::sqrt(static_cast<double>(d));
      for (std::size_t i = 0; i < 3 * d; ++i) input[n + kTimeEmbedDim + i] = cond_scale * cond_at(i);

      std::vector<double> hidden(spec_.hidden_width);
      kernels::parallel::matvec(w1_, spec_.hidden_width, inputs_, input, hidden);
      kernels::parallel::tanh_inplace(hidden);
      kernels::parallel::matvec(w2_, n, spec_.hidden_width, hidden, out);
      return;
    }
  }
}

LatentGrid Predictor::predict(const LatentGrid& z, int t, const ConditionSet* c) const {
  check_input(z);
  LatentGrid out(shape_);
  if (c == nullptr) {
    evaluate(z.values(), t, {}, {}, {}, out.values());
  } else {
    if (c->dim() != spec_.embed_dim) throw ValidationError("embed_dim", "condition dimension mismatch");
    evaluate(z.values(), t, c->key_embedding, c->feature_embedding, c->ref_embedding, out.values());
  }
  return out;
}

LatentGrid Predictor::guided_predict(const LatentGrid& z, int t, const ConditionSet& c) const {
  check_input(z);
  if (c.dim() != spec_.embed_dim) throw ValidationError("embed_dim", "condition dimension mismatch");
  const double lambda = c.lambda;
  LatentGrid key_only(shape_);
  LatentGrid full(shape_);
  if (lambda != 1.0) evaluate(z.values(), t, c.key_embedding, c.feature_embedding, {}, key_only.values());
  if (lambda != 0.0) {
    evaluate(z.values(), t, c.key_embedding, c.feature_embedding, c.ref_embedding, full.values());
  }
  if (lambda == 0.0) return key_only;
  if (lambda == 1.0) return full;
  LatentGrid out(shape_);
  kernels::parallel::axpby(1.0 - lambda, key_only.values(), lambda, full.values(), out.values());
  return out;
}

}  // namespace semsteg
