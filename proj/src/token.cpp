#include "semsteg/token.hpp"

#include <algorithm>

#include "semsteg/errors.hpp"

namespace semsteg {

std::size_t PerturbationMask::ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

LatentGrid init_latent(std::string_view token, Shape shape, std::string_view label) {
  if (shape.size() == 0) throw ValidationError("shape", "zero-size latent");
  return LatentGrid(shape, gaussian_stream(hash_token(token, label), shape.size()));
}

PerturbationMask build_mask(std::string_view token, Shape shape, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta", "must be in [0,1]");
  if (shape.size() == 0) throw ValidationError("shape", "zero-size latent");
  PerturbationMask m{shape, std::vector<std::uint8_t>(shape.size(), 0), eta};
  RandomStream rs(hash_token(token, domain::kMask));
  for (auto& bit : m.bits) bit = rs.next_uniform() < eta ? 1 : 0;
  return m;
}

LatentGrid perturb(const LatentGrid& z, const PerturbationMask& m) {
  if (z.shape() != m.shape) {
    throw ValidationError("mask", "shape mismatch " + z.shape().str() + " vs " + m.shape.str());
  }
  LatentGrid out = z;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (m.bits[i] != 0) out[i] = -out[i];
  }
  return out;
}

LatentGrid restore(const LatentGrid& z, const PerturbationMask& m) { return perturb(z, m); }

}  // namespace semsteg
