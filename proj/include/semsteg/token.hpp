#pragma once

// Digital-token mechanics: seeded initial latent, binary perturbation mask
// and the sign-flip perturbation / restoration pair.

#include <cstdint>
#include <string_view>
#include <vector>

#include "semsteg/determinism.hpp"
#include "semsteg/latent.hpp"

namespace semsteg {

struct PerturbationMask {
  Shape shape;
  std::vector<std::uint8_t> bits;  // 0 or 1, row-major like LatentGrid
  double eta = 0.0;

  std::size_t ones() const noexcept;
};

// gaussian_stream(hash_token(token, label), C*H*W) reshaped row-major.
LatentGrid init_latent(std::string_view token, Shape shape,
                       std::string_view label = domain::kInit);

// bit i = uniform_stream(hash_token(token, "mask"))[i] < eta
PerturbationMask build_mask(std::string_view token, Shape shape, double eta);

// Negates the masked entries. Sign flip is an involution, so restore == perturb.
LatentGrid perturb(const LatentGrid& z, const PerturbationMask& m);
LatentGrid restore(const LatentGrid& z, const PerturbationMask& m);

}  // namespace semsteg
