#pragma once

#include <string_view>
#include <vector>

#include "semsteg/determinism.hpp"
#include "semsteg/edict.hpp"
#include "semsteg/latent.hpp"
#include "semsteg/predictor.hpp"
#include "semsteg/schedule.hpp"

namespace semsteg {

struct ReferenceLatent {
  LatentGrid grid;
  Seed64 source_token_hash;
};

// Token-seeded reference: z_D from the token's "ref" stream, then DDIM
// denoising over the full schedule guided by the key and feature embeddings.
// Any reference embedding in `c` is ignored.
ReferenceLatent generate_reference(std::string_view token, const ConditionSet& c,
                                   const NoiseSchedule& sched, const Predictor& pred,
                                   Shape shape);

// Seeded linear projection of pooled statistics of the standardized grid
// (per-channel mean, variance and 4x4 block means), normalized to unit length.
std::vector<double> embed_reference(const ReferenceLatent& r, std::size_t dim);

}  // namespace semsteg
