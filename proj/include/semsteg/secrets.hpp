#pragma once

#include <filesystem>

#include "semsteg/determinism.hpp"
#include "semsteg/latent.hpp"

namespace semsteg {

// Seeded structured test content: a few smooth sinusoidal ridges per channel
// plus one straight step edge.
LatentGrid synthetic_secret(Seed64 seed, Shape shape);

// Binary (P5) or ASCII (P2) PGM as a 1 x H x W grid scaled to [0, 1].
LatentGrid load_pgm(const std::filesystem::path& path);

}  // namespace semsteg
