#pragma once

// Portable hashing and seeded random streams. Everything here is a pure
// function of its inputs so transmitter, receiver and tests regenerate the
// same values from the same token.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semsteg {

struct Seed64 {
  std::uint64_t value = 0;
  auto operator<=>(const Seed64&) const = default;
};

std::string to_hex(Seed64 s);
Seed64 seed_from_hex(std::string_view hex);

// Separation labels for streams derived from a single token.
namespace domain {
inline constexpr std::string_view kInit = "init";
inline constexpr std::string_view kMask = "mask";
inline constexpr std::string_view kRef = "ref";
inline constexpr std::string_view kEmbed = "embed";
inline constexpr std::string_view kTrial = "trial";
inline constexpr std::string_view kWeights = "weights";
}  // namespace domain

// First 8 bytes (big-endian) of SHA-256(token || 0x1F || domain).
// An empty domain hashes the token alone, with no separator byte.
Seed64 hash_token(std::string_view token, std::string_view domain);

// SplitMix64. Not thread-safe; copy it instead of sharing.
class RandomStream {
 public:
  explicit RandomStream(Seed64 seed) : state_(seed.value) {}

  std::uint64_t next_u64();
  // (next_u64() >> 11) * 2^-53, in [0, 1).
  double next_uniform();
  void discard(std::uint64_t n);

  std::uint64_t state() const noexcept { return state_; }
  std::uint64_t draws_emitted() const noexcept { return draws_; }

 private:
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

// Box-Muller over consecutive uniform pairs; both outputs of a pair are
// returned in order (cos branch first), so a sampler can be drained in
// arbitrary chunk sizes without changing the sequence.
class GaussianSampler {
 public:
  explicit GaussianSampler(Seed64 seed) : uniform_(seed) {}

  double next();
  void fill(std::span<double> out);

 private:
  RandomStream uniform_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::vector<double> uniform_stream(Seed64 seed, std::size_t n);
std::vector<double> gaussian_stream(Seed64 seed, std::size_t n);

}  // namespace semsteg
