#include "semsteg/determinism.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "semsteg/errors.hpp"

namespace semsteg {

namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
constexpr unsigned char kSeparator = 0x1F;

}  // namespace

std::string to_hex(Seed64 s) {
  std::array<char, 17> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + 16, s.value, 16);
  std::string digits(buf.data(), end);
  return std::string(16 - digits.size(), '0') + digits;
}

Seed64 seed_from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size() || hex.empty()) {
    throw ValidationError("seed", "not a 64-bit hex value: " + std::string(hex));
  }
  return Seed64{v};
}

Seed64 hash_token(std::string_view token, std::string_view domain) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw std::runtime_error("EVP_MD_CTX_new failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, token.data(), token.size()) == 1;
  if (ok && !domain.empty()) {
    ok = EVP_DigestUpdate(ctx, &kSeparator, 1) == 1 &&
         EVP_DigestUpdate(ctx, domain.data(), domain.size()) == 1;
  }
  ok = ok && EVP_DigestFinal_ex(ctx, digest.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok || len < 8) throw std::runtime_error("SHA-256 failed");

  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | digest[static_cast<std::size_t>(i)];
  return Seed64{v};
}

std::uint64_t RandomStream::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  ++draws_;
  return z ^ (z >> 31);
}

double RandomStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

void RandomStream::discard(std::uint64_t n) {
  // SplitMix64 state advances by a constant per draw.
  state_ += n * 0x9E3779B97F4A7C15ULL;
  draws_ += n;
}

double GaussianSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform_.next_uniform();
  const double u2 = uniform_.next_uniform();
  if (u1 == 0.0) u1 = kTwoPow53Inv;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void GaussianSampler::fill(std::span<double> out) {
  for (double& v : out) v = next();
}

std::vector<double> uniform_stream(Seed64 seed, std::size_t n) {
  RandomStream rs(seed);
  std::vector<double> out(n);
  for (double& v : out) v = rs.next_uniform();
  return out;
}

std::vector<double> gaussian_stream(Seed64 seed, std::size_t n) {
  GaussianSampler g(seed);
  std::vector<double> out(n);
  g.fill(out);
  return out;
}

}  // namespace semsteg
