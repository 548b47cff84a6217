#pragma once

// Analog semantic link: affine power-normalizing codec plus a scalar-gain
// AWGN channel.

#include <span>
#include <vector>

#include "semsteg/determinism.hpp"
#include "semsteg/latent.hpp"

namespace semsteg {

struct ChannelConfig {
  double snr_db = 10.0;
  double h = 1.0;
  Seed64 noise_seed{};
  bool noiseless = false;   // sigma = 0
  bool complex_iq = false;  // pair symbols into I/Q samples

  void validate() const;
};

struct SymbolFrame {
  std::vector<double> symbols;
  double scale = 1.0;
  double offset = 0.0;
  bool degenerate = false;  // constant input; the value travels in `offset`
};

// symbols = (x - mean) / rms_deviation
SymbolFrame encode(std::span<const double> values);
SymbolFrame encode(const LatentGrid& z);

double average_power(std::span<const double> symbols);

// Noise variance for a frame of the given average power.
double noise_variance(double signal_power, double snr_db);

// y = h s + n with n ~ N(0, sigma^2), sigma^2 = P / 10^(snr/10).
SymbolFrame transmit(const SymbolFrame& frame, const ChannelConfig& cfg);

std::vector<double> decode_values(const SymbolFrame& frame, const ChannelConfig& cfg);
LatentGrid decode(const SymbolFrame& frame, const ChannelConfig& cfg, Shape shape);

// 10 log10(mean((h s)^2) / mean((y - h s)^2))
double measured_snr_db(std::span<const double> sent, std::span<const double> received, double h);

}  // namespace semsteg
