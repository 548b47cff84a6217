#include "semsteg/link.hpp"

#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/kernels.hpp"

namespace semsteg {

void ChannelConfig::validate() const {
  if (!std::isfinite(snr_db)) throw ValidationError("snr_db", "must be finite");
  if (h == 0.0 || !std::isfinite(h)) throw ValidationError("channel_h", "must be finite and non-zero");
}

SymbolFrame encode(std::span<const double> values) {
  if (values.empty()) throw ValidationError("z", "empty latent");
  const double n = static_cast<double>(values.size());
  const double mean = kernels::parallel::sum(values) / n;
  double ss = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("z", "non-finite latent");
    ss += (v - mean) * (v - mean);
  }
  const double rms = std::sqrt(ss / n);

  SymbolFrame f;
  f.offset = mean;
  f.symbols.resize(values.size());
  if (rms == 0.0) {
    f.scale = 1.0;
    f.degenerate = true;
    for (std::size_t i = 0; i < values.size(); ++i) f.symbols[i] = values[i] - mean;
  } else {
    f.scale = rms;
    for (std::size_t i = 0; i < values.size(); ++i) f.symbols[i] = (values[i] - mean) / rms;
  }
  return f;
}

SymbolFrame encode(const LatentGrid& z) { return encode(z.values()); }

double average_power(std::span<const double> symbols) {
  if (symbols.empty()) return 0.0;
  double p = 0.0;
  for (double s : symbols) p += s * s;
  return p / static_cast<double>(symbols.size());
}

double noise_variance(double signal_power, double snr_db) {
  return signal_power / std::pow(10.0, snr_db / 10.0);
}

SymbolFrame transmit(const SymbolFrame& frame, const ChannelConfig& cfg) {
  cfg.validate();
  SymbolFrame out = frame;
  for (double& s : out.symbols) s *= cfg.h;
  if (cfg.noiseless || frame.symbols.empty()) return out;

  double power = average_power(frame.symbols);
  // A constant frame carries no symbol energy; noise is set against the
  // nominal unit power the encoder targets.
  if (power == 0.0) power = 1.0;
  GaussianSampler noise(cfg.noise_seed);
  if (!cfg.complex_iq) {
    const double sigma = std::sqrt(noise_variance(power, cfg.snr_db));
    for (double& s : out.symbols) s += sigma * noise.next();
  } else {
    // Each I/Q sample has power 2P and complex noise variance 2P/SNR, split
    // evenly between the two components. An odd trailing symbol is sent
    // against a zero Q component.
    const double sigma_c2 = noise_variance(2.0 * power, cfg.snr_db);
    const double sigma = std::sqrt(sigma_c2 / 2.0);
    for (std::size_t i = 0; i < out.symbols.size(); i += 2) {
      const double ni = sigma * noise.next();
      const double nq = sigma * noise.next();
      out.symbols[i] += ni;
      if (i + 1 < out.symbols.size()) out.symbols[i + 1] += nq;
    }
  }
  return out;
}

std::vector<double> decode_values(const SymbolFrame& frame, const ChannelConfig& cfg) {
  if (cfg.h == 0.0) throw ValidationError("channel_h", "cannot equalize h = 0");
  std::vector<double> v(frame.symbols.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = frame.symbols[i] / cfg.h * frame.scale + frame.offset;
  return v;
}

LatentGrid decode(const SymbolFrame& frame, const ChannelConfig& cfg, Shape shape) {
  return LatentGrid(shape, decode_values(frame, cfg));
}

double measured_snr_db(std::span<const double> sent, std::span<const double> received, double h) {
  if (sent.size() != received.size() || sent.empty()) {
    throw ValidationError("symbols", "length mismatch");
  }
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    const double clean = h * sent[i];
    ps += clean * clean;
    pn += (received[i] - clean) * (received[i] - clean);
  }
  return 10.0 * std::log10(ps / pn);
}

}  // namespace semsteg
