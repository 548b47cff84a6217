#include "semsteg/secrets.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "semsteg/errors.hpp"

namespace semsteg {

LatentGrid synthetic_secret(Seed64 seed, Shape shape) {
  if (shape.size() == 0) throw ValidationError("shape", "zero-size latent");
  RandomStream rs(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rs.next_uniform(); };
  constexpr double kTau = 2.0 * std::numbers::pi;

  LatentGrid g(shape);
  for (std::size_t c = 0; c < shape.channels; ++c) {
    struct Ridge { double amp, fx, fy, phase; };
    Ridge ridges[3];
    for (auto& r : ridges) r = {uniform(0.3, 1.0), uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(0.0, kTau)};
    const double angle = uniform(0.0, kTau);
    const double nx = std::cos(angle), ny = std::sin(angle);
    const double cut = uniform(-0.3, 0.3);
    const double step = uniform(0.5, 1.0);

    for (std::size_t y = 0; y < shape.height; ++y) {
      for (std::size_t x = 0; x < shape.width; ++x) {
        const double u = (static_cast<double>(x) + 0.5) / static_cast<double>(shape.width) - 0.5;
        const double v = (static_cast<double>(y) + 0.5) / static_cast<double>(shape.height) - 0.5;
        double val = 0.0;
        for (const auto& r : ridges) val += r.amp * std::sin(kTau * (r.fx * u + r.fy * v) + r.phase);
        val += (u * nx + v * ny > cut) ? step : -step;
        g.at(c, y, x) = 0.5 * val;
      }
    }
  }
  return g;
}

namespace {

std::string next_token(std::istream& in) {
  std::string tok;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

}  // namespace

LatentGrid load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("secret", "cannot open " + path.string());
  const std::string magic = next_token(in);
  if (magic != "P5" && magic != "P2") throw ValidationError("secret", "not a PGM file: " + path.string());
  std::size_t w = 0, h = 0;
  unsigned maxval = 0;
  try {
    w = std::stoul(next_token(in));
    h = std::stoul(next_token(in));
    maxval = static_cast<unsigned>(std::stoul(next_token(in)));
  } catch (const std::exception&) {
    throw ValidationError("secret", "malformed PGM header in " + path.string());
  }
  if (w == 0 || h == 0 || maxval == 0 || maxval > 65535) {
    throw ValidationError("secret", "unsupported PGM dimensions or maxval");
  }
  LatentGrid g(Shape{1, h, w});
  for (std::size_t i = 0; i < g.size(); ++i) {
    unsigned v = 0;
    if (magic == "P2") {
      const std::string tok = next_token(in);
      if (tok.empty()) throw ValidationError("secret", "truncated PGM data");
      v = static_cast<unsigned>(std::stoul(tok));
    } else if (maxval < 256) {
      const int b = in.get();
      if (b == EOF) throw ValidationError("secret", "truncated PGM data");
      v = static_cast<unsigned>(b);
    } else {
      const int hi = in.get();
      const int lo = in.get();
      if (lo == EOF) throw ValidationError("secret", "truncated PGM data");
      v = (static_cast<unsigned>(hi) << 8) | static_cast<unsigned>(lo);
    }
    g[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return g;
}

}  // namespace semsteg
