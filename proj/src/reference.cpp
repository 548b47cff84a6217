#include "semsteg/reference.hpp"

#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/token.hpp"

namespace semsteg {

ReferenceLatent generate_reference(std::string_view token, const ConditionSet& c,
                                   const NoiseSchedule& sched, const Predictor& pred,
                                   Shape shape) {
  const LatentGrid z_d = init_latent(token, shape, domain::kRef);
  const ConditionSet structural = c.without_reference();
  SamplerParams full{1.0, 1.0};
  LatentGrid grid = ddim_sample(z_d, sched, pred, &structural, DdimDirection::Denoising, full);
  return {std::move(grid), hash_token(token, domain::kRef)};
}

namespace {

constexpr std::size_t kPoolGrid = 4;

// Statistics of the globally standardized grid: per channel the mean, the
// variance minus one, and a 4x4 grid of block means relative to the channel
// mean.
std::vector<double> pooled_statistics(const LatentGrid& g) {
  const Shape& s = g.shape();
  const auto v = g.values();
  const double n = static_cast<double>(v.size());
  double gmean = 0.0;
  for (double x : v) gmean += x;
  gmean /= n;
  double gvar = 0.0;
  for (double x : v) gvar += (x - gmean) * (x - gmean);
  const double gsd = gvar > 0.0 ? std::sqrt(gvar / n) : 1.0;
  auto at = [&](std::size_t c, std::size_t y, std::size_t x) { return (g.at(c, y, x) - gmean) / gsd; };

  const std::size_t hw = s.height * s.width;
  std::vector<double> stats;
  stats.reserve(s.channels * (2 + kPoolGrid * kPoolGrid));
  for (std::size_t c = 0; c < s.channels; ++c) {
    double mean = 0.0;
    for (std::size_t y = 0; y < s.height; ++y)
      for (std::size_t x = 0; x < s.width; ++x) mean += at(c, y, x);
    mean /= static_cast<double>(hw);
    double var = 0.0;
    for (std::size_t y = 0; y < s.height; ++y)
      for (std::size_t x = 0; x < s.width; ++x) var += (at(c, y, x) - mean) * (at(c, y, x) - mean);
    var /= static_cast<double>(hw);
    stats.push_back(mean);
    stats.push_back(var - 1.0);

    double block[kPoolGrid * kPoolGrid] = {};
    double count[kPoolGrid * kPoolGrid] = {};
    for (std::size_t y = 0; y < s.height; ++y) {
      for (std::size_t x = 0; x < s.width; ++x) {
        const std::size_t q = (y * kPoolGrid / s.height) * kPoolGrid + x * kPoolGrid / s.width;
        block[q] += at(c, y, x);
        count[q] += 1.0;
      }
    }
    for (std::size_t q = 0; q < kPoolGrid * kPoolGrid; ++q) {
      stats.push_back(count[q] > 0 ? block[q] / count[q] - mean : 0.0);
    }
  }
  return stats;
}

}  // namespace

std::vector<double> embed_reference(const ReferenceLatent& r, std::size_t dim) {
  if (dim == 0) throw ValidationError("embed_dim", "must be >= 1");
  const auto stats = pooled_statistics(r.grid);
  const auto proj = gaussian_stream(hash_token("reference-projection", domain::kWeights),
                                    dim * stats.size());
  std::vector<double> e(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < stats.size(); ++j) e[i] += proj[i * stats.size() + j] * stats[j];
  }
  double n = 0.0;
  for (double v : e) n += v * v;
  n = std::sqrt(n);
  if (n == 0.0) {
    // Degenerate (constant) reference: fall back to the first projection column.
    for (std::size_t i = 0; i < dim; ++i) e[i] = proj[i * stats.size()];
    n = 0.0;
    for (double v : e) n += v * v;
    n = std::sqrt(n);
  }
  for (double& v : e) v /= n;
  return e;
}

}  // namespace semsteg
