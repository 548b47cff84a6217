#include "semsteg/latent.hpp"

#include <algorithm>
#include <cmath>

#include "semsteg/errors.hpp"

namespace semsteg {

std::string Shape::str() const {
  return std::to_string(channels) + "x" + std::to_string(height) + "x" + std::to_string(width);
}

LatentGrid::LatentGrid(Shape shape, double fill) : shape_(shape), data_(shape.size(), fill) {}

LatentGrid::LatentGrid(Shape shape, std::vector<double> values)
    : shape_(shape), data_(std::move(values)) {
  if (data_.size() != shape_.size()) {
    throw ValidationError("shape", "expected " + std::to_string(shape_.size()) + " values, got " +
                                       std::to_string(data_.size()));
  }
}

bool LatentGrid::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_shape(const LatentGrid& a, const LatentGrid& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw ValidationError(what, "shape mismatch " + a.shape().str() + " vs " + b.shape().str());
  }
}

LatentGrid concat_channels(const LatentGrid& a, const LatentGrid& b) {
  if (a.shape().height != b.shape().height || a.shape().width != b.shape().width) {
    throw ValidationError("shape", "spatial mismatch " + a.shape().str() + " vs " + b.shape().str());
  }
  Shape s{a.shape().channels + b.shape().channels, a.shape().height, a.shape().width};
  std::vector<double> v;
  v.reserve(s.size());
  v.insert(v.end(), a.values().begin(), a.values().end());
  v.insert(v.end(), b.values().begin(), b.values().end());
  return LatentGrid(s, std::move(v));
}

std::pair<LatentGrid, LatentGrid> split_channels(const LatentGrid& stacked) {
  const Shape& s = stacked.shape();
  if (s.channels % 2 != 0) throw ValidationError("shape", "odd channel count " + s.str());
  Shape half{s.channels / 2, s.height, s.width};
  auto mid = stacked.values().begin() + static_cast<std::ptrdiff_t>(half.size());
  return {LatentGrid(half, std::vector<double>(stacked.values().begin(), mid)),
          LatentGrid(half, std::vector<double>(mid, stacked.values().end()))};
}

double max_abs_diff(const LatentGrid& a, const LatentGrid& b) {
  require_same_shape(a, b, "grid");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double relative_distance(const LatentGrid& a, const LatentGrid& b) {
  require_same_shape(a, b, "grid");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace semsteg
