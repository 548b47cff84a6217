#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace semsteg {

struct Shape {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t size() const noexcept { return channels * height * width; }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

// C x H x W grid of doubles, row-major (channel slowest). Carries secret,
// noise, reference and stego latents alike.
class LatentGrid {
 public:
  LatentGrid() = default;
  explicit LatentGrid(Shape shape, double fill = 0.0);
  LatentGrid(Shape shape, std::vector<double> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t c, std::size_t y, std::size_t x) {
    return data_[(c * shape_.height + y) * shape_.width + x];
  }
  double at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * shape_.height + y) * shape_.width + x];
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool all_finite() const noexcept;
  bool operator==(const LatentGrid&) const = default;

 private:
  Shape shape_{};
  std::vector<double> data_;
};

void require_same_shape(const LatentGrid& a, const LatentGrid& b, const char* what);

// Stack two grids along the channel axis, and the inverse split.
LatentGrid concat_channels(const LatentGrid& a, const LatentGrid& b);
std::pair<LatentGrid, LatentGrid> split_channels(const LatentGrid& stacked);

double max_abs_diff(const LatentGrid& a, const LatentGrid& b);
// ||a - b|| / ||b||
double relative_distance(const LatentGrid& a, const LatentGrid& b);

}  // namespace semsteg
