#pragma once

#include "semsteg/latent.hpp"

namespace semsteg {

inline constexpr double kPsnrCapDb = 100.0;

struct MetricsReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;

  bool operator==(const MetricsReport&) const = default;
};

double mse(const LatentGrid& a, const LatentGrid& b);

// 10 log10(peak^2 / mse), capped at kPsnrCapDb (which also covers mse = 0).
double psnr_from_mse(double mse, double peak);
double psnr(const LatentGrid& a, const LatentGrid& b, double peak);

// Single global window, C1 = (0.01 peak)^2, C2 = (0.03 peak)^2.
double ssim(const LatentGrid& a, const LatentGrid& b, double peak);

// Mean SSIM over all window x window patches of every channel (uniform weights).
double ssim_windowed(const LatentGrid& a, const LatentGrid& b, double peak, std::size_t window);

// `ssim_window` 0 selects the global form.
MetricsReport evaluate(const LatentGrid& estimate, const LatentGrid& truth, double peak,
                       std::size_t ssim_window = 0);

// max - min of the grid, or 1 for a constant grid.
double dynamic_range(const LatentGrid& g);

}  // namespace semsteg
