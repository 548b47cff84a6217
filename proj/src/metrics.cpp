#include "semsteg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/kernels.hpp"

namespace semsteg {

namespace {

void check_peak(double peak) {
  if (!(peak > 0.0)) throw ValidationError("peak", "must be > 0");
}

double ssim_formula(double mu_a, double mu_b, double var_a, double var_b, double cov, double peak) {
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
         ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

}  // namespace

double mse(const LatentGrid& a, const LatentGrid& b) {
  require_same_shape(a, b, "mse");
  if (a.size() == 0) return 0.0;
  return kernels::parallel::sum_sq_diff(a.values(), b.values()) / static_cast<double>(a.size());
}

double psnr_from_mse(double mse_value, double peak) {
  check_peak(peak);
  if (mse_value <= 0.0) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mse_value));
}

double psnr(const LatentGrid& a, const LatentGrid& b, double peak) {
  check_peak(peak);
  return psnr_from_mse(mse(a, b), peak);
}

double ssim(const LatentGrid& a, const LatentGrid& b, double peak) {
  require_same_shape(a, b, "ssim");
  check_peak(peak);
  if (a == b) return 1.0;
  const double n = static_cast<double>(a.size());
  const double mu_a = kernels::serial::sum(a.values()) / n;
  const double mu_b = kernels::serial::sum(b.values()) / n;
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mu_a;
    const double db = b[i] - mu_b;
    var_a += da * da;
    var_b += db * db;
    cov += da * db;
  }
  return ssim_formula(mu_a, mu_b, var_a / n, var_b / n, cov / n, peak);
}

double ssim_windowed(const LatentGrid& a, const LatentGrid& b, double peak, std::size_t window) {
  require_same_shape(a, b, "ssim");
  check_peak(peak);
  const Shape& s = a.shape();
  if (window == 0 || window > s.height || window > s.width) {
    throw ValidationError("ssim_window", "window " + std::to_string(window) + " does not fit " + s.str());
  }
  const double n = static_cast<double>(window * window);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t y0 = 0; y0 + window <= s.height; ++y0) {
      for (std::size_t x0 = 0; x0 + window <= s.width; ++x0) {
        double sa = 0, sb = 0;
        for (std::size_t y = y0; y < y0 + window; ++y)
          for (std::size_t x = x0; x < x0 + window; ++x) {
            sa += a.at(c, y, x);
            sb += b.at(c, y, x);
          }
        const double mu_a = sa / n, mu_b = sb / n;
        double va = 0, vb = 0, cv = 0;
        for (std::size_t y = y0; y < y0 + window; ++y)
          for (std::size_t x = x0; x < x0 + window; ++x) {
            const double da = a.at(c, y, x) - mu_a;
            const double db = b.at(c, y, x) - mu_b;
            va += da * da;
            vb += db * db;
            cv += da * db;
          }
        total += ssim_formula(mu_a, mu_b, va / n, vb / n, cv / n, peak);
        ++count;
      }
    }
  }
  return total / static_cast<double>(count);
}

MetricsReport evaluate(const LatentGrid& estimate, const LatentGrid& truth, double peak,
                       std::size_t ssim_window) {
  MetricsReport r;
  r.mse = mse(estimate, truth);
  r.psnr_db = psnr_from_mse(r.mse, peak);
  r.ssim = ssim_window == 0 ? ssim(estimate, truth, peak)
                            : ssim_windowed(estimate, truth, peak, ssim_window);
  return r;
}

double dynamic_range(const LatentGrid& g) {
  if (g.size() == 0) return 1.0;
  const auto [lo, hi] = std::minmax_element(g.values().begin(), g.values().end());
  const double r = *hi - *lo;
  return r > 0.0 ? r : 1.0;
}

}  // namespace semsteg
