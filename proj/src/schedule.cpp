#include "semsteg/schedule.hpp"

#include <cmath>

#include "semsteg/errors.hpp"

namespace semsteg {

NoiseSchedule::NoiseSchedule(int steps, double beta_start, double beta_end)
    : steps_(steps), beta_start_(beta_start), beta_end_(beta_end) {
  if (steps < 1) throw ValidationError("steps", "must be >= 1");
  if (!(beta_start > 0.0 && beta_start < 1.0)) throw ValidationError("beta_start", "must be in (0,1)");
  if (!(beta_end > 0.0 && beta_end < 1.0)) throw ValidationError("beta_end", "must be in (0,1)");
  if (beta_start > beta_end) throw ValidationError("beta_start", "must not exceed beta_end");

  const auto n = static_cast<std::size_t>(steps);
  alpha_bar_.resize(n + 1);
  a_.resize(n);
  b_.resize(n);
  gamma_.resize(n);
  omega_.resize(n);

  alpha_bar_[0] = 1.0;
  for (std::size_t t = 1; t <= n; ++t) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(t - 1) / static_cast<double>(n - 1);
    const double beta = beta_start + (beta_end - beta_start) * frac;
    alpha_bar_[t] = alpha_bar_[t - 1] * (1.0 - beta);
  }
  for (std::size_t t = 1; t <= n; ++t) {
    const double prev = alpha_bar_[t - 1];
    const double cur = alpha_bar_[t];
    const double a = std::sqrt(prev / cur);
    const double b = std::sqrt(1.0 - prev) - a * std::sqrt(1.0 - cur);
    a_[t - 1] = a;
    b_[t - 1] = b;
    gamma_[t - 1] = 1.0 / a;
    omega_[t - 1] = b / a;
  }
}

std::size_t NoiseSchedule::index(int t) const {
  if (t < 1 || t > steps_) {
    throw ValidationError("t", "step " + std::to_string(t) + " outside 1.." + std::to_string(steps_));
  }
  return static_cast<std::size_t>(t - 1);
}

NoiseSchedule build_schedule(int steps, double beta_start, double beta_end) {
  return NoiseSchedule(steps, beta_start, beta_end);
}

double telescoped_gain(const NoiseSchedule& s) {
  double g = 1.0;
  for (int t = 1; t <= s.steps(); ++t) g *= s.gamma(t);
  return g;
}

}  // namespace semsteg
