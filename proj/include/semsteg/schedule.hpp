#pragma once

#include <vector>

namespace semsteg {

// Linear-beta diffusion schedule with the per-step coefficients used by the
// DDIM and coupled samplers. Step t (1..T) moves between alpha_bar(t-1) and
// alpha_bar(t); alpha_bar(0) = 1 is the clean end.
//
// Denoising step:  z_{t-1} = a(t) z_t + b(t) eps
// Noising step:    z_t     = gamma(t) z_{t-1} - omega(t) eps
class NoiseSchedule {
 public:
  NoiseSchedule(int steps, double beta_start, double beta_end);

  int steps() const noexcept { return steps_; }
  double beta_start() const noexcept { return beta_start_; }
  double beta_end() const noexcept { return beta_end_; }

  double alpha_bar(int t) const { return alpha_bar_.at(static_cast<std::size_t>(t)); }
  double a(int t) const { return a_.at(index(t)); }
  double b(int t) const { return b_.at(index(t)); }
  double gamma(int t) const { return gamma_.at(index(t)); }
  double omega(int t) const { return omega_.at(index(t)); }

  const std::vector<double>& alpha_bar() const noexcept { return alpha_bar_; }

 private:
  std::size_t index(int t) const;

  int steps_;
  double beta_start_;
  double beta_end_;
  std::vector<double> alpha_bar_;  // T + 1 entries
  std::vector<double> a_, b_, gamma_, omega_;  // T entries, step t at t - 1
};

inline constexpr double kDefaultBetaStart = 1e-4;
inline constexpr double kDefaultBetaEnd = 2e-2;

NoiseSchedule build_schedule(int steps, double beta_start = kDefaultBetaStart,
                             double beta_end = kDefaultBetaEnd);

// Product of gamma(t) over all steps; equals sqrt(alpha_bar(T)).
double telescoped_gain(const NoiseSchedule& s);

}  // namespace semsteg
