#pragma once

#include <stdexcept>
#include <string>

namespace semsteg {

// Bad input or configuration. `field()` names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A sampler produced a non-finite value. `step()` is the diffusion step index.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(int step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace semsteg
