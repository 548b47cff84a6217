#include "semsteg/kernels.hpp"

#include <cmath>
#include <vector>

namespace semsteg::kernels {

namespace serial {

void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = w.data() + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void tanh_inplace(std::span<double> v) {
  for (double& e : v) e = std::tanh(e);
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
}

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double e : v) acc += e;
  return acc;
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace serial

namespace parallel {

namespace {

// Partial sums over fixed blocks, combined in block order.
template <typename Term>
double blocked_reduce(std::size_t n, Term term) {
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static) if (n >= kParallelMinWork)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
    const std::size_t hi = std::min(n, lo + kReduceBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(blk)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  const auto nr = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelMinWork)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    const double* row = w.data() + static_cast<std::size_t>(r) * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

void tanh_inplace(std::span<double> v) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) if (v.size() >= kParallelMinWork)
  for (std::ptrdiff_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = std::tanh(v[static_cast<std::size_t>(i)]);
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelMinWork)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = a * x[k] + b * y[k];
  }
}

double sum(std::span<const double> v) {
  return blocked_reduce(v.size(), [&](std::size_t i) { return v[i]; });
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  return blocked_reduce(a.size(), [&](std::size_t i) {
    const double d = a[i] - b[i];
    return d * d;
  });
}

}  // namespace parallel

}  // namespace semsteg::kernels
