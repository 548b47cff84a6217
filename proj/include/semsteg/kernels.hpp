#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `serial::` and an OpenMP version in `parallel::`. The parallel versions are
// bit-identical to the serial ones, except the reductions, which use a fixed
// block decomposition so their result does not depend on the thread count.

#include <cstddef>
#include <span>

namespace semsteg::kernels {

// Below this many multiply-adds the OpenMP region is skipped.
inline constexpr std::size_t kParallelMinWork = std::size_t{1} << 15;
// Block length of the deterministic reductions.
inline constexpr std::size_t kReduceBlock = 4096;

namespace serial {

// y = W x, W row-major rows x cols.
void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
void tanh_inplace(std::span<double> v);
// out = a * x + b * y
void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out);
double sum(std::span<const double> v);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

}  // namespace serial

namespace parallel {

void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
void tanh_inplace(std::span<double> v);
void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out);
double sum(std::span<const double> v);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

}  // namespace parallel

}  // namespace semsteg::kernels
