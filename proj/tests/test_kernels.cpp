#include <gtest/gtest.h>

#include <cmath>
#ifdef _OPENMP
#include <omp.h>
#endif
#include <vector>

#include "semsteg/determinism.hpp"
#include "semsteg/kernels.hpp"

namespace k = semsteg::kernels;
using semsteg::gaussian_stream;
using semsteg::Seed64;

TEST(Kernels, ParallelMatvecIsBitIdenticalToSerial) {
  for (std::size_t rows : {3u, 256u, 700u}) {
    const std::size_t cols = 513;
    const auto w = gaussian_stream(Seed64{rows}, rows * cols);
    const auto x = gaussian_stream(Seed64{rows + 1}, cols);
    std::vector<double> ys(rows), yp(rows);
    k::serial::matvec(w, rows, cols, x, ys);
    k::parallel::matvec(w, rows, cols, x, yp);
    EXPECT_EQ(ys, yp) << rows;
  }
}

TEST(Kernels, ParallelElementwiseIsBitIdenticalToSerial) {
  const std::size_t n = 100'000;
  const auto x = gaussian_stream(Seed64{1}, n);
  const auto y = gaussian_stream(Seed64{2}, n);
  std::vector<double> a(n), b(n);
  k::serial::axpby(1.07, x, -0.3, y, a);
  k::parallel::axpby(1.07, x, -0.3, y, b);
  EXPECT_EQ(a, b);

  std::vector<double> ts = x, tp = x;
  k::serial::tanh_inplace(ts);
  k::parallel::tanh_inplace(tp);
  EXPECT_EQ(ts, tp);
}

TEST(Kernels, BlockedReductionsMatchSerialOrder) {
  for (std::size_t n : {0u, 1u, 4095u, 4096u, 4097u, 1'000'003u}) {
    const auto a = gaussian_stream(Seed64{n + 5}, n);
    const auto b = gaussian_stream(Seed64{n + 6}, n);
    const double s = k::serial::sum_sq_diff(a, b);
    const double p = k::parallel::sum_sq_diff(a, b);
    EXPECT_NEAR(p, s, 1e-12 * std::max(1.0, s)) << n;
    EXPECT_NEAR(k::parallel::sum(a), k::serial::sum(a), 1e-9) << n;
    if (n <= k::kReduceBlock) EXPECT_EQ(p, s) << "single block must be the serial loop";
  }
}

TEST(Kernels, BlockedReductionIndependentOfThreadCount) {
  const auto a = gaussian_stream(Seed64{11}, 500'000);
  const auto b = gaussian_stream(Seed64{12}, 500'000);
  const double ref = k::parallel::sum_sq_diff(a, b);
#ifdef _OPENMP
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(k::parallel::sum_sq_diff(a, b), ref) << threads;
  }
#endif
}
