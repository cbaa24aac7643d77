#pragma once

// Vector kernels used by every solver. Two implementations share one
// contract:
//
//   serial::   plain loops, kept as the reference for tests and benchmarks
//   parallel:: OpenMP versions used by the library
//
// Reductions in parallel:: are computed over fixed-size blocks whose partial
// sums are combined in block order, so results do not depend on the thread
// count. Matrix-vector products accumulate each output entry in the same
// order as the serial loop and are bit-identical to it.

#include <cstddef>
#include <span>

namespace sine::kernels {

/// Row-major dense matrix view.
struct MatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

namespace serial {
/// sum_i w_i x_i y_i; empty `w` means unit weights.
double dot(std::span<const double> x, std::span<const double> y, std::span<const double> w = {});
void axpy(double alpha, std::span<const double> x, std::span<double> y);  // y += alpha*x
void xpby(std::span<const double> x, double beta, std::span<double> y);   // y = x + beta*y
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> out);
void gemv(const MatrixView& a, std::span<const double> x, std::span<double> y);    // y = A x
void gemv_t(const MatrixView& a, std::span<const double> y, std::span<double> x);  // x = A^T y
}  // namespace serial

namespace parallel {
double dot(std::span<const double> x, std::span<const double> y, std::span<const double> w = {});
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> out);
void gemv(const MatrixView& a, std::span<const double> x, std::span<double> y);
void gemv_t(const MatrixView& a, std::span<const double> y, std::span<double> x);
}  // namespace parallel

/// Reduction block length for parallel::dot.
inline constexpr std::size_t kReductionBlock = 512;
/// Below this length parallel:: kernels do not open a parallel region.
inline constexpr std::size_t kParallelThreshold = 8192;

using parallel::axpy;
using parallel::dot;
using parallel::gemv;
using parallel::gemv_t;
using parallel::hadamard;
using parallel::xpby;

}  // namespace sine::kernels
