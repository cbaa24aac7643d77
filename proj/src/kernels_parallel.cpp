#include "sine/kernels.hpp"

#include <omp.h>

#include <cassert>
#include <vector>

namespace sine::kernels::parallel {
namespace {

using Index = std::ptrdiff_t;

inline bool go_parallel(std::size_t work) { return work >= kParallelThreshold; }

}  // namespace

double dot(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
  assert(x.size() == y.size());
  assert(w.empty() || w.size() == x.size());
  const std::size_t n = x.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  const bool weighted = !w.empty();

#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (Index b = 0; b < static_cast<Index>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double sum = 0.0;
    if (weighted) {
      for (std::size_t i = lo; i < hi; ++i) sum += w[i] * x[i] * y[i];
    } else {
      for (std::size_t i = lo; i < hi; ++i) sum += x[i] * y[i];
    }
    partial[static_cast<std::size_t>(b)] = sum;
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (Index i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  assert(x.size() == y.size());
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (Index i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> out) {
  assert(d.size() == x.size() && out.size() == x.size());
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (Index i = 0; i < n; ++i) out[i] = d[i] * x[i];
}

void gemv(const MatrixView& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.cols && y.size() == a.rows);
  const Index rows = static_cast<Index>(a.rows);
#pragma omp parallel for schedule(static) if (go_parallel(a.rows * a.cols))
  for (Index i = 0; i < rows; ++i) {
    const double* row = a.data.data() + static_cast<std::size_t>(i) * a.cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

// Each thread owns a contiguous column range and sweeps all rows in order,
// so every x[j] sees the same summation order as the serial loop.
void gemv_t(const MatrixView& a, std::span<const double> y, std::span<double> x) {
  assert(y.size() == a.rows && x.size() == a.cols);
  const std::size_t cols = a.cols;
#pragma omp parallel if (go_parallel(a.rows * a.cols))
  {
    const std::size_t nthreads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t chunk = (cols + nthreads - 1) / nthreads;
    const std::size_t lo = std::min(cols, tid * chunk);
    const std::size_t hi = std::min(cols, lo + chunk);
    for (std::size_t j = lo; j < hi; ++j) x[j] = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
      const double* row = a.data.data() + i * cols;
      const double yi = y[i];
      for (std::size_t j = lo; j < hi; ++j) x[j] += row[j] * yi;
    }
  }
}

}  // namespace sine::kernels::parallel
