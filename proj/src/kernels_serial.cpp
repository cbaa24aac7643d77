#include "sine/kernels.hpp"

#include <cassert>

namespace sine::kernels::serial {

double dot(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
  assert(x.size() == y.size());
  double sum = 0.0;
  if (w.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  } else {
    assert(w.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * x[i] * y[i];
  }
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + beta * y[i];
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> out) {
  assert(d.size() == x.size() && out.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = d[i] * x[i];
}

void gemv(const MatrixView& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.cols && y.size() == a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* row = a.data.data() + i * a.cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

void gemv_t(const MatrixView& a, std::span<const double> y, std::span<double> x) {
  assert(y.size() == a.rows && x.size() == a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) x[j] = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* row = a.data.data() + i * a.cols;
    for (std::size_t j = 0; j < a.cols; ++j) x[j] += row[j] * y[i];
  }
}

}  // namespace sine::kernels::serial
