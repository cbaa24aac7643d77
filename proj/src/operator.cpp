#include "sine/operator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>

#include "sine/errors.hpp"

namespace sine {

InnerProductSpace::InnerProductSpace(std::vector<double> weights) : dim_(weights.size()), weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(std::isfinite(weights_[i]) && weights_[i] > 0.0)) {
      throw InputError("inner-product weight " + std::to_string(i) + " is not a positive finite number");
    }
  }
}

InnerProductSpace InnerProductSpace::uniform_quadrature(std::size_t n) {
  if (n == 0) throw InputError("quadrature grid must be non-empty");
  return InnerProductSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double InnerProductSpace::dot(std::span<const double> u, std::span<const double> v) const {
  if (u.size() != dim_ || v.size() != dim_) {
    throw InputError("inner product of vectors of length " + std::to_string(u.size()) + " and " +
                     std::to_string(v.size()) + " in a space of dimension " + std::to_string(dim_));
  }
  return kernels::dot(u, v, weights_);
}

double InnerProductSpace::norm(std::span<const double> u) const { return std::sqrt(std::max(0.0, dot(u, u))); }

namespace {

struct DenseBackend {
  std::size_t rows;
  std::size_t cols;
  std::vector<double> data;
};

struct DiagonalBackend {
  std::vector<double> entries;
};

struct MatrixFreeBackend {
  LinearOperator::ApplyFn forward;
  LinearOperator::ApplyFn adjoint;
};

void check_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InputError(std::string(what) + " entry " + std::to_string(i) + " is not finite");
  }
}

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + ": expected length " + std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

struct LinearOperator::Impl {
  InnerProductSpace domain;
  InnerProductSpace range;
  std::variant<DenseBackend, DiagonalBackend, MatrixFreeBackend> backend;
};

LinearOperator LinearOperator::dense(std::size_t rows, std::size_t cols, std::vector<double> row_major,
                                     InnerProductSpace domain, InnerProductSpace range) {
  if (rows == 0 || cols == 0) throw InputError("dense operator needs positive dimensions");
  if (row_major.size() != rows * cols) {
    throw InputError("dense operator " + std::to_string(rows) + "x" + std::to_string(cols) + " given " +
                     std::to_string(row_major.size()) + " entries");
  }
  if (domain.dim() != cols || range.dim() != rows) throw InputError("dense operator spaces do not match its shape");
  check_finite(row_major, "matrix");
  return LinearOperator(std::make_shared<const Impl>(
      Impl{std::move(domain), std::move(range), DenseBackend{rows, cols, std::move(row_major)}}));
}

LinearOperator LinearOperator::dense(std::size_t rows, std::size_t cols, std::vector<double> row_major) {
  return dense(rows, cols, std::move(row_major), InnerProductSpace(cols), InnerProductSpace(rows));
}

LinearOperator LinearOperator::diagonal(std::vector<double> entries, InnerProductSpace space) {
  if (entries.empty()) throw InputError("diagonal operator needs at least one entry");
  if (space.dim() != entries.size()) throw InputError("diagonal operator space does not match its length");
  check_finite(entries, "diagonal");
  auto range = space;
  return LinearOperator(
      std::make_shared<const Impl>(Impl{std::move(space), std::move(range), DiagonalBackend{std::move(entries)}}));
}

LinearOperator LinearOperator::diagonal(std::vector<double> entries) {
  const auto n = entries.size();
  return diagonal(std::move(entries), InnerProductSpace(n));
}

LinearOperator LinearOperator::matrix_free(InnerProductSpace domain, InnerProductSpace range, ApplyFn forward,
                                           ApplyFn adjoint) {
  if (domain.dim() == 0 || range.dim() == 0) throw InputError("matrix-free operator needs positive dimensions");
  if (!forward || !adjoint) throw InputError("matrix-free operator needs forward and adjoint callbacks");
  return LinearOperator(std::make_shared<const Impl>(
      Impl{std::move(domain), std::move(range), MatrixFreeBackend{std::move(forward), std::move(adjoint)}}));
}

LinearOperator::Backend LinearOperator::backend() const { return static_cast<Backend>(impl_->backend.index()); }
std::size_t LinearOperator::domain_dim() const { return impl_->domain.dim(); }
std::size_t LinearOperator::range_dim() const { return impl_->range.dim(); }
const InnerProductSpace& LinearOperator::domain() const { return impl_->domain; }
const InnerProductSpace& LinearOperator::range() const { return impl_->range; }

Vector LinearOperator::apply(std::span<const double> x) const {
  Vector y(range_dim());
  apply(x, y);
  return y;
}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_length(x.size(), domain_dim(), "apply: input");
  check_length(y.size(), range_dim(), "apply: output");
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, DenseBackend>) {
          kernels::gemv({b.data, b.rows, b.cols}, x, y);
        } else if constexpr (std::is_same_v<B, DiagonalBackend>) {
          kernels::hadamard(b.entries, x, y);
        } else {
          b.forward(x, y);
        }
      },
      impl_->backend);
}

Vector LinearOperator::apply_adjoint(std::span<const double> y) const {
  Vector x(domain_dim());
  apply_adjoint(y, x);
  return x;
}

void LinearOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_length(y.size(), range_dim(), "apply_adjoint: input");
  check_length(x.size(), domain_dim(), "apply_adjoint: output");
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, DenseBackend>) {
          const auto wr = impl_->range.weights();
          const auto wd = impl_->domain.weights();
          if (wr.empty()) {
            kernels::gemv_t({b.data, b.rows, b.cols}, y, x);
          } else {
            Vector weighted(y.size());
            kernels::hadamard(wr, y, weighted);
            kernels::gemv_t({b.data, b.rows, b.cols}, weighted, x);
          }
          if (!wd.empty()) {
            for (std::size_t j = 0; j < x.size(); ++j) x[j] /= wd[j];
          }
        } else if constexpr (std::is_same_v<B, DiagonalBackend>) {
          kernels::hadamard(b.entries, y, x);
        } else {
          b.adjoint(y, x);
        }
      },
      impl_->backend);
}

void LinearOperator::apply_normal(std::span<const double> x, std::span<double> scratch, std::span<double> out) const {
  apply(x, scratch);
  apply_adjoint(scratch, out);
}

std::span<const double> LinearOperator::diagonal_entries() const {
  if (const auto* d = std::get_if<DiagonalBackend>(&impl_->backend)) return d->entries;
  throw std::logic_error("operator is not diagonal");
}

kernels::MatrixView LinearOperator::matrix() const {
  if (const auto* d = std::get_if<DenseBackend>(&impl_->backend)) return {d->data, d->rows, d->cols};
  throw std::logic_error("operator is not dense");
}

double norm_estimate(const LinearOperator& op) {
  constexpr int kMaxSweeps = 50;
  constexpr double kRelChange = 1e-6;
  const auto& dom = op.domain();

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  Vector v(op.domain_dim());
  for (auto& e : v) e = normal(rng);
  double nv = dom.norm(v);
  for (auto& e : v) e /= nv;

  Vector scratch(op.range_dim()), u(op.domain_dim());
  double sigma = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    op.apply_normal(v, scratch, u);
    const double rayleigh = dom.dot(u, v);
    const double next = std::sqrt(std::max(0.0, rayleigh));
    const double nu = dom.norm(u);
    if (nu == 0.0) return 0.0;
    const bool settled = sweep > 0 && std::abs(next - sigma) <= kRelChange * next;
    sigma = next;
    if (settled) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u[i] / nu;
  }
  return sigma;
}

}  // namespace sine
