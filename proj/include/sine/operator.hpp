#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Cholesky>

#include "sine/kernels.hpp"

namespace sine {

using Vector = std::vector<double>;

/// Weighted Euclidean product <u,v> = sum_i w_i u_i v_i. Default-constructed
/// spaces of a given dimension carry unit weights and store none.
class InnerProductSpace {
 public:
  InnerProductSpace() = default;
  explicit InnerProductSpace(std::size_t dim) : dim_(dim) {}
  /// Throws InputError unless every weight is finite and > 0.
  explicit InnerProductSpace(std::vector<double> weights);

  /// Midpoint-rule weights 1/n, so norms approximate L2(0,1) norms.
  static InnerProductSpace uniform_quadrature(std::size_t n);

  std::size_t dim() const { return dim_; }
  bool has_weights() const { return !weights_.empty(); }
  std::span<const double> weights() const { return weights_; }

  double dot(std::span<const double> u, std::span<const double> v) const;
  double norm(std::span<const double> u) const;

  friend bool operator==(const InnerProductSpace&, const InnerProductSpace&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> weights_;
};

/// Real linear map T between two weighted spaces. Immutable once built and
/// cheap to copy (the backend is shared).
class LinearOperator {
 public:
  enum class Backend { dense, diagonal, matrix_free };
  /// Callback writing the image of its first argument into the second.
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  /// Row-major rows x cols matrix. The adjoint is W_domain^{-1} A^T W_range.
  static LinearOperator dense(std::size_t rows, std::size_t cols, std::vector<double> row_major,
                              InnerProductSpace domain, InnerProductSpace range);
  static LinearOperator dense(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  /// Square diagonal operator; self-adjoint for any weights on `space`.
  static LinearOperator diagonal(std::vector<double> entries, InnerProductSpace space);
  static LinearOperator diagonal(std::vector<double> entries);
  /// `adjoint` must already be the adjoint with respect to the given spaces.
  static LinearOperator matrix_free(InnerProductSpace domain, InnerProductSpace range,
                                    ApplyFn forward, ApplyFn adjoint);

  Backend backend() const;
  std::size_t domain_dim() const;
  std::size_t range_dim() const;
  const InnerProductSpace& domain() const;
  const InnerProductSpace& range() const;

  Vector apply(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> y) const;
  Vector apply_adjoint(std::span<const double> y) const;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const;
  /// T*T x, writing into `out`; `scratch` must have range_dim entries.
  void apply_normal(std::span<const double> x, std::span<double> scratch, std::span<double> out) const;

  /// Diagonal entries; throws std::logic_error for other backends.
  std::span<const double> diagonal_entries() const;
  /// Matrix view; throws std::logic_error for other backends.
  kernels::MatrixView matrix() const;

 private:
  struct Impl;
  explicit LinearOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Power iteration on T*T from a fixed start vector (50 sweeps or relative
/// change below 1e-6). Returns 0 for the zero operator.
double norm_estimate(const LinearOperator& op);

/// Applies (I + T*T/gamma)^{-1}. Dense and diagonal operators are factored
/// once; matrix-free operators use an inner conjugate-gradient solve.
class ShiftSolver {
 public:
  enum class Strategy { direct, inner_cg };

  static constexpr double kDefaultInnerTolerance = 1e-13;

  ShiftSolver(LinearOperator op, double gamma, double inner_tolerance = kDefaultInnerTolerance);

  double gamma() const { return gamma_; }
  Strategy strategy() const { return strategy_; }
  double inner_tolerance() const { return inner_tolerance_; }
  const LinearOperator& op() const { return op_; }

  Vector solve(std::span<const double> v) const;
  void solve(std::span<const double> v, std::span<double> out) const;
  /// (I + T*T/gamma) x, the forward shifted operator.
  Vector apply_shifted(std::span<const double> x) const;

 private:
  void solve_inner_cg(std::span<const double> v, std::span<double> out) const;

  LinearOperator op_;
  double gamma_;
  double inner_tolerance_;
  Strategy strategy_;
  std::vector<double> diag_denominator_;
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> cholesky_;
};

inline ShiftSolver build_shift_solver(const LinearOperator& op, double gamma) { return ShiftSolver(op, gamma); }

inline Vector resolvent_apply(const ShiftSolver& solver, std::span<const double> v) { return solver.solve(v); }

}  // namespace sine
