#include <cmath>
#include <sstream>

#include "sine/errors.hpp"
#include "sine/operator.hpp"

namespace sine {

ShiftSolver::ShiftSolver(LinearOperator op, double gamma, double inner_tolerance)
    : op_(std::move(op)), gamma_(gamma), inner_tolerance_(inner_tolerance), strategy_(Strategy::direct) {
  if (!(std::isfinite(gamma) && gamma > 0.0)) throw InputError("shift gamma must be positive and finite");
  if (!(inner_tolerance > 0.0)) throw InputError("inner tolerance must be positive");

  switch (op_.backend()) {
    case LinearOperator::Backend::diagonal: {
      const auto d = op_.diagonal_entries();
      diag_denominator_.resize(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) diag_denominator_[i] = 1.0 + d[i] * d[i] / gamma_;
      break;
    }
    case LinearOperator::Backend::dense: {
      // W_d (I + T*T/gamma) = W_d + A^T W_r A / gamma is symmetric positive definite.
      const auto view = op_.matrix();
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
          view.data.data(), static_cast<Eigen::Index>(view.rows), static_cast<Eigen::Index>(view.cols));
      Eigen::MatrixXd weighted_a = a;
      if (op_.range().has_weights()) {
        const auto wr = op_.range().weights();
        for (Eigen::Index i = 0; i < weighted_a.rows(); ++i) weighted_a.row(i) *= wr[static_cast<std::size_t>(i)];
      }
      Eigen::MatrixXd m = (a.transpose() * weighted_a) / gamma_;
      const auto wd = op_.domain().weights();
      for (Eigen::Index j = 0; j < m.rows(); ++j) m(j, j) += wd.empty() ? 1.0 : wd[static_cast<std::size_t>(j)];
      auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(m);
      if (llt->info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "Cholesky factorization of the shifted normal matrix failed (dim " << m.rows() << ", gamma " << gamma_
            << ")";
        throw NumericalError(msg.str());
      }
      cholesky_ = std::move(llt);
      break;
    }
    case LinearOperator::Backend::matrix_free:
      strategy_ = Strategy::inner_cg;
      break;
  }
}

Vector ShiftSolver::solve(std::span<const double> v) const {
  Vector out(op_.domain_dim());
  solve(v, out);
  return out;
}

void ShiftSolver::solve(std::span<const double> v, std::span<double> out) const {
  if (v.size() != op_.domain_dim() || out.size() != op_.domain_dim()) {
    throw InputError("resolvent applied to a vector of length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(op_.domain_dim()));
  }
  switch (op_.backend()) {
    case LinearOperator::Backend::diagonal:
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / diag_denominator_[i];
      return;
    case LinearOperator::Backend::dense: {
      Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
      const auto wd = op_.domain().weights();
      if (!wd.empty()) {
        for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs[i] *= wd[static_cast<std::size_t>(i)];
      }
      Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) = cholesky_->solve(rhs);
      return;
    }
    case LinearOperator::Backend::matrix_free:
      solve_inner_cg(v, out);
      return;
  }
}

Vector ShiftSolver::apply_shifted(std::span<const double> x) const {
  Vector scratch(op_.range_dim()), out(op_.domain_dim());
  op_.apply_normal(x, scratch, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + out[i] / gamma_;
  return out;
}

// CG on the shifted operator, which is self-adjoint and >= I in the domain product.
void ShiftSolver::solve_inner_cg(std::span<const double> v, std::span<double> out) const {
  const auto& dom = op_.domain();
  const std::size_t n = v.size();
  const std::size_t cap = 10 * n;
  const double vnorm = dom.norm(v);
  std::fill(out.begin(), out.end(), 0.0);
  if (vnorm == 0.0) return;

  Vector r(v.begin(), v.end()), p = r, ap(n), scratch(op_.range_dim());
  double rr = dom.dot(r, r);
  const double target = inner_tolerance_ * vnorm;
  for (std::size_t it = 0; it < cap; ++it) {
    if (std::sqrt(rr) <= target) return;
    op_.apply_normal(p, scratch, ap);
    kernels::xpby(p, 1.0 / gamma_, ap);  // ap = p + T*T p / gamma
    const double alpha = rr / dom.dot(p, ap);
    kernels::axpy(alpha, p, out);
    kernels::axpy(-alpha, ap, r);
    const double rr_next = dom.dot(r, r);
    kernels::xpby(r, rr_next / rr, p);
    rr = rr_next;
  }
  if (std::sqrt(rr) <= target) return;
  std::ostringstream msg;
  msg << "inner CG for the shifted system did not converge in " << cap << " iterations: relative residual "
      << std::sqrt(rr) / vnorm << " > " << inner_tolerance_;
  throw NumericalError(msg.str());
}

}  // namespace sine
