#pragma once

// Dense reference computations for tests. These deliberately avoid the
// library's solver paths: explicit inverses, explicit Krylov bases and
// textbook least-squares solves.

#include <Eigen/Dense>
#include <vector>

#include "sine/operator.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Dense matrix of an operator with unit weights, built column by column from apply().
inline MatrixXd dense_of(const sine::LinearOperator& op) {
  MatrixXd a(static_cast<Eigen::Index>(op.range_dim()), static_cast<Eigen::Index>(op.domain_dim()));
  std::vector<double> e(op.domain_dim(), 0.0);
  for (std::size_t j = 0; j < op.domain_dim(); ++j) {
    e[j] = 1.0;
    a.col(static_cast<Eigen::Index>(j)) = to_eigen(op.apply(e));
    e[j] = 0.0;
  }
  return a;
}

/// (I + A^T A / gamma)^{-1} by LU inversion.
inline MatrixXd explicit_resolvent(const MatrixXd& a, double gamma) {
  const MatrixXd m = MatrixXd::Identity(a.cols(), a.cols()) + a.transpose() * a / gamma;
  return m.fullPivLu().inverse();
}

/// Columns A^T y, R A^T y, ..., R^{m-1} A^T y with R the explicit resolvent.
inline MatrixXd rational_krylov_basis(const MatrixXd& a, const VectorXd& y, double gamma, int m) {
  const MatrixXd r = explicit_resolvent(a, gamma);
  MatrixXd b(a.cols(), m);
  VectorXd v = a.transpose() * y;
  for (int k = 0; k < m; ++k) {
    b.col(k) = v;
    v = r * v;
  }
  return b;
}

/// Columns A^T y, (A^T A) A^T y, ...
inline MatrixXd polynomial_krylov_basis(const MatrixXd& a, const VectorXd& y, int m) {
  const MatrixXd n = a.transpose() * a;
  MatrixXd b(a.cols(), m);
  VectorXd v = a.transpose() * y;
  for (int k = 0; k < m; ++k) {
    b.col(k) = v;
    v = n * v;
  }
  return b;
}

/// argmin_{x in span(B)} ||y - A x||_2, via an orthonormalized basis.
inline VectorXd least_squares_over(const MatrixXd& a, const VectorXd& y, const MatrixXd& basis) {
  Eigen::HouseholderQR<MatrixXd> qr(basis);
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(basis.rows(), basis.cols());
  const MatrixXd aq = a * q;
  const VectorXd c = aq.colPivHouseholderQr().solve(y);
  return q * c;
}

inline VectorXd pseudoinverse_solve(const MatrixXd& a, const VectorXd& y) {
  return a.completeOrthogonalDecomposition().solve(y);
}

inline double relative_error(const VectorXd& got, const VectorXd& want) {
  return (got - want).norm() / want.norm();
}

}  // namespace oracle
