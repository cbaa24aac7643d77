#include "sine/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sine/errors.hpp"

namespace sine {

KrylovBasis build_basis(const std::vector<Vector>& directions, const InnerProductSpace& space) {
  constexpr double kRankLoss = 1e-12;
  KrylovBasis basis;
  basis.raw = directions;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    Vector v = directions[k];
    const double original = space.norm(v);
    if (original == 0.0) throw NumericalError("direction " + std::to_string(k) + " is zero");
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis.vectors) kernels::axpy(-space.dot(v, u), u, v);
    }
    const double remaining = space.norm(v);
    if (remaining <= kRankLoss * original) {
      throw NumericalError("direction " + std::to_string(k) +
                           " is numerically dependent on its predecessors; breakdown tolerance too loose?");
    }
    for (auto& e : v) e /= remaining;
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

Eigen::MatrixXd projected_gram(const KrylovBasis& basis, const LinearOperator& op) {
  const auto m = static_cast<Eigen::Index>(basis.vectors.size());
  std::vector<Vector> images;
  images.reserve(basis.vectors.size());
  for (const auto& v : basis.vectors) images.push_back(op.apply(v));
  Eigen::MatrixXd s(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      s(i, j) = op.range().dot(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
    }
  }
  return (s + s.transpose()) / 2.0;
}

RitzSpectrum ritz_values(const Eigen::MatrixXd& s) {
  if (s.rows() == 0 || s.rows() != s.cols()) throw InputError("Ritz values need a non-empty square matrix");
  const double scale = s.cwiseAbs().maxCoeff();
  if (!s.allFinite()) throw InputError("projected matrix has non-finite entries");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InputError("projected matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  RitzSpectrum out;
  out.values.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  if (out.values.front() <= 0.0) throw InputError("projected matrix is not positive definite");
  return out;
}

bool check_interlacing(const RitzSpectrum& prev, const RitzSpectrum& next, double slack) {
  if (next.size() != prev.size() + 1) {
    throw InputError("interlacing compares " + std::to_string(prev.size()) + " and " + std::to_string(next.size()) +
                     " values; expected sizes m-1 and m");
  }
  auto below = [slack](double a, double b) { return a < b + slack * std::max(std::abs(a), std::abs(b)); };
  if (!(next.values.front() > 0.0)) return false;
  for (std::size_t k = 0; k < prev.size(); ++k) {
    if (!below(next.values[k], prev.values[k])) return false;
    if (!below(prev.values[k], next.values[k + 1])) return false;
  }
  return true;
}

double residual_function_eval(const ResidualFunction& rf, double lambda) {
  double value = 1.0;
  for (double z : rf.zeros) value *= 1.0 - lambda / z;
  const double m = static_cast<double>(rf.degree());
  if (m > 1.0) value /= std::pow(1.0 + lambda / rf.gamma, m - 1.0);
  return value;
}

double rprime_at_zero(const ResidualFunction& rf) {
  double sum = 0.0;
  for (double z : rf.zeros) sum += 1.0 / z;
  if (rf.degree() > 1) sum += static_cast<double>(rf.degree() - 1) / rf.gamma;
  return sum;
}

OrthogonalityAudit orthogonality_audit(const KrylovHistory& h, const LinearOperator& op) {
  OrthogonalityAudit audit;
  const auto& dom = op.domain();
  const auto& ran = op.range();
  if (h.residuals.empty()) return audit;

  const double r0 = ran.norm(h.residuals.front());
  const double tr0 = dom.norm(op.apply_adjoint(h.residuals.front()));
  std::vector<double> q_norms, dir_norms;
  for (const auto& q : h.images) q_norms.push_back(ran.norm(q));
  for (const auto& d : h.directions) dir_norms.push_back(dom.norm(d));

  auto ratio = [](double num, double den) { return den > 0.0 ? std::abs(num) / den : 0.0; };
  for (std::size_t m = 1; m < h.residuals.size(); ++m) {
    OrthogonalityStep step;
    step.m = m;
    const auto& rm = h.residuals[m];
    const Vector trm = op.apply_adjoint(rm);
    for (std::size_t j = 0; j < m; ++j) {
      step.galerkin = std::max(step.galerkin, ratio(ran.dot(rm, h.images[j]), r0 * q_norms[j]));
      step.normal_eq = std::max(step.normal_eq, ratio(dom.dot(trm, h.directions[j]), tr0 * dir_norms[j]));
      if (m < h.images.size()) {
        step.conjugacy = std::max(step.conjugacy, ratio(ran.dot(h.images[m], h.images[j]), q_norms[m] * q_norms[j]));
      }
    }
    audit.max_galerkin = std::max(audit.max_galerkin, step.galerkin);
    audit.max_conjugacy = std::max(audit.max_conjugacy, step.conjugacy);
    audit.max_normal_eq = std::max(audit.max_normal_eq, step.normal_eq);
    audit.steps.push_back(step);
  }
  return audit;
}

DiagnosticsReport diagnose(const Problem& problem, const RunReport& run) {
  if (!run.history) throw InputError("diagnostics need a run with history retention enabled (--history)");
  if (!run.gamma) throw InputError("diagnostics need a SINE run (gamma missing)");
  const auto& h = *run.history;
  const auto& op = problem.op;

  DiagnosticsReport report;
  report.gamma = *run.gamma;
  report.op_norm = norm_estimate(op);
  report.audit = orthogonality_audit(h, op);
  const double norm_sq = report.op_norm * report.op_norm;

  const std::size_t steps = h.residuals.size() - 1;
  if (steps == 0) return report;
  const KrylovBasis full = build_basis({h.directions.begin(), h.directions.begin() + static_cast<std::ptrdiff_t>(steps)},
                                       op.domain());
  const bool diagonal = op.backend() == LinearOperator::Backend::diagonal;
  const auto& y = h.residuals.front();
  const double ynorm = op.range().norm(y);

  for (std::size_t m = 1; m <= steps; ++m) {
    KrylovBasis prefix;
    prefix.vectors.assign(full.vectors.begin(), full.vectors.begin() + static_cast<std::ptrdiff_t>(m));
    DiagnosticStep step;
    step.m = m;
    step.ritz = ritz_values(projected_gram(prefix, op));
    if (m > 1) {
      step.interlaces = check_interlacing(report.steps.back().ritz, step.ritz);
      report.all_interlace = report.all_interlace && *step.interlaces;
    }
    const ResidualFunction rf{report.gamma, step.ritz.values};
    step.rprime = rprime_at_zero(rf);
    step.within_norm_bound = step.ritz.values.back() <= norm_sq * (1.0 + 1e-6);
    step.rprime_lower_bound = step.rprime >= static_cast<double>(m) / (norm_sq * (1.0 + 1e-6));
    report.bounds_hold = report.bounds_hold && step.within_norm_bound && step.rprime_lower_bound;
    if (m > 1) report.rprime_increasing = report.rprime_increasing && step.rprime > report.steps.back().rprime;

    if (diagonal) {
      const auto d = op.diagonal_entries();
      Vector gap(h.residuals[m]);
      for (std::size_t i = 0; i < gap.size(); ++i) gap[i] -= residual_function_eval(rf, d[i] * d[i]) * y[i];
      step.residual_identity_gap = ynorm > 0.0 ? op.range().norm(gap) / ynorm : op.range().norm(gap);
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace sine
