#pragma once

// Numerical checks of the structure behind the SINE recurrence: Ritz values
// of T*T on the rational Krylov space, their interlacing, the residual
// rational function and the orthogonality relations of the iteration.
// Everything here runs on retained history after the fact.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sine/operator.hpp"
#include "sine/problem.hpp"
#include "sine/stopping.hpp"

namespace sine {

/// Orthonormal basis (in the domain product) of span{w_0, ..., w_{m-1}}.
struct KrylovBasis {
  std::vector<Vector> vectors;
  std::vector<Vector> raw;
};

/// Modified Gram-Schmidt with one full reorthogonalization pass. Throws
/// NumericalError if a direction is numerically dependent on its
/// predecessors.
KrylovBasis build_basis(const std::vector<Vector>& directions, const InnerProductSpace& space);

/// S_ij = <T v_i, T v_j>, symmetrized.
Eigen::MatrixXd projected_gram(const KrylovBasis& basis, const LinearOperator& op);

struct RitzSpectrum {
  std::vector<double> values;  ///< ascending

  std::size_t size() const { return values.size(); }
  friend bool operator==(const RitzSpectrum&, const RitzSpectrum&) = default;
};

/// Sorted eigenvalues of a small SPD matrix; InputError if not SPD.
RitzSpectrum ritz_values(const Eigen::MatrixXd& s);

inline constexpr double kInterlacingSlack = 1e-10;

/// 0 < next_1 < prev_1 < next_2 < ... < prev_{m-1} < next_m, each strict
/// inequality relaxed by `slack` relative.
bool check_interlacing(const RitzSpectrum& prev, const RitzSpectrum& next, double slack = kInterlacingSlack);

/// r_m(lambda) = prod_j (1 - lambda/lambda_j) / (1 + lambda/gamma)^{m-1}.
struct ResidualFunction {
  double gamma = 1.0;
  std::vector<double> zeros;

  std::size_t degree() const { return zeros.size(); }
};

double residual_function_eval(const ResidualFunction& rf, double lambda);
/// -r_m'(0) = sum_j 1/lambda_j + (m-1)/gamma.
double rprime_at_zero(const ResidualFunction& rf);

struct OrthogonalityStep {
  std::size_t m = 0;
  double galerkin = 0.0;     ///< max_j |<r_m,q_j>| / (||r_0|| ||q_j||)
  double conjugacy = 0.0;    ///< max_j |<q_m,q_j>| / (||q_m|| ||q_j||)
  double normal_eq = 0.0;    ///< max_j |<T*r_m,dir_j>| / (||T*r_0|| ||dir_j||)
  friend bool operator==(const OrthogonalityStep&, const OrthogonalityStep&) = default;
};

struct OrthogonalityAudit {
  std::vector<OrthogonalityStep> steps;
  double max_galerkin = 0.0;
  double max_conjugacy = 0.0;
  double max_normal_eq = 0.0;
  friend bool operator==(const OrthogonalityAudit&, const OrthogonalityAudit&) = default;
};

/// Works for SINE and CGNE histories alike. Reports, never throws on large
/// violations.
OrthogonalityAudit orthogonality_audit(const KrylovHistory& history, const LinearOperator& op);

struct DiagnosticStep {
  std::size_t m = 0;
  RitzSpectrum ritz;
  std::optional<bool> interlaces;  ///< against step m-1; absent for m = 1
  double rprime = 0.0;             ///< |r_m'(0)|
  bool within_norm_bound = true;   ///< largest Ritz value <= ||T||^2 (1 + 1e-6)
  bool rprime_lower_bound = true;  ///< |r_m'(0)| >= m / (||T||^2 (1 + 1e-6))
  std::optional<double> residual_identity_gap;  ///< diagonal operators only
  friend bool operator==(const DiagnosticStep&, const DiagnosticStep&) = default;
};

struct DiagnosticsReport {
  double gamma = 0.0;
  double op_norm = 0.0;
  std::vector<DiagnosticStep> steps;
  OrthogonalityAudit audit;
  bool all_interlace = true;
  bool rprime_increasing = true;
  bool bounds_hold = true;

  bool assertions_pass() const { return all_interlace && rprime_increasing && bounds_hold; }
  friend bool operator==(const DiagnosticsReport&, const DiagnosticsReport&) = default;
};

/// Full diagnostic pass over a SINE run made with history retained and x0 = 0.
/// Throws InputError if the report carries no history.
DiagnosticsReport diagnose(const Problem& problem, const RunReport& run);

}  // namespace sine
