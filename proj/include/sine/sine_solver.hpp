#pragma once

#include <optional>

#include "sine/operator.hpp"
#include "sine/problem.hpp"
#include "sine/stopping.hpp"

namespace sine {

/// Relative threshold for declaring q_j = 0.
inline constexpr double kBreakdownTolerance = 1e-14;

/// Iteration state of the shift-and-invert normal-equation method.
///
/// Invariant between steps: q == T w, r == y_delta - T x up to rounding,
/// and residual_norms[k] == ||r_k|| for k <= j.
struct SineState {
  std::size_t j = 0;
  Vector x;  ///< current iterate x_j
  Vector r;  ///< residual r_j (recurrence)
  Vector w;  ///< search direction w_j
  Vector q;  ///< T w_j
  Vector t;  ///< last resolvent image t_j
  double alpha = 0.0;
  double beta = 0.0;
  double delta_j = 0.0;  ///< <q_j, q_j> of the last step
  /// ||T||^2 ||w_0||; breakdown is ||q_j|| <= kBreakdownTolerance * scale.
  double breakdown_scale = 0.0;
  std::optional<std::size_t> breakdown_step;
  std::vector<double> residual_norms;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::optional<KrylovHistory> history;
};

enum class StepOutcome { advanced, breakdown };

/// r_0 = y - T x0, w_0 = T* r_0, q_0 = T w_0. Pass `op_norm` to skip the
/// power iteration.
SineState sine_init(const LinearOperator& op, std::span<const double> y_delta, const std::optional<Vector>& x0 = {},
                    bool keep_history = false, std::optional<double> op_norm = {});
SineState sine_init(const Problem& problem, const std::optional<Vector>& x0 = {}, bool keep_history = false);

bool detect_breakdown(const SineState& state, const InnerProductSpace& range, double scale);

/// One step of the recurrence. On breakdown the state is left untouched
/// apart from `breakdown_step`.
StepOutcome sine_step(SineState& state, const ShiftSolver& solver);

RunReport run_sine(const Problem& problem, double gamma, const StoppingRule& rule, const RunOptions& options = {});

}  // namespace sine
