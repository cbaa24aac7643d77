#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sine/operator.hpp"

namespace sine {

/// Discrepancy principle: stop at the first m with ||y_delta - T x_m|| <= tau * delta.
struct StoppingRule {
  double tau = 1.001;
  double delta = 0.0;
  std::size_t max_iters = 0;  ///< 0 selects min(domain_dim, 10000)

  /// Throws InputError unless tau > 1 and delta >= 0.
  void validate() const;
  std::size_t effective_max_iters(std::size_t domain_dim) const;
};

bool discrepancy_met(double residual_norm, const StoppingRule& rule);

enum class Termination { discrepancy, breakdown, iteration_cap };

std::string to_string(Termination t);
Termination parse_termination(const std::string& name);

/// Vectors retained by a run when history is enabled. `directions` are the
/// search directions (w_j for SINE, p_j for CGNE), `images` their images
/// q_j = T dir_j, `residuals` the recurrence residuals r_0, r_1, ...
struct KrylovHistory {
  std::vector<Vector> directions;
  std::vector<Vector> images;
  std::vector<Vector> residuals;
};

struct RunOptions {
  bool keep_history = false;
  std::optional<Vector> x0;
  /// Keep stepping past the stopping index until this many steps were taken
  /// (for per-step comparison tables). The reported stopping index and final
  /// iterate are unaffected.
  std::size_t min_steps = 0;
};

struct RunReport {
  std::string solver;
  std::optional<double> gamma;
  StoppingRule rule;
  std::size_t stopping_index = 0;
  Vector x;  ///< iterate at the stopping index
  std::vector<double> residual_history;
  std::optional<std::vector<double>> error_history;
  Termination terminated_by = Termination::iteration_cap;
  std::optional<std::size_t> breakdown_step;
  std::vector<double> alphas;
  std::vector<double> betas;
  double elapsed_seconds = 0.0;
  std::optional<KrylovHistory> history;

  /// Field-wise equality of everything that is serialized (history excluded).
  bool same_record(const RunReport& other) const;
};

/// ||y_delta - T x|| recomputed from scratch, relative to ||y_delta||.
double residual_drift(const LinearOperator& op, std::span<const double> y_delta, std::span<const double> x,
                      std::span<const double> recurrence_residual);

}  // namespace sine
