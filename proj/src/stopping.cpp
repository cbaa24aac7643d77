#include "sine/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "sine/errors.hpp"

namespace sine {

void StoppingRule::validate() const {
  if (!(tau > 1.0) || !std::isfinite(tau)) throw InputError("discrepancy parameter tau must be > 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InputError("noise level delta must be finite and >= 0");
}

std::size_t StoppingRule::effective_max_iters(std::size_t domain_dim) const {
  return max_iters > 0 ? max_iters : std::min<std::size_t>(domain_dim, 10000);
}

bool discrepancy_met(double residual_norm, const StoppingRule& rule) { return residual_norm <= rule.tau * rule.delta; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::discrepancy: return "discrepancy";
    case Termination::breakdown: return "breakdown";
    case Termination::iteration_cap: return "iteration_cap";
  }
  return "iteration_cap";
}

Termination parse_termination(const std::string& name) {
  if (name == "discrepancy") return Termination::discrepancy;
  if (name == "breakdown") return Termination::breakdown;
  if (name == "iteration_cap") return Termination::iteration_cap;
  throw InputError("unknown termination '" + name + "'");
}

bool RunReport::same_record(const RunReport& o) const {
  return solver == o.solver && gamma == o.gamma && rule.tau == o.rule.tau && rule.delta == o.rule.delta &&
         rule.max_iters == o.rule.max_iters && stopping_index == o.stopping_index && x == o.x &&
         residual_history == o.residual_history && error_history == o.error_history &&
         terminated_by == o.terminated_by && breakdown_step == o.breakdown_step && alphas == o.alphas &&
         betas == o.betas && elapsed_seconds == o.elapsed_seconds;
}

double residual_drift(const LinearOperator& op, std::span<const double> y_delta, std::span<const double> x,
                      std::span<const double> recurrence_residual) {
  Vector r = op.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = y_delta[i] - r[i] - recurrence_residual[i];
  const double scale = op.range().norm(y_delta);
  return scale > 0.0 ? op.range().norm(r) / scale : op.range().norm(r);
}

}  // namespace sine
