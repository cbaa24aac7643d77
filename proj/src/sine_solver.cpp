#include "sine/sine_solver.hpp"

#include <cmath>

#include "run_loop.hpp"
#include "sine/errors.hpp"

namespace sine {

SineState sine_init(const LinearOperator& op, std::span<const double> y_delta, const std::optional<Vector>& x0,
                    bool keep_history, std::optional<double> op_norm) {
  if (y_delta.size() != op.range_dim()) {
    throw InputError("data has length " + std::to_string(y_delta.size()) + ", operator range has dimension " +
                     std::to_string(op.range_dim()));
  }
  if (x0 && x0->size() != op.domain_dim()) {
    throw InputError("initial guess has length " + std::to_string(x0->size()) + ", operator domain has dimension " +
                     std::to_string(op.domain_dim()));
  }

  SineState s;
  s.x = x0 ? *x0 : Vector(op.domain_dim(), 0.0);
  s.r.assign(y_delta.begin(), y_delta.end());
  if (x0) kernels::axpy(-1.0, op.apply(s.x), s.r);
  s.w = op.apply_adjoint(s.r);
  s.q = op.apply(s.w);
  s.t.assign(op.domain_dim(), 0.0);
  s.residual_norms.push_back(op.range().norm(s.r));

  const double norm = op_norm ? *op_norm : norm_estimate(op);
  s.breakdown_scale = norm * norm * op.domain().norm(s.w);

  if (keep_history) s.history = KrylovHistory{{s.w}, {s.q}, {s.r}};
  return s;
}

SineState sine_init(const Problem& problem, const std::optional<Vector>& x0, bool keep_history) {
  return sine_init(problem.op, problem.y_delta, x0, keep_history);
}

bool detect_breakdown(const SineState& state, const InnerProductSpace& range, double scale) {
  return range.norm(state.q) <= kBreakdownTolerance * scale;
}

StepOutcome sine_step(SineState& s, const ShiftSolver& solver) {
  const auto& op = solver.op();
  const auto& dom = op.domain();
  const auto& ran = op.range();
  if (s.breakdown_step) throw std::logic_error("sine_step called after breakdown");
  if (detect_breakdown(s, ran, s.breakdown_scale)) {
    s.breakdown_step = s.j;
    return StepOutcome::breakdown;
  }

  s.delta_j = ran.dot(s.q, s.q);
  s.alpha = ran.dot(s.r, s.q) / s.delta_j;
  kernels::axpy(s.alpha, s.w, s.x);
  kernels::axpy(-s.alpha, s.q, s.r);

  const Vector sj = op.apply_adjoint(s.q);
  solver.solve(op.apply_adjoint(s.r), s.t);
  s.beta = dom.dot(s.t, sj) / s.delta_j;
  kernels::xpby(s.t, -s.beta, s.w);  // w_{j+1} = t_{j+1} - beta_j w_j
  op.apply(s.w, s.q);

  ++s.j;
  s.alphas.push_back(s.alpha);
  s.betas.push_back(s.beta);
  s.residual_norms.push_back(ran.norm(s.r));
  if (s.history) {
    s.history->directions.push_back(s.w);
    s.history->images.push_back(s.q);
    s.history->residuals.push_back(s.r);
  }
  return StepOutcome::advanced;
}

namespace {

class SineDriver {
 public:
  SineDriver(SineState& state, const ShiftSolver& solver) : state_(state), solver_(solver) {}
  std::size_t iteration() const { return state_.j; }
  double residual_norm() const { return state_.residual_norms.back(); }
  const Vector& iterate() const { return state_.x; }
  bool step() { return sine_step(state_, solver_) == StepOutcome::advanced; }

 private:
  SineState& state_;
  const ShiftSolver& solver_;
};

}  // namespace

RunReport run_sine(const Problem& problem, double gamma, const StoppingRule& rule, const RunOptions& options) {
  rule.validate();
  const ShiftSolver solver(problem.op, gamma);
  SineState state = sine_init(problem.op, problem.y_delta, options.x0, options.keep_history);

  RunReport report;
  report.solver = "sine";
  report.gamma = gamma;
  SineDriver driver(state, solver);
  detail::drive(driver, problem, rule, options, report);

  report.residual_history = std::move(state.residual_norms);
  report.alphas = std::move(state.alphas);
  report.betas = std::move(state.betas);
  report.history = std::move(state.history);
  return report;
}

}  // namespace sine
