#include "sine/cgne_solver.hpp"

#include <cmath>

#include "run_loop.hpp"
#include "sine/errors.hpp"
#include "sine/sine_solver.hpp"

namespace sine {

CgneState cgne_init(const LinearOperator& op, std::span<const double> y_delta, const std::optional<Vector>& x0,
                    bool keep_history, std::optional<double> op_norm) {
  if (y_delta.size() != op.range_dim()) {
    throw InputError("data has length " + std::to_string(y_delta.size()) + ", operator range has dimension " +
                     std::to_string(op.range_dim()));
  }
  if (x0 && x0->size() != op.domain_dim()) {
    throw InputError("initial guess has length " + std::to_string(x0->size()) + ", operator domain has dimension " +
                     std::to_string(op.domain_dim()));
  }
  CgneState c;
  c.x = x0 ? *x0 : Vector(op.domain_dim(), 0.0);
  c.r.assign(y_delta.begin(), y_delta.end());
  if (x0) kernels::axpy(-1.0, op.apply(c.x), c.r);
  c.s = op.apply_adjoint(c.r);
  c.p = c.s;
  c.q = op.apply(c.p);
  c.s_norm_sq = op.domain().dot(c.s, c.s);
  c.residual_norms.push_back(op.range().norm(c.r));
  const double norm = op_norm ? *op_norm : norm_estimate(op);
  c.breakdown_scale = norm * norm * std::sqrt(c.s_norm_sq);
  if (keep_history) c.history = KrylovHistory{{c.p}, {c.q}, {c.r}};
  return c;
}

bool cgne_step(CgneState& c, const LinearOperator& op) {
  const auto& dom = op.domain();
  const auto& ran = op.range();
  if (c.breakdown_step) throw std::logic_error("cgne_step called after breakdown");
  const double qq = ran.dot(c.q, c.q);
  if (std::sqrt(qq) <= kBreakdownTolerance * c.breakdown_scale) {
    c.breakdown_step = c.j;
    return false;
  }
  const double alpha = c.s_norm_sq / qq;
  kernels::axpy(alpha, c.p, c.x);
  kernels::axpy(-alpha, c.q, c.r);
  op.apply_adjoint(c.r, c.s);
  const double s_next = dom.dot(c.s, c.s);
  const double beta = s_next / c.s_norm_sq;
  kernels::xpby(c.s, beta, c.p);
  op.apply(c.p, c.q);
  c.s_norm_sq = s_next;

  ++c.j;
  c.alphas.push_back(alpha);
  c.betas.push_back(beta);
  c.residual_norms.push_back(ran.norm(c.r));
  if (c.history) {
    c.history->directions.push_back(c.p);
    c.history->images.push_back(c.q);
    c.history->residuals.push_back(c.r);
  }
  return true;
}

namespace {

class CgneDriver {
 public:
  CgneDriver(CgneState& state, const LinearOperator& op) : state_(state), op_(op) {}
  std::size_t iteration() const { return state_.j; }
  double residual_norm() const { return state_.residual_norms.back(); }
  const Vector& iterate() const { return state_.x; }
  bool step() { return cgne_step(state_, op_); }

 private:
  CgneState& state_;
  const LinearOperator& op_;
};

}  // namespace

RunReport run_cgne(const Problem& problem, const StoppingRule& rule, const RunOptions& options) {
  rule.validate();
  CgneState state = cgne_init(problem.op, problem.y_delta, options.x0, options.keep_history);
  RunReport report;
  report.solver = "cgne";
  CgneDriver driver(state, problem.op);
  detail::drive(driver, problem, rule, options, report);
  report.residual_history = std::move(state.residual_norms);
  report.alphas = std::move(state.alphas);
  report.betas = std::move(state.betas);
  report.history = std::move(state.history);
  return report;
}

}  // namespace sine
