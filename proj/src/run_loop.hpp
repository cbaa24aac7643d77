#pragma once

// Shared discrepancy-principle driver for the two Krylov solvers.

#include <chrono>

#include "sine/problem.hpp"
#include "sine/stopping.hpp"

namespace sine::detail {

/// `Solver` must provide: iteration(), residual_norm(), iterate(),
/// step() -> bool (false on breakdown).
template <class Solver>
void drive(Solver& solver, const Problem& problem, const StoppingRule& rule, const RunOptions& options,
           RunReport& report) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t cap = rule.effective_max_iters(problem.op.domain_dim());
  const auto& dom = problem.op.domain();

  auto record_error = [&] {
    if (!problem.truth) return;
    const auto& x = solver.iterate();
    Vector e(x.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = x[i] - (*problem.truth)[i];
    report.error_history->push_back(dom.norm(e));
  };
  if (problem.truth) report.error_history.emplace();
  record_error();

  bool stopped = false;
  auto stop_here = [&](Termination why) {
    stopped = true;
    report.terminated_by = why;
    report.stopping_index = solver.iteration();
    report.x = solver.iterate();
  };

  while (true) {
    if (!stopped && discrepancy_met(solver.residual_norm(), rule)) stop_here(Termination::discrepancy);
    if (stopped && solver.iteration() >= options.min_steps) break;
    if (solver.iteration() >= cap) {
      if (!stopped) stop_here(Termination::iteration_cap);
      break;
    }
    if (!solver.step()) {
      report.breakdown_step = solver.iteration();
      if (!stopped) stop_here(Termination::breakdown);
      break;
    }
    record_error();
  }

  report.rule = rule;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace sine::detail
