#pragma once

#include "sine/problem.hpp"
#include "sine/stopping.hpp"

namespace sine {

/// Conjugate gradients on the normal equation in CGLS form: the m-th iterate
/// minimizes ||y_delta - T x|| over span{T*y, (T*T)T*y, ..., (T*T)^{m-1}T*y}.
struct CgneState {
  std::size_t j = 0;
  Vector x;
  Vector r;  ///< y_delta - T x (recurrence)
  Vector s;  ///< T* r
  Vector p;  ///< search direction
  Vector q;  ///< T p
  double s_norm_sq = 0.0;
  double breakdown_scale = 0.0;  ///< ||T||^2 ||s_0||
  std::optional<std::size_t> breakdown_step;
  std::vector<double> residual_norms;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::optional<KrylovHistory> history;
};

CgneState cgne_init(const LinearOperator& op, std::span<const double> y_delta, const std::optional<Vector>& x0 = {},
                    bool keep_history = false, std::optional<double> op_norm = {});

/// Returns false (and sets breakdown_step) when ||T p_j|| vanishes.
bool cgne_step(CgneState& state, const LinearOperator& op);

RunReport run_cgne(const Problem& problem, const StoppingRule& rule, const RunOptions& options = {});

}  // namespace sine
