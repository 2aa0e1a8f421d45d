#pragma once

#include <functional>

#include "rd/types.hpp"

namespace rd::epi {

using ResidualFn = std::function<VectorXd(const VectorXd&)>;

struct LmOptions {
  int max_iterations = 200;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 10.0;
  double tol_rel_sse = 1e-9;   // stop when relative SSE improvement below this
  double tol_step = 1e-10;     // stop when step norm below this
};

struct LmResult {
  VectorXd params;
  double residual_sse = 0;
  int iterations = 0;
  bool converged = false;
  double final_lambda = 0;
};

// Damped Gauss-Newton with central-difference Jacobian
// (step = max(1e-6, 1e-4*|theta|)) and projection onto [lo, hi].
// Singular normal equations raise lambda instead of aborting; the best-seen
// parameter vector is returned. Throws NumericError when the residual is
// non-finite at the initial point.
LmResult levenberg_marquardt(const ResidualFn& residual_fn,
                             const VectorXd& init, const VectorXd& lo,
                             const VectorXd& hi, const LmOptions& opts = {});

}  // namespace rd::epi
