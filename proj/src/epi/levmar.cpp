#include "rd/epi/levmar.hpp"

#include <cmath>

namespace rd::epi {

namespace {

VectorXd project(VectorXd x, const VectorXd& lo, const VectorXd& hi) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = std::min(std::max(x[i], lo[i]), hi[i]);
  return x;
}

bool finite(const VectorXd& v) { return v.allFinite(); }

// Central differences, parameters clamped to bounds on both probes.
MatrixXd numeric_jacobian(const ResidualFn& fn, const VectorXd& theta,
                          const VectorXd& lo, const VectorXd& hi,
                          Eigen::Index m) {
  const Eigen::Index p = theta.size();
  MatrixXd jac(m, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double step = std::max(1e-6, 1e-4 * std::abs(theta[j]));
    VectorXd plus = theta, minus = theta;
    plus[j] = std::min(theta[j] + step, hi[j]);
    minus[j] = std::max(theta[j] - step, lo[j]);
    double span = plus[j] - minus[j];
    if (span <= 0) {
      jac.col(j).setZero();
      continue;
    }
    VectorXd rp = fn(plus), rm = fn(minus);
    if (!finite(rp) || !finite(rm)) {
      jac.col(j).setZero();
      continue;
    }
    jac.col(j) = (rp - rm) / span;
  }
  return jac;
}

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& residual_fn,
                             const VectorXd& init, const VectorXd& lo,
                             const VectorXd& hi, const LmOptions& opts) {
  VectorXd theta = project(init, lo, hi);
  VectorXd r = residual_fn(theta);
  if (!finite(r))
    throw NumericError("levenberg_marquardt: residual non-finite at init");
  double sse = r.squaredNorm();

  LmResult best;
  best.params = theta;
  best.residual_sse = sse;

  double lambda = opts.lambda_init;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    MatrixXd jac = numeric_jacobian(residual_fn, theta, lo, hi, r.size());
    MatrixXd jtj = jac.transpose() * jac;
    VectorXd jtr = jac.transpose() * r;
    if (jtr.norm() == 0) {
      best.converged = true;
      break;
    }
    bool accepted = false;
    while (!accepted) {
      MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      VectorXd step = damped.ldlt().solve(-jtr);
      if (!finite(step)) {
        lambda *= opts.lambda_up;
        if (lambda > 1e12) break;
        continue;
      }
      VectorXd cand = project(theta + step, lo, hi);
      VectorXd rc = residual_fn(cand);
      double cand_sse = finite(rc) ? rc.squaredNorm()
                                   : std::numeric_limits<double>::infinity();
      if (cand_sse < sse) {
        double rel_improvement = (sse - cand_sse) / std::max(sse, 1e-300);
        double step_norm = (cand - theta).norm();
        theta = cand;
        r = rc;
        sse = cand_sse;
        lambda = std::max(lambda / opts.lambda_down, 1e-12);
        accepted = true;
        if (sse < best.residual_sse) {
          best.params = theta;
          best.residual_sse = sse;
        }
        if (rel_improvement < opts.tol_rel_sse || step_norm < opts.tol_step) {
          best.converged = true;
          ++iter;
          goto done;
        }
      } else {
        lambda *= opts.lambda_up;
        if (lambda > 1e12) break;  // rejected at max damping: next iteration
      }
    }
    if (!accepted && lambda > 1e12) {
      best.converged = true;  // no descent direction left
      ++iter;
      break;
    }
  }
done:
  best.iterations = iter;
  best.final_lambda = lambda;
  return best;
}

}  // namespace rd::epi
