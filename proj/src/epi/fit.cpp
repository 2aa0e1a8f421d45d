#include "rd/epi/fit.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace rd::epi {

namespace {

VectorXd to_vector(const VolumeCurve& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

VectorXd target_vector(const VolumeCurve& curve, bool cumulative) {
  VectorXd y = to_vector(curve);
  if (cumulative) {
    for (Eigen::Index i = 1; i < y.size(); ++i) y[i] += y[i - 1];
  }
  return y;
}

VectorXd model_residual(const VolumeCurve& model, const VectorXd& target,
                        bool cumulative) {
  VectorXd m = to_vector(model);
  if (cumulative) {
    for (Eigen::Index i = 1; i < m.size(); ++i) m[i] += m[i - 1];
  }
  return m - target;
}

// Multi-start driver: seeded uniform inits within bounds, best SSE wins,
// ties by first start.
LmResult multi_start_fit(const ResidualFn& fn, const VectorXd& lo,
                         const VectorXd& hi, const FitOptions& opts,
                         std::uint64_t salt) {
  std::mt19937_64 rng(opts.seed ^ salt);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LmResult best;
  best.residual_sse = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.multi_starts; ++s) {
    VectorXd init(lo.size());
    for (Eigen::Index j = 0; j < lo.size(); ++j)
      init[j] = lo[j] + unit(rng) * (hi[j] - lo[j]);
    LmResult r;
    try {
      r = levenberg_marquardt(fn, init, lo, hi, opts.lm);
    } catch (const NumericError&) {
      continue;
    }
    if (r.residual_sse < best.residual_sse) best = r;
  }
  if (!std::isfinite(best.residual_sse)) {
    best.params = lo;
    best.residual_sse = 0;
    best.converged = false;
  }
  return best;
}

}  // namespace

FitResult<SisParams> fit_sis(const VolumeCurve& curve, double population,
                             const FitOptions& opts) {
  const int steps = static_cast<int>(curve.size());
  VectorXd target = target_vector(curve, opts.cumulative_target);
  auto fn = [&](const VectorXd& theta) {
    SisParams p{theta[0], theta[1], population};
    return model_residual(simulate_sis(p, steps), target, opts.cumulative_target);
  };
  VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 10, 10;
  LmResult r = multi_start_fit(fn, lo, hi, opts, 0x515);
  FitResult<SisParams> out;
  out.params = SisParams{r.params[0], r.params[1], population};
  out.residual_sse = r.residual_sse;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

FitResult<SeizParams> fit_seiz(const VolumeCurve& curve, double population,
                               const FitOptions& opts) {
  const int steps = static_cast<int>(curve.size());
  VectorXd target = target_vector(curve, opts.cumulative_target);
  auto fn = [&](const VectorXd& theta) {
    SeizParams p{theta[0], theta[1], theta[2], theta[3],
                 theta[4], theta[5], population};
    return model_residual(simulate_seiz(p, steps), target, opts.cumulative_target);
  };
  VectorXd lo(6), hi(6);
  lo << 0, 0, 0, 0, 0, 0;          // beta, b, l, p, epsilon, rho
  hi << 10, 10, 1, 1, 10, 10;
  LmResult r = multi_start_fit(fn, lo, hi, opts, 0x5E12);
  FitResult<SeizParams> out;
  out.params = SeizParams{r.params[0], r.params[1], r.params[2],
                          r.params[3], r.params[4], r.params[5], population};
  out.residual_sse = r.residual_sse;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

FitResult<SpikeMParams> fit_spikem(const VolumeCurve& curve, double population,
                                   const FitOptions& opts) {
  const int steps = static_cast<int>(curve.size());
  VectorXd target = target_vector(curve, opts.cumulative_target);
  const double horizon = static_cast<double>(steps);
  auto make_params = [&](const VectorXd& t) {
    SpikeMParams p;
    p.beta_strength = t[0];
    p.shock_size = t[1];
    p.noise = t[2];
    p.p_period = t[3];
    p.p_strength = t[4];
    p.p_shift = t[5];
    p.q_period = t[6];
    p.q_strength = t[7];
    p.q_shift = t[8];
    p.start_time = 0;
    p.population = population;
    return p;
  };
  auto fn = [&](const VectorXd& theta) {
    return model_residual(simulate_spikem(make_params(theta), steps), target,
                          opts.cumulative_target);
  };
  VectorXd lo(9), hi(9);
  // beta, S_0, noise, P_p, P_a, P_s, Q_p, Q_a, Q_s
  lo << 0, 0, 0, 2, 0, 0, 2, 0, 0;
  hi << 10.0 / population, population, 10, 2 * horizon, 1, 2 * horizon,
      2 * horizon, 1, 2 * horizon;
  LmResult r = multi_start_fit(fn, lo, hi, opts, 0x5B1F);
  FitResult<SpikeMParams> out;
  out.params = make_params(r.params);
  out.residual_sse = r.residual_sse;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

const std::vector<std::string>& epi_feature_names() {
  static const std::vector<std::string> names = {
      "BetaSIS", "AlphaSIS", "BetaSEIZ", "bSEIZ", "lSEIZ", "pSEIZ",
      "EpsilonSEIZ", "RhoSEIZ", "RSI", "Ps", "Pa", "Pp", "Qs", "Qa", "Qp"};
  return names;
}

EpiFeatures fit_epi_features(const VolumeCurve& prefix, const FitOptions& opts) {
  if (prefix.size() < 2)
    throw SchemaError("fit_epi_features: prefix shorter than 2 intervals");
  EpiFeatures out;
  double total = std::accumulate(prefix.begin(), prefix.end(), 0.0);
  if (total <= 0) return out;  // fallback vector, converged flags false
  const double population = opts.population_factor * total;

  auto sis = fit_sis(prefix, population, opts);
  out.values[0] = sis.params.beta;
  out.values[1] = sis.params.alpha;
  out.sse_sis = sis.residual_sse;
  out.converged_sis = sis.converged;

  auto seiz = fit_seiz(prefix, population, opts);
  out.values[2] = seiz.params.beta;
  out.values[3] = seiz.params.b;
  out.values[4] = seiz.params.l;
  out.values[5] = seiz.params.p;
  out.values[6] = seiz.params.epsilon;
  out.values[7] = seiz.params.rho;
  out.values[8] = (seiz.params.rho + seiz.params.epsilon > 0)
                      ? rsi(seiz.params)
                      : 0.0;
  out.sse_seiz = seiz.residual_sse;
  out.converged_seiz = seiz.converged;

  auto spikem = fit_spikem(prefix, population, opts);
  out.values[9] = spikem.params.p_shift;
  out.values[10] = spikem.params.p_strength;
  out.values[11] = spikem.params.p_period;
  out.values[12] = spikem.params.q_shift;
  out.values[13] = spikem.params.q_strength;
  out.values[14] = spikem.params.q_period;
  out.sse_spikem = spikem.residual_sse;
  out.converged_spikem = spikem.converged;
  return out;
}

}  // namespace rd::epi
