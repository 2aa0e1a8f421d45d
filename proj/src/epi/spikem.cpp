#include <algorithm>
#include <cmath>

#include "rd/epi/models.hpp"

namespace rd::epi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double modulation(double n, double period, double strength, double shift) {
  if (period <= 0) return 1.0;
  return 1.0 - strength / 2.0 * (std::sin(kTwoPi * (n + shift) / period) + 1.0);
}

}  // namespace

VolumeCurve simulate_spikem(const SpikeMParams& params, int steps) {
  if (steps < 1) throw NumericError("simulate_spikem: steps must be >= 1");
  const int nb = params.start_time;
  VolumeCurve delta(steps, 0.0);
  std::vector<double> shock(steps, 0.0);
  for (int n = nb; n < steps; ++n) {
    shock[n] = params.shock_size *
               modulation(n, params.q_period, params.q_strength, params.q_shift);
  }
  double pool = params.population;  // un-infected B(n)
  for (int n = 0; n + 1 < steps; ++n) {
    double infectiveness = 0;
    for (int t = std::max(nb, 0); t <= n; ++t) {
      double tau = static_cast<double>(n + 1 - t);
      infectiveness += (delta[t] + shock[t]) *
                       params.beta_strength * std::pow(tau, -1.5);
    }
    double act = modulation(n, params.p_period, params.p_strength, params.p_shift);
    double db = act * (pool * infectiveness + params.noise);
    db = std::clamp(db, 0.0, pool);
    if (!std::isfinite(db))
      throw NumericError("simulate_spikem: non-finite volume at step " +
                         std::to_string(n + 1));
    delta[n + 1] = db;
    pool -= db;
  }
  return delta;
}

}  // namespace rd::epi
