#include <cmath>

#include "rd/epi/models.hpp"

namespace rd::epi {

namespace {

struct SisState {
  double s, i, c;  // c = cumulative new infections
};

SisState deriv(const SisParams& p, const SisState& x) {
  double force = p.beta * x.s * x.i / p.population;
  return {-force, force - p.alpha * x.i, force};
}

SisState axpy(const SisState& x, double h, const SisState& d) {
  return {x.s + h * d.s, x.i + h * d.i, x.c + h * d.c};
}

}  // namespace

VolumeCurve simulate_sis(const SisParams& params, int steps,
                         int substeps_per_interval) {
  if (steps < 1) throw NumericError("simulate_sis: steps must be >= 1");
  SisState x{params.population - 1.0, 1.0, 0.0};
  VolumeCurve vol(steps);
  const double h = 1.0 / substeps_per_interval;
  for (int n = 0; n < steps; ++n) {
    double c_before = x.c;
    for (int k = 0; k < substeps_per_interval; ++k) {
      SisState k1 = deriv(params, x);
      SisState k2 = deriv(params, axpy(x, h / 2, k1));
      SisState k3 = deriv(params, axpy(x, h / 2, k2));
      SisState k4 = deriv(params, axpy(x, h, k3));
      x.s += h / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
      x.i += h / 6 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i);
      x.c += h / 6 * (k1.c + 2 * k2.c + 2 * k3.c + k4.c);
    }
    vol[n] = x.c - c_before;
    if (!std::isfinite(vol[n]))
      throw NumericError("simulate_sis: non-finite state at interval " +
                         std::to_string(n));
  }
  return vol;
}

}  // namespace rd::epi
