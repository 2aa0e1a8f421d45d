#include <cmath>

#include "rd/epi/models.hpp"

namespace rd::epi {

namespace {

struct SeizState {
  double s, e, i, z, c;  // c = cumulative inflow to I
};

SeizState deriv(const SeizParams& q, const SeizState& x) {
  const double n = q.population;
  const double si = q.beta * x.s * x.i / n;    // S-I contacts
  const double sz = q.b * x.s * x.z / n;       // S-Z contacts
  const double ei = q.rho * x.e * x.i / n;     // contact-driven incubation
  const double inc = q.epsilon * x.e;          // spontaneous incubation
  SeizState d;
  d.s = -si - sz;
  d.e = (1 - q.p) * si + (1 - q.l) * sz - ei - inc;
  d.i = q.p * si + ei + inc;
  d.z = q.l * sz;
  d.c = d.i;
  return d;
}

SeizState axpy(const SeizState& x, double h, const SeizState& d) {
  return {x.s + h * d.s, x.e + h * d.e, x.i + h * d.i, x.z + h * d.z,
          x.c + h * d.c};
}

}  // namespace

VolumeCurve simulate_seiz(const SeizParams& params, int steps,
                          int substeps_per_interval) {
  if (steps < 1) throw NumericError("simulate_seiz: steps must be >= 1");
  // One seed poster and one seed skeptic: with Z(0)=0 the Z compartment can
  // never grow and the b,l parameters would have no effect on the curve.
  SeizState x{params.population - 2.0, 0.0, 1.0, 1.0, 0.0};
  VolumeCurve vol(steps);
  const double h = 1.0 / substeps_per_interval;
  for (int n = 0; n < steps; ++n) {
    double c_before = x.c;
    for (int k = 0; k < substeps_per_interval; ++k) {
      SeizState k1 = deriv(params, x);
      SeizState k2 = deriv(params, axpy(x, h / 2, k1));
      SeizState k3 = deriv(params, axpy(x, h / 2, k2));
      SeizState k4 = deriv(params, axpy(x, h, k3));
      x.s += h / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
      x.e += h / 6 * (k1.e + 2 * k2.e + 2 * k3.e + k4.e);
      x.i += h / 6 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i);
      x.z += h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z);
      x.c += h / 6 * (k1.c + 2 * k2.c + 2 * k3.c + k4.c);
    }
    vol[n] = x.c - c_before;
    if (!std::isfinite(x.s + x.e + x.i + x.z))
      throw NumericError("simulate_seiz: non-finite state at interval " +
                         std::to_string(n));
  }
  return vol;
}

double rsi(const SeizParams& params) {
  const double denom = params.rho + params.epsilon;
  if (denom <= 0)
    throw NumericError("rsi: rho + epsilon must be positive");
  return ((1 - params.p) * params.beta + (1 - params.l) * params.b) / denom;
}

}  // namespace rd::epi
