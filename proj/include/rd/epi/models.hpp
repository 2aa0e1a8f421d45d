#pragma once

#include <vector>

#include "rd/types.hpp"

namespace rd::epi {

// Per-interval tweet counts (non-negative reals).
using VolumeCurve = std::vector<double>;

// Twitter-adapted SIS: infected users never return to susceptible; alpha is
// the I-outflow rate (ceasing to post), with outflow leaving the system.
struct SisParams {
  double beta = 0;    // infection rate, per interval
  double alpha = 0;   // I-outflow rate, per interval
  double population = 1;
};

struct SeizParams {
  double beta = 0;     // S->I contact rate
  double b = 0;        // S->Z contact rate
  double l = 0;        // in [0,1]: fraction of S-Z contacts turning skeptic
  double p = 0;        // in [0,1]: fraction of S-I contacts infecting directly
  double epsilon = 0;  // E->I incubation rate
  double rho = 0;      // E->I contact-driven rate
  double population = 1;
};

struct SpikeMParams {
  double beta_strength = 0;  // scale of the power-law infectiveness f(tau)
  int start_time = 0;        // n_b
  double shock_size = 0;     // S_0
  double noise = 0;          // epsilon
  double p_period = 24, p_strength = 0, p_shift = 0;  // activity modulation
  double q_period = 24, q_strength = 0, q_shift = 0;  // periodic external shock
  double population = 1;
};

// Fixed-step RK4 over dS/dt = -bSI/N, dI/dt = bSI/N - aI; I(0)=1, S(0)=N-1.
// Returns the per-interval new-infection inflow.
VolumeCurve simulate_sis(const SisParams& params, int steps,
                         int substeps_per_interval = 8);

// RK4 over the SEIZ system; returns per-interval inflow to I.
// I(0)=1, Z(0)=1, E(0)=0, S(0)=N-2; S+E+I+Z is conserved.
VolumeCurve simulate_seiz(const SeizParams& params, int steps,
                          int substeps_per_interval = 8);

// R_SI = ((1-p)*beta + (1-l)*b) / (rho + epsilon). Throws NumericError when
// rho + epsilon == 0.
double rsi(const SeizParams& params);

// Discrete SpikeM recurrence with power-law decay f(tau)=beta*tau^-1.5,
// sinusoidal activity modulation and a periodic external shock.
// Returns the delta-B sequence (index 0 is always 0).
VolumeCurve simulate_spikem(const SpikeMParams& params, int steps);

}  // namespace rd::epi
