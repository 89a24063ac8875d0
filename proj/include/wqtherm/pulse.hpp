#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wqtherm/thermal.hpp"

namespace wqtherm {

/// Lorentzian single-photon pulse, |S(w)|^2 = (eta/pi)/((w_t - w)^2 + eta^2).
struct PulseSpec {
  double delta_t;  ///< carrier detuning omega2 - omega_t, units of J
  double eta;      ///< spectral half-width, units of J, > 0

  void validate() const;
};

struct QuadratureConfig {
  double window = 200.0;          ///< seed-partition half-width, units of eta (>= 10)
  double abs_tol = 1e-8;          ///< certified absolute tolerance on R
  std::size_t max_panels = 20000; ///< Simpson panel budget

  void validate() const;
};

/// Normalized spectral density at a frequency offset from the carrier.
double spectral_weight(double omega_offset, double eta);

struct PulseReflection {
  double R;               ///< spectrally averaged reflection probability
  double error_estimate;  ///< accumulated quadrature error bound, <= abs_tol
  std::size_t panels;     ///< Simpson panels spent
};

/// |S|^2-weighted average of the monochromatic reflection R_w over the full
/// frequency axis. The weight is absorbed exactly by substituting through
/// its arctan primitive, leaving a bounded integrand (R <= 1) on a finite
/// interval; that is integrated by batched adaptive Simpson with panel
/// boundaries seeded at the reflection feature. Throws numerical_error with
/// the achieved estimate when the panel budget is exhausted.
PulseReflection pulse_reflection(const PulseSpec& pulse, const ModelParams& params,
                                 double theta, const QuadratureConfig& quad = {});

struct PulseSweepPoint {
  double theta;
  double R;
  double error_estimate;
};

std::vector<PulseSweepPoint> pulse_reflection_sweep(const PulseSpec& pulse,
                                                    const ModelParams& params,
                                                    std::span<const double> theta_grid,
                                                    const QuadratureConfig& quad = {});

}  // namespace wqtherm
