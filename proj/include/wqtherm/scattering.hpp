#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "wqtherm/thermal.hpp"

namespace wqtherm {

/// Inputs for one monochromatic scattering evaluation. delta, gamma and J
/// share one unit system (J = 1 in dimensionless mode); temperature enters
/// only through x = <s1z>. J = 0 is legal and reduces to the bare two-level
/// formulas, where the (x, x0, Gamma) parameterization would degenerate.
struct ScatteringInput {
  double delta;  ///< detuning omega2 - omega
  double gamma;  ///< waveguide decay rate
  double J;      ///< atom-atom coupling
  double x;      ///< <s1z>, in [-1, 0]

  static ScatteringInput from_x(double delta, double gamma, double J, double x);
  static ScatteringInput from_theta(double delta, double gamma, double J, double theta);
  void validate() const;
};

struct ScatteringResult {
  std::complex<double> t_bar;  ///< unimodular even-mode factor
  std::complex<double> t;      ///< transmission amplitude, (1 + t_bar)/2
  std::complex<double> r;      ///< reflection amplitude, (t_bar - 1)/2
  double T_prob;               ///< |t|^2
  double R_prob;               ///< |r|^2
};

/// Even-mode phase factor t_bar = (q + i Gamma)/(q - i Gamma) with
/// q = x - x0, x0 = -delta/J, Gamma = gamma/J (raw two-level form at J = 0).
std::complex<double> even_mode_factor(const ScatteringInput& in);

ScatteringResult amplitudes(const ScatteringInput& in);

/// (T, R) = (q^2, Gamma^2) / (q^2 + Gamma^2) with q = x - x0.
std::pair<double, double> probabilities_dimensionless(double x, double x0, double Gamma);

struct SpectrumPoint {
  double delta;
  double R;
};

/// Reflection probability on a detuning grid (SIMD kernel path). Pointwise
/// identical to amplitudes().R_prob; the peak sits at delta/J = -x(theta).
std::vector<SpectrumPoint> reflection_spectrum(const ModelParams& params, double theta,
                                               std::span<const double> delta_grid);

}  // namespace wqtherm
