#include "wqtherm/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "wqtherm/kernels.hpp"

namespace wqtherm {

namespace {

// Dimensionless resonance coordinates: q = x - x0, hw = Gamma for J != 0,
// the raw two-level pair (delta, gamma) otherwise. Expressions match the
// lorentz_line kernel bit for bit.
struct LineCoords {
  double q;
  double hw;
};

LineCoords line_coords(const ScatteringInput& in) {
  if (in.J != 0.0) return {in.delta / in.J - (-in.x), in.gamma / in.J};
  return {in.delta, in.gamma};
}

}  // namespace

ScatteringInput ScatteringInput::from_x(double delta, double gamma, double J, double x) {
  ScatteringInput in{delta, gamma, J, x};
  in.validate();
  return in;
}

ScatteringInput ScatteringInput::from_theta(double delta, double gamma, double J,
                                            double theta) {
  return from_x(delta, gamma, J, sigma1z_thermal(theta));
}

void ScatteringInput::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("ScatteringInput: gamma must be finite and > 0");
  if (!std::isfinite(delta) || !std::isfinite(J))
    throw std::domain_error("ScatteringInput: delta and J must be finite");
  if (!(x >= -1.0 && x <= 0.0))
    throw std::domain_error("ScatteringInput: x must lie in [-1, 0]");
}

std::complex<double> even_mode_factor(const ScatteringInput& in) {
  in.validate();
  const auto [q, hw] = line_coords(in);
  return std::complex<double>(q, hw) / std::complex<double>(q, -hw);
}

ScatteringResult amplitudes(const ScatteringInput& in) {
  in.validate();
  const auto [q, hw] = line_coords(in);
  const std::complex<double> den(q, -hw);

  ScatteringResult res;
  res.t_bar = std::complex<double>(q, hw) / den;
  res.t = q / den;
  res.r = std::complex<double>(0.0, hw) / den;
  const double q2 = q * q;
  const double hw2 = hw * hw;
  const double d = q2 + hw2;
  res.T_prob = q2 / d;
  res.R_prob = hw2 / d;
  return res;
}

std::pair<double, double> probabilities_dimensionless(double x, double x0, double Gamma) {
  if (!(Gamma > 0.0) || !std::isfinite(Gamma))
    throw std::domain_error("probabilities_dimensionless: Gamma must be finite and > 0");
  const double q = x - x0;
  const double q2 = q * q;
  const double hw2 = Gamma * Gamma;
  const double d = q2 + hw2;
  return {q2 / d, hw2 / d};
}

std::vector<SpectrumPoint> reflection_spectrum(const ModelParams& params, double theta,
                                               std::span<const double> delta_grid) {
  params.validate();
  if (delta_grid.empty())
    throw std::invalid_argument("reflection_spectrum: empty grid");

  const double x = sigma1z_thermal(theta);
  std::vector<double> s(delta_grid.size());
  double center, hw;
  if (params.J != 0.0) {
    for (std::size_t i = 0; i < delta_grid.size(); ++i) s[i] = delta_grid[i] / params.J;
    center = -x;
    hw = params.gamma / params.J;
  } else {
    s.assign(delta_grid.begin(), delta_grid.end());
    center = 0.0;
    hw = params.gamma;
  }

  std::vector<double> R(delta_grid.size());
  kernels::lorentz_line(s, center, hw, {}, R);

  std::vector<SpectrumPoint> out(delta_grid.size());
  for (std::size_t i = 0; i < delta_grid.size(); ++i) out[i] = {delta_grid[i], R[i]};
  return out;
}

}  // namespace wqtherm
