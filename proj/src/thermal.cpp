#include "wqtherm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wqtherm/constants.hpp"

namespace wqtherm {

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw std::domain_error("theta must be finite and >= 0");
}

}  // namespace

void ModelParams::validate() const {
  if (!(omega1 > 0.0) || !std::isfinite(omega1))
    throw std::domain_error("ModelParams: omega1 must be finite and > 0");
  if (!(omega2 > 0.0) || !std::isfinite(omega2))
    throw std::domain_error("ModelParams: omega2 must be finite and > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("ModelParams: gamma must be finite and > 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::domain_error("ModelParams: kappa must be finite and >= 0");
  if (!std::isfinite(J))
    throw std::domain_error("ModelParams: J must be finite");
}

std::vector<std::string> ModelParams::warnings() const {
  std::vector<std::string> out;
  if (std::abs(J) >= 0.1 * std::min(omega1, omega2))
    out.push_back("weak-coupling regime violated: |J| >= 0.1 * min(omega1, omega2)");
  return out;
}

ThermalPoint ThermalPoint::from_theta(double theta) {
  return {theta, occupation(theta), sigma1z_thermal(theta)};
}

double occupation(double theta) {
  check_theta(theta);
  if (theta == 0.0) return 0.0;  // zero-temperature limit
  return 1.0 / std::expm1(1.0 / theta);
}

double sigma1z_thermal(double theta) {
  check_theta(theta);
  if (theta == 0.0) return -1.0;  // ground-state limit
  return -std::tanh(0.5 / theta);
}

Populations steady_populations(double theta) {
  const double n = occupation(theta);
  return {(n + 1.0) / (2.0 * n + 1.0), n / (2.0 * n + 1.0)};
}

double effective_temperature(double p_g, double p_e) {
  if (!std::isfinite(p_g) || !std::isfinite(p_e) || p_g < 0.0 || p_e < 0.0)
    throw std::domain_error("effective_temperature: populations must be finite and >= 0");
  if (std::abs(p_g + p_e - 1.0) > 1e-6)
    throw std::domain_error("effective_temperature: populations must sum to 1");
  if (p_e == 0.0) return 0.0;  // pure ground state
  if (p_e >= p_g)
    throw std::domain_error(
        "effective_temperature: population inversion (p_e >= p_g) has no "
        "positive effective temperature");
  return 1.0 / std::log(p_g / p_e);
}

double kelvin_to_theta(double T_kelvin, double omega1_rad_per_s) {
  if (!(omega1_rad_per_s > 0.0) || !std::isfinite(omega1_rad_per_s))
    throw std::domain_error("kelvin_to_theta: omega1 must be finite and > 0");
  if (!(T_kelvin >= 0.0))
    throw std::domain_error("kelvin_to_theta: T must be >= 0");
  return k_boltzmann * T_kelvin / (hbar * omega1_rad_per_s);
}

double theta_to_kelvin(double theta, double omega1_rad_per_s) {
  if (!(omega1_rad_per_s > 0.0) || !std::isfinite(omega1_rad_per_s))
    throw std::domain_error("theta_to_kelvin: omega1 must be finite and > 0");
  check_theta(theta);
  return theta * hbar * omega1_rad_per_s / k_boltzmann;
}

}  // namespace wqtherm
