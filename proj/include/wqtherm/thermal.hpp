#pragma once

#include <string>
#include <vector>

namespace wqtherm {

/// Physical configuration of the two-atom/bath/waveguide system.
///
/// Everything is expressed in natural units (hbar = k_B = 1) with energies
/// in units of the atom-atom coupling J; temperature is the dimensionless
/// theta = k_B T / (hbar omega1). SI enters only through kelvin_to_theta /
/// theta_to_kelvin below.
struct ModelParams {
  double omega1 = 100.0;  ///< transition frequency of the bath-side atom
  double omega2 = 100.0;  ///< transition frequency of the waveguide-side atom
  double J = 1.0;         ///< ZZ coupling; Hamiltonian term is (J/2) s1z s2z
  double gamma = 0.5;     ///< waveguide decay rate, gamma = pi g^2
  double kappa = 1e-3;    ///< Ohmic spectral prefactor, Jspec(omega1) = kappa*omega1

  /// Throws std::domain_error on hard violations (non-positive frequencies
  /// or decay rate, negative kappa, non-finite values).
  void validate() const;

  /// Soft checks. Currently: the weak-coupling requirement
  /// |J| < 0.1 * min(omega1, omega2); a violated check produces one message.
  std::vector<std::string> warnings() const;
};

/// One bath temperature together with its derived thermal quantities.
struct ThermalPoint {
  double theta;  ///< k_B T / (hbar omega1), >= 0
  double n;      ///< Bose-Einstein occupation at omega1
  double x;      ///< equilibrium <s1z>, in [-1, 0)

  static ThermalPoint from_theta(double theta);
};

/// Bose-Einstein occupation n = 1/(e^{1/theta} - 1); n(0) = 0 by limit.
double occupation(double theta);

/// Equilibrium <s1z> = (1 - e^{1/theta})/(1 + e^{1/theta}), evaluated in the
/// overflow-safe form -tanh(1/(2 theta)); x(0) = -1 by limit.
double sigma1z_thermal(double theta);

struct Populations {
  double p_gg;  ///< steady-state weight of |g1 g2>
  double p_eg;  ///< steady-state weight of |e1 g2>
};

/// Steady-state populations p_gg = (n+1)/(2n+1), p_eg = n/(2n+1).
Populations steady_populations(double theta);

/// Effective temperature 1/ln(p_g/p_e) of a two-level population pair,
/// in theta units. p_e = 0 returns the zero-temperature sentinel theta = 0;
/// an inverted pair (p_e >= p_g) is a domain error.
double effective_temperature(double p_g, double p_e);

double kelvin_to_theta(double T_kelvin, double omega1_rad_per_s);
double theta_to_kelvin(double theta, double omega1_rad_per_s);

}  // namespace wqtherm
