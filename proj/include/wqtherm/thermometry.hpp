#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wqtherm/pulse.hpp"
#include "wqtherm/thermal.hpp"

namespace wqtherm {

/// Side of the reflection maximum a candidate sits on.
enum class Branch { below_peak, at_peak, above_peak };

std::string_view branch_name(Branch b);

struct Candidate {
  double theta;
  Branch branch;
  double residual;     ///< |forward(theta) - R_meas|
  double sensitivity;  ///< dR/dtheta at theta
  /// Interval obtained by propagating a measurement half-width sigma along
  /// the candidate's monotone branch; set only when sigma was supplied.
  std::optional<std::pair<double, double>> theta_interval;
};

struct TemperatureEstimate {
  std::vector<Candidate> candidates;  ///< sorted ascending in theta
  std::optional<double> selected;     ///< set when the estimate is unique
  /// R range reachable by the forward model (reported with a no-solution
  /// outcome; pulse inversion only).
  std::optional<std::pair<double, double>> attainable;

  bool unique() const { return candidates.size() == 1; }
};

/// Algebraic inversion of the monochromatic reflection: candidate x values
/// x0 +- Gamma sqrt((1-R)/R), filtered to the physical range [-1, 0) and
/// mapped to theta = 1/(2 artanh(-x)). R outside (0, 1] is a domain error;
/// no physical root yields an empty candidate list.
TemperatureEstimate invert_monochromatic(double R_meas, double x0, double Gamma,
                                         std::optional<double> sigma = {});

struct SearchConfig {
  double theta_min = 1e-3;
  double theta_max = 1e3;
  std::size_t grid_points = 400;   ///< log-spaced bracketing grid
  double bisect_rel_tol = 1e-12;   ///< bracket-width stop, relative in theta
  double merge_rel_tol = 1e-4;     ///< candidates closer than this merge
  QuadratureConfig quad{200.0, 1e-12, 20000};

  void validate() const;
};

/// Numerical inversion of the pulse-averaged reflection: a log grid of
/// forward evaluations is segmented into monotone pieces (interior extrema
/// refined first), every piece bracketing R_meas is bisected, and all
/// crossings are returned. Each crossing satisfies |R(theta) - R_meas| <
/// 1e-10. R_meas outside [0, 1] is a domain error; R_meas outside the
/// attainable range yields an empty candidate list carrying that range.
TemperatureEstimate invert_pulse(double R_meas, const PulseSpec& pulse,
                                 const ModelParams& params,
                                 const SearchConfig& search = {},
                                 std::optional<double> sigma = {});

/// Intersect candidate lists from measurements at different carrier
/// detunings. Exactly one candidate common (within merge_rel_tol, relative)
/// to every estimate becomes the selection; none throws inconsistent_error,
/// several throw ambiguous_error.
TemperatureEstimate disambiguate(std::span<const TemperatureEstimate> estimates,
                                 double merge_rel_tol = 1e-4);

/// Central finite difference of the pulse reflection, step
/// h = max(1e-6, 1e-4 theta) (halved near theta = 0 to stay in domain).
double sensitivity(double theta, const PulseSpec& pulse, const ModelParams& params);

}  // namespace wqtherm
