#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wqtherm/density_matrix.hpp"
#include "wqtherm/thermal.hpp"

namespace wqtherm {

struct EvolutionConfig {
  /// Fixed RK4 step in units of 1/J. Unset = 0.01 / max(omega1, omega2,
  /// |J|, dissipation rates).
  std::optional<double> dt{};
  double t_max = 200.0;      ///< horizon, units of 1/J
  double steady_tol = 1e-10; ///< Frobenius-norm threshold on rho_dot
  std::size_t max_points = 2001;  ///< trajectory samples kept (ends included)

  void validate() const;
};

struct TrajectoryPoint {
  double t;
  DensityMatrix state;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool steady = false;
  double steady_time = 0.0;  ///< meaningful when steady
  double dt = 0.0;           ///< step actually used
};

/// Right-hand side of the master equation: unitary part -i[H, rho] with the
/// full atomic Hamiltonian, plus the bath dissipator on atom 1 with downward
/// rate kappa*omega1*(n+1) and upward rate kappa*omega1*n. Hermiticity-exact
/// and traceless by construction.
Matrix4c lindblad_rhs(const Matrix4c& rho, const ModelParams& params, double theta);

/// Fixed-step classical RK4 integration of the master equation. The steady
/// flag is raised as soon as ||rho_dot||_F < steady_tol (checked before
/// every step, so a steady initial state flags at t = 0). Trace drift
/// beyond 1e-6 aborts with numerical_error naming the offending dt.
Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params,
                  double theta, const EvolutionConfig& config = {});

/// Closed-form steady state: diag((n+1)/(2n+1), 0, n/(2n+1), 0).
DensityMatrix steady_state(const ModelParams& params, double theta);

}  // namespace wqtherm
