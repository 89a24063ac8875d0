#pragma once

#include <Eigen/Dense>
#include <utility>

namespace wqtherm {

/// Two-atom product basis ordering used throughout:
/// index 0 = |g1 g2>, 1 = |g1 e2>, 2 = |e1 g2>, 3 = |e1 e2>.
enum BasisState { GG = 0, GE = 1, EG = 2, EE = 3 };

using Matrix4c = Eigen::Matrix4cd;

/// 4x4 Hermitian, trace-one, positive-semidefinite matrix over the two-atom
/// basis above.
struct DensityMatrix {
  Matrix4c rho = Matrix4c::Zero();

  static DensityMatrix pure(BasisState s);
  static DensityMatrix diagonal(double p_gg, double p_ge, double p_eg, double p_ee);

  double trace_error() const;        ///< |tr(rho) - 1|
  double hermiticity_error() const;  ///< Frobenius norm of rho - rho^dagger
  double min_eigenvalue() const;     ///< smallest eigenvalue of (rho+rho^dagger)/2

  /// Throws std::domain_error when outside tolerance:
  /// trace within trace_tol of 1, Hermitian within herm_tol, eigenvalues
  /// >= eig_floor.
  void validate(double trace_tol = 1e-12, double herm_tol = 1e-12,
                double eig_floor = -1e-10) const;

  double population(BasisState s) const { return rho(s, s).real(); }

  /// Marginal populations of atom 1: (p_g, p_e).
  std::pair<double, double> atom1_populations() const;
};

}  // namespace wqtherm
