#include "wqtherm/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wqtherm {

DensityMatrix DensityMatrix::pure(BasisState s) {
  DensityMatrix d;
  d.rho(s, s) = 1.0;
  return d;
}

DensityMatrix DensityMatrix::diagonal(double p_gg, double p_ge, double p_eg, double p_ee) {
  DensityMatrix d;
  d.rho(GG, GG) = p_gg;
  d.rho(GE, GE) = p_ge;
  d.rho(EG, EG) = p_eg;
  d.rho(EE, EE) = p_ee;
  return d;
}

double DensityMatrix::trace_error() const { return std::abs(rho.trace() - 1.0); }

double DensityMatrix::hermiticity_error() const {
  return (rho - rho.adjoint()).norm();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix4c herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double trace_tol, double herm_tol, double eig_floor) const {
  if (!rho.allFinite())
    throw std::domain_error("DensityMatrix: non-finite entries");
  if (trace_error() > trace_tol)
    throw std::domain_error("DensityMatrix: trace deviates from 1 by " +
                            std::to_string(trace_error()));
  if (hermiticity_error() > herm_tol)
    throw std::domain_error("DensityMatrix: not Hermitian, deviation " +
                            std::to_string(hermiticity_error()));
  const double lam = min_eigenvalue();
  if (lam < eig_floor)
    throw std::domain_error("DensityMatrix: negative eigenvalue " + std::to_string(lam));
}

std::pair<double, double> DensityMatrix::atom1_populations() const {
  const double p_g = rho(GG, GG).real() + rho(GE, GE).real();
  const double p_e = rho(EG, EG).real() + rho(EE, EE).real();
  return {p_g, p_e};
}

}  // namespace wqtherm
