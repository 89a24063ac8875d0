#include "wqtherm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "wqtherm/errors.hpp"

namespace wqtherm {

namespace {

struct Ops {
  Matrix4c H;        // full atomic Hamiltonian (diagonal in this basis)
  double rate_down;  // kappa*omega1*(n+1)
  double rate_up;    // kappa*omega1*n
};

Ops make_ops(const ModelParams& p, double theta) {
  const double n = occupation(theta);
  const double jw1 = p.kappa * p.omega1;
  Matrix4c H = Matrix4c::Zero();
  H(GG, GG) = 0.5 * (-p.omega1 - p.omega2 + p.J);
  H(GE, GE) = 0.5 * (-p.omega1 + p.omega2 - p.J);
  H(EG, EG) = 0.5 * (p.omega1 - p.omega2 - p.J);
  H(EE, EE) = 0.5 * (p.omega1 + p.omega2 + p.J);
  return {H, jw1 * (n + 1.0), jw1 * n};
}

// The jump operators act on atom 1 only: sigma1- = |g1><e1| x I maps the
// (EG, EE) block onto (GG, GE), sigma1+ the reverse. Their sandwich and
// anticommutator terms reduce to element picks, which keeps the right-hand
// side Hermitian to the last bit.
Matrix4c rhs(const Ops& ops, const Matrix4c& rho) {
  const Matrix4c hr = ops.H * rho;
  // (H rho)^dagger = rho H for Hermitian inputs, so hr - hr^dagger is the
  // commutator and is exactly anti-Hermitian in floating point.
  Matrix4c out = std::complex<double>(0.0, -1.0) * (hr - hr.adjoint());

  const double rd = ops.rate_down;
  const double ru = ops.rate_up;

  // downward channel: 2 sm rho sp places the excited block on the ground one
  out(GG, GG) += rd * rho(EG, EG);
  out(GG, GE) += rd * rho(EG, EE);
  out(GE, GG) += rd * rho(EE, EG);
  out(GE, GE) += rd * rho(EE, EE);
  // upward channel: 2 sp rho sm places the ground block on the excited one
  out(EG, EG) += ru * rho(GG, GG);
  out(EG, EE) += ru * rho(GG, GE);
  out(EE, EG) += ru * rho(GE, GG);
  out(EE, EE) += ru * rho(GE, GE);

  // anticommutators with the atom-1 projectors Pe = diag(0,0,1,1),
  // Pg = diag(1,1,0,0): entry (i,j) is damped by the number of excited
  // (resp. ground) indices among i, j
  for (int i = 0; i < 4; ++i) {
    const double ei = (i >= 2) ? 1.0 : 0.0;
    for (int j = 0; j < 4; ++j) {
      const double ej = (j >= 2) ? 1.0 : 0.0;
      out(i, j) -= 0.5 * (rd * (ei + ej) + ru * ((1.0 - ei) + (1.0 - ej))) * rho(i, j);
    }
  }
  return out;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (dt && !(*dt > 0.0))
    throw std::domain_error("EvolutionConfig: dt must be > 0");
  if (!(t_max > 0.0))
    throw std::domain_error("EvolutionConfig: t_max must be > 0");
  if (!(steady_tol > 0.0))
    throw std::domain_error("EvolutionConfig: steady_tol must be > 0");
  if (max_points < 2)
    throw std::domain_error("EvolutionConfig: max_points must be >= 2");
}

Matrix4c lindblad_rhs(const Matrix4c& rho, const ModelParams& params, double theta) {
  params.validate();
  return rhs(make_ops(params, theta), rho);
}

Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params,
                  double theta, const EvolutionConfig& config) {
  params.validate();
  config.validate();
  rho0.validate();

  const Ops ops = make_ops(params, theta);
  double dt = config.dt.value_or(0.0);
  if (dt == 0.0) {
    const double fastest = std::max({params.omega1, params.omega2, std::abs(params.J),
                                     ops.rate_down, ops.rate_up});
    dt = 0.01 / fastest;
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil(config.t_max / dt));
  const std::size_t stride = std::max<std::size_t>(1, n_steps / (config.max_points - 1));

  Trajectory traj;
  traj.dt = dt;
  Matrix4c rho = rho0.rho;
  traj.points.push_back({0.0, DensityMatrix{rho}});

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;

    const Matrix4c k1 = rhs(ops, rho);
    if (k1.norm() < config.steady_tol) {
      traj.steady = true;
      traj.steady_time = t;
      break;
    }
    const Matrix4c k2 = rhs(ops, (rho + 0.5 * dt * k1).eval());
    const Matrix4c k3 = rhs(ops, (rho + 0.5 * dt * k2).eval());
    const Matrix4c k4 = rhs(ops, (rho + dt * k3).eval());
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(rho.trace() - 1.0);
    if (drift > 1e-6) {
      std::ostringstream msg;
      msg << "evolve: trace drift " << drift << " at t = " << t + dt
          << " indicates an unstable step size dt = " << dt;
      throw numerical_error(msg.str());
    }

    if ((step + 1) % stride == 0)
      traj.points.push_back({t + dt, DensityMatrix{rho}});
  }

  const double t_end = traj.steady ? traj.steady_time
                                   : static_cast<double>(n_steps) * dt;
  if (traj.points.back().t != t_end)
    traj.points.push_back({t_end, DensityMatrix{rho}});
  return traj;
}

DensityMatrix steady_state(const ModelParams& params, double theta) {
  params.validate();
  const Populations p = steady_populations(theta);
  return DensityMatrix::diagonal(p.p_gg, 0.0, p.p_eg, 0.0);
}

}  // namespace wqtherm
