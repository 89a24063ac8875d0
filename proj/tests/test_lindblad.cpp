#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>

#include "wqtherm/errors.hpp"
#include "wqtherm/lindblad.hpp"

using namespace wqtherm;
using std::complex;

namespace {

DensityMatrix random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = complex<double>(g(rng), g(rng));
  Matrix4c rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{rho};
}

// Reference right-hand side built from explicit operator products, with the
// jump and projector matrices spelled out. Deliberately the slow general
// route.
Matrix4c reference_rhs(const Matrix4c& rho, const ModelParams& p, double theta) {
  const double n = occupation(theta);
  const double jw1 = p.kappa * p.omega1;
  const double rd = jw1 * (n + 1.0);
  const double ru = jw1 * n;

  Matrix4c H = Matrix4c::Zero();
  H(GG, GG) = 0.5 * (-p.omega1 - p.omega2 + p.J);
  H(GE, GE) = 0.5 * (-p.omega1 + p.omega2 - p.J);
  H(EG, EG) = 0.5 * (p.omega1 - p.omega2 - p.J);
  H(EE, EE) = 0.5 * (p.omega1 + p.omega2 + p.J);

  Matrix4c sm = Matrix4c::Zero();  // |g1><e1| x I
  sm(GG, EG) = 1.0;
  sm(GE, EE) = 1.0;
  const Matrix4c sp = sm.adjoint();
  const Matrix4c Pe = sp * sm;
  const Matrix4c Pg = sm * sp;

  const complex<double> mi(0.0, -1.0);
  return mi * (H * rho - rho * H) +
         0.5 * rd * (2.0 * sm * rho * sp - Pe * rho - rho * Pe) +
         0.5 * ru * (2.0 * sp * rho * sm - Pg * rho - rho * Pg);
}

ModelParams irregular_params() {
  ModelParams p;
  p.omega1 = 3.7;
  p.omega2 = 2.9;
  p.J = 0.21;
  p.kappa = 0.05;
  return p;
}

}  // namespace

TEST_CASE("rhs matches the explicit operator-product reference") {
  std::mt19937_64 rng(5);
  const ModelParams p = irregular_params();
  for (const double theta : {0.3, 1.0, 7.0}) {
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix rho = random_state(rng);
      const Matrix4c got = lindblad_rhs(rho.rho, p, theta);
      const Matrix4c ref = reference_rhs(rho.rho, p, theta);
      CHECK((got - ref).norm() <= 1e-13 * std::max(1.0, ref.norm()));
    }
  }
}

TEST_CASE("rhs is traceless and Hermitian for any state") {
  std::mt19937_64 rng(6);
  ModelParams p;  // defaults: omega = 100, stiff Hamiltonian scale
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_state(rng);
    const Matrix4c dot = lindblad_rhs(rho.rho, p, 0.7);
    CHECK(std::abs(dot.trace()) <= 1e-12);
    CHECK((dot - dot.adjoint()).norm() <= 1e-13);
  }
}

TEST_CASE("rhs vanishes on the closed-form steady state") {
  ModelParams p;
  for (const double theta : {0.1, 1.0, 10.0}) {
    const DensityMatrix ss = steady_state(p, theta);
    CHECK(lindblad_rhs(ss.rho, p, theta).norm() <= 1e-12);
  }
}

TEST_CASE("diagonal states are stationary under the bare Hamiltonian") {
  ModelParams p;
  p.kappa = 0.0;
  const DensityMatrix rho = DensityMatrix::diagonal(0.4, 0.3, 0.2, 0.1);
  CHECK(lindblad_rhs(rho.rho, p, 1.0).norm() == 0.0);
}

TEST_CASE("steady_state closed form") {
  ModelParams p;
  const auto s0 = steady_state(p, 0.0);
  CHECK(s0.rho(GG, GG).real() == 1.0);

  const auto shot = steady_state(p, 1e12);
  CHECK(shot.rho(GG, GG).real() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(shot.rho(EG, EG).real() == doctest::Approx(0.5).epsilon(1e-10));

  // (n+1)/(2n+1), n/(2n+1) at n = 1/(e-1), high-precision reference
  const auto s1 = steady_state(p, 1.0);
  CHECK(s1.rho(GG, GG).real() == doctest::Approx(0.73105857863000488).epsilon(1e-14));
  CHECK(s1.rho(EG, EG).real() == doctest::Approx(0.26894142136999512).epsilon(1e-14));
  CHECK(s1.rho(GE, GE).real() == 0.0);
  CHECK(s1.rho(EE, EE).real() == 0.0);
  CHECK_NOTHROW(s1.validate());
}

TEST_CASE("evolution reaches the closed-form populations") {
  ModelParams p;  // omega1 = omega2 = 100 J, kappa*omega1 = 0.1 J
  EvolutionConfig cfg;
  cfg.t_max = 150.0;
  cfg.steady_tol = 1e-10;

  for (const double theta : {1.0, 10.0}) {
    const auto traj = evolve(DensityMatrix::pure(GG), p, theta, cfg);
    CHECK(traj.steady);
    CHECK(traj.dt == doctest::Approx(1e-4).epsilon(1e-12));

    const auto& fin = traj.points.back().state;
    const auto want = steady_populations(theta);
    CHECK(std::abs(fin.population(GG) - want.p_gg) <= 1e-8);
    CHECK(std::abs(fin.population(EG) - want.p_eg) <= 1e-8);
    CHECK(std::abs(fin.population(GE)) <= 1e-12);
    CHECK(std::abs(fin.population(EE)) <= 1e-12);

    // trajectory invariants
    for (const auto& pt : traj.points) {
      CHECK(pt.state.trace_error() <= 1e-8);
      CHECK(pt.state.hermiticity_error() <= 1e-10);
      CHECK(pt.state.min_eigenvalue() >= -1e-8);
    }

    // the probe's effective temperature equals the bath temperature
    const auto [pg, pe] = fin.atom1_populations();
    CHECK(effective_temperature(pg, pe) == doctest::Approx(theta).epsilon(1e-6));
  }
}

TEST_CASE("RK4 trajectory matches the exponential of the reference Liouvillian") {
  // Column-by-column Liouvillian from the operator-product reference (which
  // is linear over arbitrary complex matrices), propagated with Eigen's
  // matrix exponential: a route sharing neither the right-hand side nor the
  // integrator with evolve().
  const ModelParams p = irregular_params();
  const double theta = 0.8;

  Eigen::Matrix<std::complex<double>, 16, 16> L;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Matrix4c basis = Matrix4c::Zero();
      basis(i, j) = 1.0;
      const Matrix4c col = reference_rhs(basis, p, theta);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) L(4 * a + b, 4 * i + j) = col(a, b);
    }

  DensityMatrix rho0 = DensityMatrix::diagonal(0.55, 0.25, 0.15, 0.05);
  rho0.rho(GG, EG) = std::complex<double>(0.10, -0.07);
  rho0.rho(EG, GG) = std::conj(rho0.rho(GG, EG));
  rho0.rho(GE, EE) = std::complex<double>(-0.04, 0.02);
  rho0.rho(EE, GE) = std::conj(rho0.rho(GE, EE));

  const double t_probe = 0.5;
  Eigen::Vector<std::complex<double>, 16> v;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) v(4 * a + b) = rho0.rho(a, b);
  const Eigen::Vector<std::complex<double>, 16> w = (L * t_probe).exp() * v;

  EvolutionConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_max = t_probe;
  cfg.steady_tol = 1e-300;  // run the full horizon
  const auto traj = evolve(rho0, p, theta, cfg);
  const Matrix4c& got = traj.points.back().state.rho;

  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      worst = std::max(worst, std::abs(got(a, b) - w(4 * a + b)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("any atom-2-ground start without coherences reaches the same steady state") {
  ModelParams p;
  EvolutionConfig cfg;
  cfg.t_max = 150.0;
  cfg.steady_tol = 1e-10;

  // atom 1 begins inverted; atom 2 stays ground
  const auto traj = evolve(DensityMatrix::diagonal(0.3, 0.0, 0.7, 0.0), p, 10.0, cfg);
  CHECK(traj.steady);
  const auto want = steady_populations(10.0);
  const auto& fin = traj.points.back().state;
  CHECK(std::abs(fin.population(GG) - want.p_gg) <= 1e-8);
  CHECK(std::abs(fin.population(EG) - want.p_eg) <= 1e-8);
}

TEST_CASE("a steady initial state flags at t = 0") {
  ModelParams p;
  const auto traj = evolve(steady_state(p, 1.0), p, 1.0, {});
  CHECK(traj.steady);
  CHECK(traj.steady_time == 0.0);
  CHECK(traj.points.size() == 1);
}

TEST_CASE("kappa = 0 freezes the populations") {
  ModelParams p;
  p.kappa = 0.0;
  DensityMatrix rho0 = DensityMatrix::diagonal(0.5, 0.2, 0.2, 0.1);
  rho0.rho(GG, GE) = complex<double>(0.1, 0.05);  // add a rotating coherence
  rho0.rho(GE, GG) = std::conj(rho0.rho(GG, GE));

  EvolutionConfig cfg;
  cfg.t_max = 2.0;
  cfg.steady_tol = 1e-300;  // force the full horizon
  const auto traj = evolve(rho0, p, 1.0, cfg);
  CHECK_FALSE(traj.steady);
  for (const auto& pt : traj.points) {
    CHECK(std::abs(pt.state.population(GG) - 0.5) <= 1e-12);
    CHECK(std::abs(pt.state.population(GE) - 0.2) <= 1e-12);
    CHECK(std::abs(pt.state.population(EG) - 0.2) <= 1e-12);
    CHECK(std::abs(pt.state.population(EE) - 0.1) <= 1e-12);
  }
}

TEST_CASE("unstable step size raises numerical_error naming dt") {
  ModelParams p;
  EvolutionConfig cfg;
  cfg.dt = 50.0;
  cfg.t_max = 5000.0;
  try {
    evolve(DensityMatrix::pure(GG), p, 1.0, cfg);
    FAIL("expected numerical_error");
  } catch (const numerical_error& e) {
    CHECK(std::string(e.what()).find("dt = 50") != std::string::npos);
  }
}

TEST_CASE("config and state validation") {
  ModelParams p;
  EvolutionConfig cfg;
  cfg.t_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = {};
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = {};
  cfg.steady_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);

  DensityMatrix bad = DensityMatrix::diagonal(0.7, 0.2, 0.2, 0.1);  // trace 1.2
  CHECK_THROWS_AS(evolve(bad, p, 1.0, {}), std::domain_error);

  DensityMatrix skew = DensityMatrix::pure(GG);
  skew.rho(0, 1) = 0.5;  // not Hermitian
  CHECK_THROWS_AS(skew.validate(), std::domain_error);

  DensityMatrix neg = DensityMatrix::diagonal(1.2, -0.2, 0.0, 0.0);
  CHECK_THROWS_AS(neg.validate(), std::domain_error);
}

TEST_CASE("trajectory sampling respects max_points") {
  ModelParams p;
  EvolutionConfig cfg;
  cfg.t_max = 1.0;
  cfg.steady_tol = 1e-300;
  cfg.max_points = 11;
  const auto traj = evolve(DensityMatrix::pure(GG), p, 1.0, cfg);
  CHECK(traj.points.size() <= 12);  // stride sampling plus the final state
  CHECK(traj.points.front().t == 0.0);
  CHECK(traj.points.back().t == doctest::Approx(1.0).epsilon(1e-9));
}
