#include "wqtherm/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wqtherm/errors.hpp"
#include "wqtherm/kernels.hpp"

namespace wqtherm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// The monochromatic reflection is an exact Lorentzian in the frequency
// offset u = omega - omega_t:  R(u) = hw^2 / ((u - u_star)^2 + hw^2) with
// u_star = J*x + delta_t and hw = gamma (the J = 0 case included).
// Substituting u = eta*tan(v) absorbs the pulse weight through its arctan
// primitive:
//
//   integral |S|^2 R du  =  (1/pi) * integral R(eta tan v) dv,  v in (-pi/2, pi/2)
//
// leaving a bounded smooth integrand on a finite interval. No window
// truncation, no tail estimate.
struct Integrand {
  double eta;
  double u_star;
  double hw;
};

void eval_nodes(const Integrand& g, const std::vector<double>& v,
                std::vector<double>& u, std::vector<double>& f) {
  u.resize(v.size());
  f.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = g.eta * std::tan(v[i]);
  kernels::lorentz_line(u, g.u_star, g.hw, {}, f);
}

// Seed panel boundaries: the weight shoulder, the configured window, and
// the reflection feature with a few half-widths of margin. Adaptive
// refinement does the rest; the seeds only guarantee the narrow feature is
// never stepped over.
std::vector<double> seed_breakpoints(const Integrand& g, double window) {
  std::vector<double> bp{-kHalfPi, -std::atan(window), -kPi / 4.0, 0.0,
                         kPi / 4.0, std::atan(window), kHalfPi};
  for (const int k : {-8, -4, -2, -1, 0, 1, 2, 4, 8})
    bp.push_back(std::atan((g.u_star + static_cast<double>(k) * g.hw) / g.eta));
  std::sort(bp.begin(), bp.end());
  std::vector<double> out;
  out.push_back(-kHalfPi);
  for (const double v : bp)
    if (v > out.back() + 1e-9 && v < kHalfPi - 1e-9) out.push_back(v);
  out.push_back(kHalfPi);
  return out;
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double S;
};

struct QuadOutcome {
  double value;
  double error;
  std::size_t panels;
};

QuadOutcome integrate(const Integrand& g, const QuadratureConfig& cfg) {
  const auto bp = seed_breakpoints(g, cfg.window);

  std::vector<double> v, u, f;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    v.push_back(bp[i]);
    v.push_back(0.5 * (bp[i] + bp[i + 1]));
  }
  v.push_back(bp.back());
  eval_nodes(g, v, u, f);

  std::vector<Panel> active;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    Panel p{bp[i], v[2 * i + 1], bp[i + 1], f[2 * i], f[2 * i + 1], f[2 * i + 2], 0.0};
    p.S = simpson(p.a, p.b, p.fa, p.fm, p.fb);
    active.push_back(p);
  }
  std::size_t panels_total = active.size();

  long double acc = 0.0L;
  double err_acc = 0.0;
  std::vector<Panel> next;
  std::vector<double> vm;

  while (!active.empty()) {
    vm.clear();
    for (const Panel& p : active) {
      vm.push_back(0.5 * (p.a + p.m));
      vm.push_back(0.5 * (p.m + p.b));
    }
    eval_nodes(g, vm, u, f);

    next.clear();
    for (std::size_t i = 0; i < active.size(); ++i) {
      const Panel& p = active[i];
      const double vl = vm[2 * i], vr = vm[2 * i + 1];
      const double fl = f[2 * i], fr = f[2 * i + 1];
      const double Sl = simpson(p.a, p.m, p.fa, fl, p.fm);
      const double Sr = simpson(p.m, p.b, p.fm, fr, p.fb);
      const double S2 = Sl + Sr;
      const double e = (S2 - p.S) / 15.0;

      // proportional tolerance allocation over the raw integral; the final
      // division by pi turns abs_tol*(b-a) into abs_tol*(b-a)/pi per panel
      if (std::abs(e) <= cfg.abs_tol * (p.b - p.a) || (p.b - p.a) <= 1e-13) {
        acc += S2 + e;  // Richardson-corrected
        err_acc += std::abs(e);
      } else {
        if (panels_total + 2 > cfg.max_panels) {
          double pending = err_acc;
          for (const Panel& q : active) pending += std::abs(q.S) * 0.5;
          std::ostringstream msg;
          msg << "pulse_reflection: quadrature did not converge within "
              << cfg.max_panels << " panels (error estimate " << pending / kPi << ")";
          throw numerical_error(msg.str());
        }
        panels_total += 2;
        next.push_back({p.a, vl, p.m, p.fa, fl, p.fm, Sl});
        next.push_back({p.m, vr, p.b, p.fm, fr, p.fb, Sr});
      }
    }
    active.swap(next);
  }

  return {static_cast<double>(acc) / kPi, err_acc / kPi, panels_total};
}

}  // namespace

void PulseSpec::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::domain_error("PulseSpec: eta must be finite and > 0");
  if (!std::isfinite(delta_t))
    throw std::domain_error("PulseSpec: delta_t must be finite");
}

void QuadratureConfig::validate() const {
  if (!(window >= 10.0))
    throw std::domain_error("QuadratureConfig: window must be >= 10");
  if (!(abs_tol > 0.0))
    throw std::domain_error("QuadratureConfig: abs_tol must be > 0");
  if (max_panels < 8)
    throw std::domain_error("QuadratureConfig: max_panels must be >= 8");
}

double spectral_weight(double omega_offset, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::domain_error("spectral_weight: eta must be finite and > 0");
  return (eta / kPi) / (omega_offset * omega_offset + eta * eta);
}

PulseReflection pulse_reflection(const PulseSpec& pulse, const ModelParams& params,
                                 double theta, const QuadratureConfig& quad) {
  pulse.validate();
  params.validate();
  quad.validate();

  const double x = sigma1z_thermal(theta);
  const Integrand g{pulse.eta, params.J * x + pulse.delta_t, params.gamma};
  const QuadOutcome q = integrate(g, quad);
  return {q.value, q.error, q.panels};
}

std::vector<PulseSweepPoint> pulse_reflection_sweep(const PulseSpec& pulse,
                                                    const ModelParams& params,
                                                    std::span<const double> theta_grid,
                                                    const QuadratureConfig& quad) {
  if (theta_grid.empty())
    throw std::invalid_argument("pulse_reflection_sweep: empty grid");
  std::vector<PulseSweepPoint> out;
  out.reserve(theta_grid.size());
  for (const double theta : theta_grid) {
    try {
      const PulseReflection r = pulse_reflection(pulse, params, theta, quad);
      out.push_back({theta, r.R, r.error_estimate});
    } catch (const numerical_error& e) {
      std::ostringstream msg;
      msg << "pulse_reflection_sweep at theta = " << theta << ": " << e.what();
      throw numerical_error(msg.str());
    }
  }
  return out;
}

}  // namespace wqtherm
