// Command-line front end: parameter sweeps, master-equation evolution, and
// temperature estimation, all emitted as reproducible CSV.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical/IO error,
// 4 ambiguous estimate, 5 no solution, 6 inconsistent measurements.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wqtherm/errors.hpp"
#include "wqtherm/lindblad.hpp"
#include "wqtherm/pulse.hpp"
#include "wqtherm/scattering.hpp"
#include "wqtherm/thermal.hpp"
#include "wqtherm/thermometry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAmbiguous = 4;
constexpr int kExitNoSolution = 5;
constexpr int kExitInconsistent = 6;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using KV = std::vector<std::pair<std::string, std::string>>;

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw wqtherm::numerical_error("cannot open output path: " + path);
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

void write_header(std::ostream& os, const std::string& command, const KV& config) {
  os << "# wqtherm " << command << "\n";
  for (const auto& [k, v] : config) os << "# " << k << " = " << v << "\n";
}

struct GridOpts {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 101;
  std::string scale = "linear";
};

std::vector<double> build_grid(const GridOpts& g, const std::string& name) {
  if (g.count < 1) throw std::invalid_argument(name + "-count must be >= 1");
  if (g.count > 1 && !(g.min < g.max))
    throw std::invalid_argument(name + "-min must be below " + name + "-max");
  if (g.scale != "linear" && g.scale != "log")
    throw std::invalid_argument(name + "-scale must be 'linear' or 'log'");
  if (g.scale == "log" && !(g.min > 0.0))
    throw std::invalid_argument(name + "-min must be > 0 for a log grid");

  std::vector<double> out(g.count);
  if (g.count == 1) {
    out[0] = g.min;
    return out;
  }
  const double n1 = static_cast<double>(g.count - 1);
  for (std::size_t i = 0; i < g.count; ++i) {
    const double f = static_cast<double>(i) / n1;
    out[i] = (g.scale == "log") ? g.min * std::pow(g.max / g.min, f)
                                : g.min + (g.max - g.min) * f;
  }
  out.front() = g.min;
  out.back() = g.max;
  return out;
}

void append_grid_config(KV& kv, const std::string& name, const GridOpts& g) {
  kv.push_back({name + "_min", fmt(g.min)});
  kv.push_back({name + "_max", fmt(g.max)});
  kv.push_back({name + "_count", std::to_string(g.count)});
  kv.push_back({name + "_scale", g.scale});
}

void warn_weak_coupling(const wqtherm::ModelParams& p) {
  for (const auto& w : p.warnings()) std::cerr << "warning: " << w << "\n";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Apply a `key = value` config file to a subcommand after parsing. Options
// already given on the command line keep their values.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || key == "config")
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": bad config key");
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    if (op->count() > 0) continue;  // flags override the file
    op->add_result(value);
    op->run_callback();
  }
}

// ---------------------------------------------------------------------------
// spectrum: reflection/transmission against detuning at fixed temperature

struct SpectrumOpts {
  double theta = 1.0;
  double gamma = 0.5;
  double J = 1.0;
  GridOpts delta{-3.0, 3.0, 601, "linear"};
  std::string output = "-";
};

int run_spectrum(const SpectrumOpts& o) {
  wqtherm::ModelParams params;
  params.gamma = o.gamma;
  params.J = o.J;
  params.validate();

  const auto grid = build_grid(o.delta, "delta");
  const auto spectrum = wqtherm::reflection_spectrum(params, o.theta, grid);
  const double x = wqtherm::sigma1z_thermal(o.theta);

  KV kv{{"theta", fmt(o.theta)}, {"gamma", fmt(o.gamma)}, {"J", fmt(o.J)}};
  append_grid_config(kv, "delta", o.delta);
  kv.push_back({"output", o.output});

  Output out(o.output);
  write_header(out.stream(), "spectrum", kv);
  out.stream() << "delta_over_J,T_prob,R_prob,re_t,im_t,re_r,im_r\n";
  for (const auto& pt : spectrum) {
    const auto res = wqtherm::amplitudes(
        wqtherm::ScatteringInput::from_x(pt.delta, o.gamma, o.J, x));
    const double d = (o.J != 0.0) ? pt.delta / o.J : pt.delta;
    out.stream() << fmt(d) << ',' << fmt(res.T_prob) << ',' << fmt(pt.R) << ','
                 << fmt(res.t.real()) << ',' << fmt(res.t.imag()) << ','
                 << fmt(res.r.real()) << ',' << fmt(res.r.imag()) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// thermal-sweep: reflection against temperature at fixed detuning

struct ThermalSweepOpts {
  double delta = 0.0;
  double gamma = 0.1;
  double J = 1.0;
  GridOpts theta{1e-2, 1e2, 401, "log"};
  std::optional<double> omega1_hz;
  std::string output = "-";
};

int run_thermal_sweep(const ThermalSweepOpts& o) {
  wqtherm::ModelParams params;
  params.gamma = o.gamma;
  params.J = o.J;
  params.validate();

  const auto grid = build_grid(o.theta, "theta");

  KV kv{{"delta", fmt(o.delta)}, {"gamma", fmt(o.gamma)}, {"J", fmt(o.J)}};
  append_grid_config(kv, "theta", o.theta);
  kv.push_back({"omega1_hz", o.omega1_hz ? fmt(*o.omega1_hz) : "none"});
  kv.push_back({"output", o.output});

  Output out(o.output);
  write_header(out.stream(), "thermal-sweep", kv);
  out.stream() << (o.omega1_hz ? "theta,T_kelvin,T_prob,R_prob,re_t,im_t,re_r,im_r\n"
                               : "theta,T_prob,R_prob,re_t,im_t,re_r,im_r\n");
  const double two_pi = 2.0 * std::acos(-1.0);
  for (const double theta : grid) {
    const auto res = wqtherm::amplitudes(
        wqtherm::ScatteringInput::from_theta(o.delta, o.gamma, o.J, theta));
    out.stream() << fmt(theta);
    if (o.omega1_hz)
      out.stream() << ',' << fmt(wqtherm::theta_to_kelvin(theta, two_pi * *o.omega1_hz));
    out.stream() << ',' << fmt(res.T_prob) << ',' << fmt(res.R_prob) << ','
                 << fmt(res.t.real()) << ',' << fmt(res.t.imag()) << ','
                 << fmt(res.r.real()) << ',' << fmt(res.r.imag()) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pulse-sweep: pulse-averaged reflection against temperature

struct PulseSweepOpts {
  double delta = 1.0;
  double eta = 0.005;
  double gamma = 0.1;
  double J = 1.0;
  GridOpts theta{1e-2, 1e2, 401, "log"};
  double window = 200.0;
  double abs_tol = 1e-8;
  std::size_t max_panels = 20000;
  std::optional<double> omega1_hz;
  std::string output = "-";
};

int run_pulse_sweep(const PulseSweepOpts& o) {
  wqtherm::ModelParams params;
  params.gamma = o.gamma;
  params.J = o.J;
  params.validate();
  const wqtherm::PulseSpec pulse{o.delta, o.eta};
  const wqtherm::QuadratureConfig quad{o.window, o.abs_tol, o.max_panels};

  const auto grid = build_grid(o.theta, "theta");
  const auto sweep = wqtherm::pulse_reflection_sweep(pulse, params, grid, quad);

  KV kv{{"delta", fmt(o.delta)},   {"eta", fmt(o.eta)},
        {"gamma", fmt(o.gamma)},   {"J", fmt(o.J)},
        {"window", fmt(o.window)}, {"abs_tol", fmt(o.abs_tol)},
        {"max_panels", std::to_string(o.max_panels)}};
  append_grid_config(kv, "theta", o.theta);
  kv.push_back({"omega1_hz", o.omega1_hz ? fmt(*o.omega1_hz) : "none"});
  kv.push_back({"output", o.output});

  Output out(o.output);
  write_header(out.stream(), "pulse-sweep", kv);
  out.stream() << (o.omega1_hz ? "theta,T_kelvin,R_pulse,quad_error\n"
                               : "theta,R_pulse,quad_error\n");
  const double two_pi = 2.0 * std::acos(-1.0);
  for (const auto& pt : sweep) {
    out.stream() << fmt(pt.theta);
    if (o.omega1_hz)
      out.stream() << ',' << fmt(wqtherm::theta_to_kelvin(pt.theta, two_pi * *o.omega1_hz));
    out.stream() << ',' << fmt(pt.R) << ',' << fmt(pt.error_estimate) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evolve: master-equation trajectory

struct EvolveOpts {
  double theta = 1.0;
  double omega1 = 100.0;
  double omega2 = 100.0;
  double J = 1.0;
  double kappa = 1e-3;
  double dt = 0.0;  // 0 = auto
  double t_max = 200.0;
  double steady_tol = 1e-10;
  std::size_t max_points = 2001;
  std::string initial = "gg";
  std::string output = "-";
};

int run_evolve(const EvolveOpts& o) {
  wqtherm::ModelParams params;
  params.omega1 = o.omega1;
  params.omega2 = o.omega2;
  params.J = o.J;
  params.kappa = o.kappa;
  params.validate();
  warn_weak_coupling(params);

  wqtherm::EvolutionConfig cfg;
  if (o.dt > 0.0) cfg.dt = o.dt;
  cfg.t_max = o.t_max;
  cfg.steady_tol = o.steady_tol;
  cfg.max_points = o.max_points;

  wqtherm::DensityMatrix rho0;
  if (o.initial == "gg") rho0 = wqtherm::DensityMatrix::pure(wqtherm::GG);
  else if (o.initial == "ge") rho0 = wqtherm::DensityMatrix::pure(wqtherm::GE);
  else if (o.initial == "eg") rho0 = wqtherm::DensityMatrix::pure(wqtherm::EG);
  else if (o.initial == "ee") rho0 = wqtherm::DensityMatrix::pure(wqtherm::EE);
  else if (o.initial == "thermal") rho0 = wqtherm::steady_state(params, o.theta);
  else throw std::invalid_argument("initial must be one of gg, ge, eg, ee, thermal");

  const auto traj = wqtherm::evolve(rho0, params, o.theta, cfg);

  KV kv{{"theta", fmt(o.theta)},   {"omega1", fmt(o.omega1)},
        {"omega2", fmt(o.omega2)}, {"J", fmt(o.J)},
        {"kappa", fmt(o.kappa)},   {"dt", o.dt > 0.0 ? fmt(o.dt) : "auto"},
        {"t_max", fmt(o.t_max)},   {"steady_tol", fmt(o.steady_tol)},
        {"max_points", std::to_string(o.max_points)},
        {"initial", o.initial},    {"output", o.output}};

  Output out(o.output);
  write_header(out.stream(), "evolve", kv);
  out.stream() << "# dt_used = " << fmt(traj.dt) << "\n";
  out.stream() << "# steady = " << (traj.steady ? "1" : "0") << "\n";
  if (traj.steady) out.stream() << "# steady_time = " << fmt(traj.steady_time) << "\n";
  out.stream() << "t,p_gg,p_ge,p_eg,p_ee,"
                  "re_rho_gg_ge,im_rho_gg_ge,re_rho_gg_eg,im_rho_gg_eg,"
                  "re_rho_gg_ee,im_rho_gg_ee,re_rho_ge_eg,im_rho_ge_eg,"
                  "re_rho_ge_ee,im_rho_ge_ee,re_rho_eg_ee,im_rho_eg_ee\n";
  for (const auto& pt : traj.points) {
    const auto& m = pt.state.rho;
    out.stream() << fmt(pt.t);
    for (int i = 0; i < 4; ++i) out.stream() << ',' << fmt(m(i, i).real());
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        out.stream() << ',' << fmt(m(i, j).real()) << ',' << fmt(m(i, j).imag());
    out.stream() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// steady-state: closed-form equilibrium state

struct SteadyOpts {
  double theta = 1.0;
  std::string output = "-";
};

int run_steady_state(const SteadyOpts& o) {
  const auto p = wqtherm::steady_populations(o.theta);
  const double n = wqtherm::occupation(o.theta);

  KV kv{{"theta", fmt(o.theta)}, {"output", o.output}};
  Output out(o.output);
  write_header(out.stream(), "steady-state", kv);
  out.stream() << "theta,n,p_gg,p_ge,p_eg,p_ee\n";
  out.stream() << fmt(o.theta) << ',' << fmt(n) << ',' << fmt(p.p_gg) << ",0,"
               << fmt(p.p_eg) << ",0\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// estimate-temp: invert measured reflection to bath temperature

struct EstimateOpts {
  std::string mode = "pulse";
  double gamma = 0.1;
  double J = 1.0;
  double eta = 0.005;
  std::vector<std::string> measurements;
  double theta_min = 1e-3;
  double theta_max = 1e3;
  std::size_t theta_points = 400;
  double merge_tol = 1e-4;
  double abs_tol = 1e-12;
  std::optional<double> r_sigma;
  std::optional<double> omega1_hz;
  std::string output = "-";
};

struct Measurement {
  double delta;
  double R;
};

Measurement parse_measurement(const std::string& s) {
  Measurement m{};
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &m.delta, &m.R, &tail) != 2)
    throw std::invalid_argument("measurement must be 'DELTA,R' (got '" + s + "')");
  return m;
}

int run_estimate_temp(const EstimateOpts& o) {
  if (o.measurements.empty())
    throw std::invalid_argument("estimate-temp needs at least one --measurement");
  if (o.mode != "pulse" && o.mode != "mono")
    throw std::invalid_argument("mode must be 'pulse' or 'mono'");
  if (o.mode == "mono" && o.J == 0.0)
    throw std::invalid_argument("mono inversion needs J != 0");

  wqtherm::ModelParams params;
  params.gamma = o.gamma;
  params.J = o.J;
  params.validate();

  std::vector<Measurement> ms;
  for (const auto& s : o.measurements) ms.push_back(parse_measurement(s));

  wqtherm::SearchConfig search;
  search.theta_min = o.theta_min;
  search.theta_max = o.theta_max;
  search.grid_points = o.theta_points;
  search.merge_rel_tol = o.merge_tol;
  search.quad.abs_tol = o.abs_tol;

  std::vector<wqtherm::TemperatureEstimate> estimates;
  for (const auto& m : ms) {
    if (o.mode == "pulse") {
      const wqtherm::PulseSpec pulse{m.delta, o.eta};
      estimates.push_back(wqtherm::invert_pulse(m.R, pulse, params, search, o.r_sigma));
    } else {
      estimates.push_back(wqtherm::invert_monochromatic(m.R, -m.delta / o.J,
                                                        o.gamma / o.J, o.r_sigma));
    }
  }

  KV kv{{"mode", o.mode},
        {"gamma", fmt(o.gamma)},
        {"J", fmt(o.J)},
        {"eta", fmt(o.eta)},
        {"theta_min", fmt(o.theta_min)},
        {"theta_max", fmt(o.theta_max)},
        {"theta_points", std::to_string(o.theta_points)},
        {"merge_tol", fmt(o.merge_tol)},
        {"abs_tol", fmt(o.abs_tol)},
        {"r_sigma", o.r_sigma ? fmt(*o.r_sigma) : "none"},
        {"omega1_hz", o.omega1_hz ? fmt(*o.omega1_hz) : "none"}};
  for (std::size_t i = 0; i < ms.size(); ++i)
    kv.push_back({"measurement_" + std::to_string(i),
                  fmt(ms[i].delta) + "," + fmt(ms[i].R)});
  kv.push_back({"output", o.output});

  Output out(o.output);
  write_header(out.stream(), "estimate-temp", kv);

  const double two_pi = 2.0 * std::acos(-1.0);
  auto kelvin_of = [&](double theta) {
    return o.omega1_hz ? wqtherm::theta_to_kelvin(theta, two_pi * *o.omega1_hz)
                       : std::nan("");
  };
  auto write_rows = [&](const wqtherm::TemperatureEstimate& est) {
    for (const auto& c : est.candidates) {
      out.stream() << wqtherm::branch_name(c.branch) << ',' << fmt(c.theta) << ','
                   << fmt(kelvin_of(c.theta)) << ',' << fmt(c.residual) << ','
                   << fmt(c.sensitivity);
      if (o.r_sigma && c.theta_interval)
        out.stream() << ',' << fmt(c.theta_interval->first) << ','
                     << fmt(c.theta_interval->second);
      out.stream() << '\n';
    }
  };

  for (std::size_t i = 0; i < estimates.size(); ++i) {
    out.stream() << "# measurement " << i
                 << ": candidates = " << estimates[i].candidates.size();
    if (estimates[i].attainable)
      out.stream() << ", attainable R = [" << fmt(estimates[i].attainable->first)
                   << ", " << fmt(estimates[i].attainable->second) << "]";
    out.stream() << "\n";
  }

  out.stream() << (o.r_sigma
                       ? "branch,theta,T_kelvin,residual,sensitivity,theta_lo,theta_hi\n"
                       : "branch,theta,T_kelvin,residual,sensitivity\n");

  auto fail_with = [&](const char* status, int code) {
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      out.stream() << "# measurement " << i << "\n";
      write_rows(estimates[i]);
    }
    out.stream() << "# status = " << status << "\n";
    return code;
  };

  for (const auto& est : estimates)
    if (est.candidates.empty()) return fail_with("no-solution", kExitNoSolution);

  wqtherm::TemperatureEstimate final_est;
  if (estimates.size() == 1) {
    final_est = estimates.front();
    if (!final_est.selected) return fail_with("ambiguous", kExitAmbiguous);
  } else {
    try {
      final_est = wqtherm::disambiguate(estimates, o.merge_tol);
    } catch (const wqtherm::ambiguous_error& e) {
      std::cerr << e.what() << "\n";
      return fail_with("ambiguous", kExitAmbiguous);
    } catch (const wqtherm::inconsistent_error& e) {
      std::cerr << e.what() << "\n";
      return fail_with("inconsistent", kExitInconsistent);
    }
  }

  write_rows(final_est);
  out.stream() << "# status = selected\n";
  out.stream() << "# selected_theta = " << fmt(*final_est.selected) << "\n";
  if (o.omega1_hz)
    out.stream() << "# selected_kelvin = " << fmt(kelvin_of(*final_est.selected)) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// units: theta <-> kelvin conversion factors

struct UnitsOpts {
  double omega1_hz = 0.0;
  std::vector<double> kelvin;
  std::vector<double> theta;
  std::string output = "-";
};

int run_units(const UnitsOpts& o) {
  if (!(o.omega1_hz > 0.0))
    throw std::invalid_argument("units needs --omega1-hz > 0");
  const double two_pi = 2.0 * std::acos(-1.0);
  const double w1 = two_pi * o.omega1_hz;
  const double theta_per_kelvin = wqtherm::kelvin_to_theta(1.0, w1);

  KV kv{{"omega1_hz", fmt(o.omega1_hz)}, {"output", o.output}};
  Output out(o.output);
  write_header(out.stream(), "units", kv);
  out.stream() << "quantity,input,value\n";
  out.stream() << "theta_per_kelvin,," << fmt(theta_per_kelvin) << "\n";
  out.stream() << "kelvin_per_theta,," << fmt(1.0 / theta_per_kelvin) << "\n";
  out.stream() << "theta_per_millikelvin,," << fmt(theta_per_kelvin / 1000.0) << "\n";
  for (const double v : o.kelvin)
    out.stream() << "theta_of_kelvin," << fmt(v) << ','
                 << fmt(wqtherm::kelvin_to_theta(v, w1)) << "\n";
  for (const double v : o.theta)
    out.stream() << "kelvin_of_theta," << fmt(v) << ','
                 << fmt(wqtherm::theta_to_kelvin(v, w1)) << "\n";
  return kExitOk;
}

void add_grid_flags(CLI::App* cmd, const std::string& name, GridOpts& g,
                    const std::string& what) {
  cmd->add_option("--" + name + "-min", g.min, what + " grid minimum");
  cmd->add_option("--" + name + "-max", g.max, what + " grid maximum");
  cmd->add_option("--" + name + "-count", g.count, what + " grid point count");
  cmd->add_option("--" + name + "-scale", g.scale, "grid spacing: linear or log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wqtherm: temperature-dependent single-photon transport in a 1D "
      "waveguide and the matching optical thermometer"};
  app.require_subcommand(1);

  SpectrumOpts spec_o;
  auto* spec = app.add_subcommand(
      "spectrum", "reflection/transmission against detuning at fixed temperature");
  std::string spec_cfg;
  spec->add_option("--config", spec_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  spec->add_option("--theta", spec_o.theta, "dimensionless temperature k_B T/(hbar omega1)");
  spec->add_option("--gamma", spec_o.gamma, "waveguide decay rate (units of J)");
  spec->add_option("--J", spec_o.J, "atom-atom coupling (sets the unit)");
  add_grid_flags(spec, "delta", spec_o.delta, "detuning");
  spec->add_option("-o,--output", spec_o.output, "output path ('-' = stdout)");

  ThermalSweepOpts th_o;
  auto* th = app.add_subcommand("thermal-sweep",
                                "monochromatic reflection against temperature");
  std::string th_cfg;
  th->add_option("--config", th_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  th->add_option("--delta", th_o.delta, "detuning omega2 - omega (units of J)");
  th->add_option("--gamma", th_o.gamma, "waveguide decay rate (units of J)");
  th->add_option("--J", th_o.J, "atom-atom coupling");
  add_grid_flags(th, "theta", th_o.theta, "temperature");
  th->add_option("--omega1-hz", th_o.omega1_hz,
                 "atom-1 frequency in Hz: adds a kelvin column");
  th->add_option("-o,--output", th_o.output, "output path");

  PulseSweepOpts pu_o;
  auto* pu = app.add_subcommand("pulse-sweep",
                                "Lorentzian-pulse reflection against temperature");
  std::string pu_cfg;
  pu->add_option("--config", pu_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  pu->add_option("--delta", pu_o.delta, "carrier detuning omega2 - omega_t (units of J)");
  pu->add_option("--eta", pu_o.eta, "pulse spectral half-width (units of J)");
  pu->add_option("--gamma", pu_o.gamma, "waveguide decay rate (units of J)");
  pu->add_option("--J", pu_o.J, "atom-atom coupling");
  add_grid_flags(pu, "theta", pu_o.theta, "temperature");
  pu->add_option("--window", pu_o.window, "quadrature seed window (units of eta)");
  pu->add_option("--abs-tol", pu_o.abs_tol, "quadrature absolute tolerance");
  pu->add_option("--max-panels", pu_o.max_panels, "quadrature panel budget");
  pu->add_option("--omega1-hz", pu_o.omega1_hz,
                 "atom-1 frequency in Hz: adds a kelvin column");
  pu->add_option("-o,--output", pu_o.output, "output path");

  EvolveOpts ev_o;
  auto* ev = app.add_subcommand("evolve", "integrate the two-atom master equation");
  std::string ev_cfg;
  ev->add_option("--config", ev_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  ev->add_option("--theta", ev_o.theta, "bath temperature (dimensionless)");
  ev->add_option("--omega1", ev_o.omega1, "atom-1 frequency (units of J)");
  ev->add_option("--omega2", ev_o.omega2, "atom-2 frequency (units of J)");
  ev->add_option("--J", ev_o.J, "atom-atom coupling");
  ev->add_option("--kappa", ev_o.kappa, "Ohmic bath prefactor");
  ev->add_option("--dt", ev_o.dt, "RK4 step (0 = auto)");
  ev->add_option("--t-max", ev_o.t_max, "integration horizon (units of 1/J)");
  ev->add_option("--steady-tol", ev_o.steady_tol, "steady-state threshold on ||rho_dot||");
  ev->add_option("--max-points", ev_o.max_points, "trajectory samples kept");
  ev->add_option("--initial", ev_o.initial, "initial state: gg, ge, eg, ee, thermal");
  ev->add_option("-o,--output", ev_o.output, "output path");

  SteadyOpts st_o;
  auto* st = app.add_subcommand("steady-state", "closed-form equilibrium populations");
  std::string st_cfg;
  st->add_option("--config", st_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  st->add_option("--theta", st_o.theta, "bath temperature (dimensionless)");
  st->add_option("-o,--output", st_o.output, "output path");

  EstimateOpts es_o;
  auto* es = app.add_subcommand("estimate-temp",
                                "invert measured reflection to bath temperature");
  std::string es_cfg;
  es->add_option("--config", es_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  es->add_option("--mode", es_o.mode, "forward model: pulse or mono");
  es->add_option("--gamma", es_o.gamma, "waveguide decay rate (units of J)");
  es->add_option("--J", es_o.J, "atom-atom coupling");
  es->add_option("--eta", es_o.eta, "pulse spectral half-width (pulse mode)");
  es->add_option("--measurement", es_o.measurements,
                 "one measurement as 'DELTA,R'; repeatable");
  es->add_option("--theta-min", es_o.theta_min, "search grid lower bound");
  es->add_option("--theta-max", es_o.theta_max, "search grid upper bound");
  es->add_option("--theta-points", es_o.theta_points, "search grid size");
  es->add_option("--merge-tol", es_o.merge_tol, "relative candidate merge tolerance");
  es->add_option("--abs-tol", es_o.abs_tol, "forward-model quadrature tolerance");
  es->add_option("--r-sigma", es_o.r_sigma,
                 "measurement half-width, propagated to theta intervals");
  es->add_option("--omega1-hz", es_o.omega1_hz,
                 "atom-1 frequency in Hz: adds kelvin output");
  es->add_option("-o,--output", es_o.output, "output path");

  UnitsOpts un_o;
  auto* un = app.add_subcommand("units", "theta <-> kelvin conversion factors");
  std::string un_cfg;
  un->add_option("--config", un_cfg,
                  "config file: one 'key = value' per line, # comments; "
                  "flags take precedence");
  un->add_option("--omega1-hz", un_o.omega1_hz, "atom-1 frequency in Hz")->required();
  un->add_option("--kelvin", un_o.kelvin, "temperatures to convert to theta; repeatable");
  un->add_option("--theta", un_o.theta, "temperatures to convert to kelvin; repeatable");
  un->add_option("-o,--output", un_o.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (spec->parsed() && !spec_cfg.empty()) apply_config_file(spec, spec_cfg);
    if (th->parsed() && !th_cfg.empty()) apply_config_file(th, th_cfg);
    if (pu->parsed() && !pu_cfg.empty()) apply_config_file(pu, pu_cfg);
    if (ev->parsed() && !ev_cfg.empty()) apply_config_file(ev, ev_cfg);
    if (st->parsed() && !st_cfg.empty()) apply_config_file(st, st_cfg);
    if (es->parsed() && !es_cfg.empty()) apply_config_file(es, es_cfg);
    if (un->parsed() && !un_cfg.empty()) apply_config_file(un, un_cfg);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (spec->parsed()) return run_spectrum(spec_o);
    if (th->parsed()) return run_thermal_sweep(th_o);
    if (pu->parsed()) return run_pulse_sweep(pu_o);
    if (ev->parsed()) return run_evolve(ev_o);
    if (st->parsed()) return run_steady_state(st_o);
    if (es->parsed()) return run_estimate_temp(es_o);
    if (un->parsed()) return run_units(un_o);
  } catch (const wqtherm::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
