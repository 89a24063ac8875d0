#include "wqtherm/thermometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wqtherm/errors.hpp"
#include "wqtherm/scattering.hpp"

namespace wqtherm {

namespace {

// x in [-1, 0) -> theta; the endpoint x = -1 is the zero-temperature limit.
double theta_of_x(double x) {
  if (x <= -1.0) return 0.0;
  return 1.0 / (2.0 * std::atanh(-x));
}

bool physical_x(double x) { return x >= -1.0 && x < 0.0; }

double mono_forward(double theta, double x0, double Gamma) {
  return probabilities_dimensionless(sigma1z_thermal(theta), x0, Gamma).second;
}

double fd_step(double theta) {
  return std::min(std::max(1e-6, 1e-4 * theta), 0.5 * theta);
}

double mono_sensitivity(double theta, double x0, double Gamma) {
  if (theta == 0.0) {
    const double h = 1e-6;
    return (mono_forward(h, x0, Gamma) - mono_forward(0.0, x0, Gamma)) / h;
  }
  const double h = fd_step(theta);
  return (mono_forward(theta + h, x0, Gamma) - mono_forward(theta - h, x0, Gamma)) /
         (2.0 * h);
}

// theta for one branch of the algebraic inversion at reflection value R,
// with out-of-range roots clamped to the domain edges.
double mono_branch_theta(double R, double x0, double Gamma, Branch br) {
  R = std::clamp(R, std::numeric_limits<double>::min(), 1.0);
  const double off = Gamma * std::sqrt((1.0 - R) / R);
  const double x = (br == Branch::above_peak) ? x0 + off : x0 - off;
  if (x <= -1.0) return 0.0;
  if (x >= 0.0) return std::numeric_limits<double>::infinity();
  return theta_of_x(x);
}

}  // namespace

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::below_peak: return "below-peak";
    case Branch::at_peak: return "at-peak";
    case Branch::above_peak: return "above-peak";
  }
  return "?";
}

TemperatureEstimate invert_monochromatic(double R_meas, double x0, double Gamma,
                                         std::optional<double> sigma) {
  if (!(Gamma > 0.0) || !std::isfinite(Gamma))
    throw std::domain_error("invert_monochromatic: Gamma must be finite and > 0");
  if (!std::isfinite(R_meas) || !(R_meas > 0.0) || R_meas > 1.0)
    throw std::domain_error("invert_monochromatic: R_meas must lie in (0, 1]");
  if (sigma && !(*sigma >= 0.0))
    throw std::domain_error("invert_monochromatic: sigma must be >= 0");

  const double off = Gamma * std::sqrt((1.0 - R_meas) / R_meas);

  TemperatureEstimate est;
  auto add = [&](double x, Branch br) {
    if (!physical_x(x)) return;
    Candidate c;
    c.theta = theta_of_x(x);
    c.branch = br;
    c.residual = std::abs(mono_forward(c.theta, x0, Gamma) - R_meas);
    c.sensitivity = mono_sensitivity(c.theta, x0, Gamma);
    if (sigma) {
      // the two branches are monotone in R, so interval endpoints come from
      // re-running the same branch formula at R -+ sigma
      const Branch lo_br = (br == Branch::at_peak) ? Branch::below_peak : br;
      const Branch hi_br = (br == Branch::at_peak) ? Branch::above_peak : br;
      double a = mono_branch_theta(R_meas - *sigma, x0, Gamma, lo_br);
      double b = mono_branch_theta(std::min(R_meas + *sigma, 1.0), x0, Gamma, hi_br);
      if (a > b) std::swap(a, b);
      c.theta_interval = {a, b};
    }
    est.candidates.push_back(c);
  };

  if (off == 0.0) {
    add(x0, Branch::at_peak);
  } else {
    add(x0 - off, Branch::below_peak);
    add(x0 + off, Branch::above_peak);
  }
  std::sort(est.candidates.begin(), est.candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.theta < b.theta; });
  if (est.candidates.size() == 1) est.selected = est.candidates.front().theta;
  return est;
}

void SearchConfig::validate() const {
  if (!(theta_min > 0.0) || !(theta_max > theta_min))
    throw std::domain_error("SearchConfig: need 0 < theta_min < theta_max");
  if (grid_points < 8)
    throw std::domain_error("SearchConfig: grid_points must be >= 8");
  if (!(bisect_rel_tol > 0.0) || !(merge_rel_tol > 0.0))
    throw std::domain_error("SearchConfig: tolerances must be > 0");
  quad.validate();
}

namespace {

struct Node {
  double theta;
  double R;
  bool extremum = false;  // refined interior extremum or grid endpoint
};

// Golden-section extremum refinement in log-theta.
template <typename F>
Node refine_extremum(F&& fwd, double a, double b, bool maximize) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double la = std::log(a), lb = std::log(b);
  double lc = lb - invphi * (lb - la);
  double ld = la + invphi * (lb - la);
  double fc = fwd(std::exp(lc));
  double fd = fwd(std::exp(ld));
  const double sgn = maximize ? 1.0 : -1.0;
  for (int it = 0; it < 200 && (lb - la) > 1e-13; ++it) {
    if (sgn * fc > sgn * fd) {
      lb = ld;
      ld = lc;
      fd = fc;
      lc = lb - invphi * (lb - la);
      fc = fwd(std::exp(lc));
    } else {
      la = lc;
      lc = ld;
      fc = fd;
      ld = la + invphi * (lb - la);
      fd = fwd(std::exp(ld));
    }
  }
  const double t = std::exp(0.5 * (la + lb));
  return {t, fwd(t), true};
}

}  // namespace

TemperatureEstimate invert_pulse(double R_meas, const PulseSpec& pulse,
                                 const ModelParams& params, const SearchConfig& search,
                                 std::optional<double> sigma) {
  search.validate();
  if (!std::isfinite(R_meas) || R_meas < 0.0 || R_meas > 1.0)
    throw std::domain_error("invert_pulse: R_meas must lie in [0, 1]");
  if (sigma && !(*sigma >= 0.0))
    throw std::domain_error("invert_pulse: sigma must be >= 0");

  const auto fwd = [&](double th) {
    return pulse_reflection(pulse, params, th, search.quad).R;
  };

  // forward sweep on a log grid
  const std::size_t n = search.grid_points;
  std::vector<Node> nodes;
  nodes.reserve(n + 8);
  const double lmin = std::log(search.theta_min);
  const double lmax = std::log(search.theta_max);
  for (std::size_t i = 0; i < n; ++i) {
    double th = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
    if (i == 0) th = search.theta_min;
    if (i == n - 1) th = search.theta_max;
    nodes.push_back({th, fwd(th), i == 0 || i == n - 1});
  }

  // refine interior extrema so crossings near a peak or valley are not
  // stepped over, then insert them as segment boundaries
  std::vector<Node> refined;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const double dl = nodes[i].R - nodes[i - 1].R;
    const double dr = nodes[i + 1].R - nodes[i].R;
    if (dl > 0.0 && dr < 0.0)
      refined.push_back(refine_extremum(fwd, nodes[i - 1].theta, nodes[i + 1].theta, true));
    else if (dl < 0.0 && dr > 0.0)
      refined.push_back(refine_extremum(fwd, nodes[i - 1].theta, nodes[i + 1].theta, false));
  }
  for (const Node& r : refined) nodes.push_back(r);
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.theta < b.theta; });

  TemperatureEstimate est;
  double r_lo = nodes.front().R, r_hi = nodes.front().R;
  for (const Node& nd : nodes) {
    r_lo = std::min(r_lo, nd.R);
    r_hi = std::max(r_hi, nd.R);
  }
  est.attainable = {r_lo, r_hi};

  // locate crossings of R_meas on each bracketing segment
  std::vector<double> roots;
  auto bisect = [&](double lo, double hi, double flo) {
    while (hi - lo > search.bisect_rel_tol * lo) {
      const double mid = std::sqrt(lo * hi);
      const double fm = fwd(mid) - R_meas;
      if (fm == 0.0) return mid;
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double f0 = nodes[i].R - R_meas;
    const double f1 = nodes[i + 1].R - R_meas;
    if (f0 == 0.0) roots.push_back(nodes[i].theta);
    if (f0 * f1 < 0.0) roots.push_back(bisect(nodes[i].theta, nodes[i + 1].theta, f0));
  }
  if (nodes.back().R == R_meas) roots.push_back(nodes.back().theta);

  // merge near-duplicates, preferring the smaller residual
  std::sort(roots.begin(), roots.end());
  std::vector<std::pair<double, double>> kept;  // (theta, residual)
  for (const double th : roots) {
    const double res = std::abs(fwd(th) - R_meas);
    if (!kept.empty() &&
        th - kept.back().first <= search.merge_rel_tol * kept.back().first) {
      if (res < kept.back().second) kept.back() = {th, res};
    } else {
      kept.push_back({th, res});
    }
  }

  // branch labels relative to the sweep's global maximum
  double theta_peak = nodes.front().theta;
  double peak_R = nodes.front().R;
  for (const Node& nd : nodes) {
    if (nd.R > peak_R) {
      peak_R = nd.R;
      theta_peak = nd.theta;
    }
  }

  for (const auto& [th, res] : kept) {
    Candidate c;
    c.theta = th;
    c.residual = res;
    if (std::abs(th - theta_peak) <= search.merge_rel_tol * theta_peak)
      c.branch = Branch::at_peak;
    else
      c.branch = (th < theta_peak) ? Branch::below_peak : Branch::above_peak;
    c.sensitivity = sensitivity(th, pulse, params);
    if (sigma) {
      // propagate the measurement interval along this monotone segment
      std::size_t seg_lo = 0, seg_hi = nodes.size() - 1;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i].theta <= th && th <= nodes[i + 1].theta) {
          seg_lo = i;
          seg_hi = i + 1;
          break;
        }
      }
      while (seg_lo > 0 && !nodes[seg_lo].extremum) --seg_lo;
      while (seg_hi + 1 < nodes.size() && !nodes[seg_hi].extremum) ++seg_hi;
      const Node& a = nodes[seg_lo];
      const Node& b = nodes[seg_hi];
      auto solve_on_segment = [&](double target) {
        const double fa = a.R - target;
        const double fb = b.R - target;
        if (fa == 0.0) return a.theta;
        if (fb == 0.0) return b.theta;
        if (fa * fb > 0.0)  // target beyond this segment: clamp to its edge
          return (std::abs(fa) < std::abs(fb)) ? a.theta : b.theta;
        double lo = a.theta, hi = b.theta, flo = fa;
        while (hi - lo > search.bisect_rel_tol * lo) {
          const double mid = std::sqrt(lo * hi);
          const double fm = fwd(mid) - target;
          if (fm == 0.0) return mid;
          if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      };
      double ta = solve_on_segment(std::max(R_meas - *sigma, 0.0));
      double tb = solve_on_segment(std::min(R_meas + *sigma, 1.0));
      if (ta > tb) std::swap(ta, tb);
      c.theta_interval = {ta, tb};
    }
    est.candidates.push_back(c);
  }

  if (est.candidates.size() == 1) est.selected = est.candidates.front().theta;
  return est;
}

TemperatureEstimate disambiguate(std::span<const TemperatureEstimate> estimates,
                                 double merge_rel_tol) {
  if (estimates.size() < 2)
    throw std::invalid_argument("disambiguate: need at least two estimates");
  if (!(merge_rel_tol > 0.0))
    throw std::domain_error("disambiguate: merge_rel_tol must be > 0");

  struct Group {
    Candidate rep;
    double mean;
  };
  std::vector<Group> groups;

  for (const Candidate& c : estimates.front().candidates) {
    double sum = c.theta;
    bool in_all = true;
    for (std::size_t i = 1; i < estimates.size(); ++i) {
      const Candidate* best = nullptr;
      for (const Candidate& d : estimates[i].candidates) {
        const double tol = merge_rel_tol * 0.5 * (c.theta + d.theta);
        if (std::abs(d.theta - c.theta) <= tol &&
            (!best || std::abs(d.theta - c.theta) < std::abs(best->theta - c.theta)))
          best = &d;
      }
      if (!best) {
        in_all = false;
        break;
      }
      sum += best->theta;
    }
    if (in_all)
      groups.push_back({c, sum / static_cast<double>(estimates.size())});
  }

  if (groups.empty())
    throw inconsistent_error(
        "disambiguate: no candidate temperature is consistent with every measurement");
  if (groups.size() > 1) {
    std::ostringstream msg;
    msg << "disambiguate: " << groups.size()
        << " candidates survive all measurements (";
    for (std::size_t i = 0; i < groups.size(); ++i)
      msg << (i ? ", " : "") << "theta = " << groups[i].mean;
    msg << "); measure at a third carrier frequency";
    throw ambiguous_error(msg.str());
  }

  TemperatureEstimate out;
  Candidate rep = groups.front().rep;
  rep.theta = groups.front().mean;
  out.candidates = {rep};
  out.selected = rep.theta;
  return out;
}

double sensitivity(double theta, const PulseSpec& pulse, const ModelParams& params) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::domain_error("sensitivity: theta must be > 0");
  const double h = fd_step(theta);
  QuadratureConfig qc;
  qc.abs_tol = 1e-13;  // keep quadrature noise well under the h-scaled difference
  const double rp = pulse_reflection(pulse, params, theta + h, qc).R;
  const double rm = pulse_reflection(pulse, params, theta - h, qc).R;
  return (rp - rm) / (2.0 * h);
}

}  // namespace wqtherm
