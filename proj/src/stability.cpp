#include "shockstem/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shockstem {

namespace {

void check_triple(double m1, double gamma1, double nu) {
  if (!(m1 > 0.0 && m1 < 1.0)) throw DomainError("stability: M1 must lie in (0, 1)");
  if (!(gamma1 > 0.0)) throw DomainError("stability: Gamma1 must be positive");
  if (!(nu > 0.0)) throw DomainError("stability: nu must be positive");
}

// real roots of a x^2 + b x + c = 0 by the two-branch split; a == 0 falls
// back to the linear equation
std::vector<double> quadratic_roots(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b == 0.0) return roots;
    roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(0.0);
    roots.push_back(-b / a);
  }
  return roots;
}

}  // namespace

const char* to_string(StabilityClass::Kind kind) {
  switch (kind) {
    case StabilityClass::Kind::Uniform: return "uniform";
    case StabilityClass::Kind::Weak: return "weak";
    case StabilityClass::Kind::Violent: return "violent";
    case StabilityClass::Kind::LimitGlancing: return "limit_glancing";
    case StabilityClass::Kind::LimitOneDimensional: return "limit_one_dimensional";
  }
  return "?";
}

StabilityClass classify(double m1, double gamma1, double nu) {
  check_triple(m1, gamma1, nu);
  const double x = m1 * m1 * nu;
  const double lo = 1.0 / (1.0 + gamma1);
  const double hi = (1.0 + m1) / gamma1;
  StabilityClass result;
  result.margin_lower = x - lo;
  result.margin_upper = hi - x;
  const double band = 1e-12;
  if (std::abs(x - lo) <= band * lo)
    result.kind = StabilityClass::Kind::LimitGlancing;
  else if (std::abs(x - hi) <= band * hi)
    result.kind = StabilityClass::Kind::LimitOneDimensional;
  else if (x < lo)
    result.kind = StabilityClass::Kind::Uniform;
  else if (x > hi)
    result.kind = StabilityClass::Kind::Violent;
  else
    result.kind = StabilityClass::Kind::Weak;
  return result;
}

double solve_v(double m1, double gamma1, double nu, double c1) {
  const StabilityClass cls = classify(m1, gamma1, nu);
  if (!cls.weak()) {
    std::ostringstream msg;
    msg << "solve_v: V is defined in the weak regime only (class " << to_string(cls.kind) << ")";
    throw DomainError(msg.str());
  }
  const double v1 = -m1 * c1;
  const double v1sq = v1 * v1;
  const double k = 2.0 - m1 * m1 * gamma1 * nu;
  const double km1 = k - 1.0;
  const double a = km1 * km1 - m1 * m1;
  const double b = (km1 * km1 + 1.0 - 2.0 * m1 * m1 - 2.0 * nu * (km1 + m1 * m1)) * v1sq;
  const double c = v1sq * v1sq * (1.0 - m1 * m1) * (1.0 + nu) * (1.0 + nu);

  std::vector<double> candidates = quadratic_roots(a, b, c);
  if (candidates.empty())
    throw DegenerateQuarticError("solve_v: the quartic in V^2 degenerated to no equation");

  const double glancing_sq = c1 * c1 - v1sq;
  const double tau_ratio = 1.0 + nu;
  std::vector<double> admissible;
  for (double x : candidates) {
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    // (i) is strict, but the admissible root touches this boundary at the
    // glancing limit; a relative floor keeps it selectable there
    const bool cond1 = x > glancing_sq * (1.0 - 1e-9);
    const bool cond2 = (1.0 + m1 * m1 - m1 * m1 * gamma1 * nu) * x <
                       v1sq * (1.0 - m1 * m1) * tau_ratio;
    // (iii): both sides cancel toward zero at the glancing boundary, so the
    // residual is measured against the unsplit term magnitudes
    const double lhs_base = (km1 + m1 * m1) * x - v1sq * (1.0 - m1 * m1) * tau_ratio;
    const double lhs = lhs_base * lhs_base;
    const double rhs = k * k * x * (m1 * m1 * x - v1sq * (1.0 - m1 * m1));
    const double scale = k * k * x * (m1 * m1 * x + v1sq * (1.0 - m1 * m1)) +
                         std::pow(std::abs(km1 + m1 * m1) * x + v1sq * (1.0 - m1 * m1) * tau_ratio, 2);
    const bool cond3 = std::abs(lhs - rhs) <= 1e-12 * scale;
    if (cond1 && cond2 && cond3) admissible.push_back(x);
  }
  if (admissible.empty())
    throw NoAdmissibleRootError("solve_v: no quartic root satisfies the characterization (i)-(iii)");
  if (admissible.size() > 1) {
    // collapse duplicates produced by a degenerate leading coefficient
    std::sort(admissible.begin(), admissible.end());
    if (admissible.back() - admissible.front() >
        1e-9 * std::max(admissible.back(), glancing_sq))
      throw NoAdmissibleRootError("solve_v: both quartic roots pass the characterization");
  }
  return std::sqrt(admissible.front());
}

CStarResult c_star(double m1, double gamma1, double nu, double c1) {
  const StabilityClass cls = classify(m1, gamma1, nu);
  if (!cls.weak()) {
    std::ostringstream msg;
    msg << "c_star: defined in the weak regime only (class " << to_string(cls.kind) << ")";
    throw DomainError(msg.str());
  }
  // Phi^2 + M1 Gamma1 Phi - 1 - Gamma1 + (1 - M1^2)/(nu M1^2) = 0
  const double b = m1 * gamma1;
  const double c = -1.0 - gamma1 + (1.0 - m1 * m1) / (nu * m1 * m1);
  CStarResult out;
  bool found = false;
  for (double r : quadratic_roots(1.0, b, c)) {
    if (r > m1 && r < 1.0) {
      out.phi = r;
      found = true;
    }
  }
  if (!found)
    throw NoRootInIntervalError("c_star: the Phi quadratic has no root in (M1, 1)");
  out.beta = (2.0 * m1 - (1.0 + m1 * m1) * out.phi) / (1.0 + m1 * m1 - 2.0 * m1 * out.phi);
  out.c_star = c1 * (1.0 - m1 * out.beta) / std::sqrt(1.0 - out.beta * out.beta);
  return out;
}

double q_polynomial(double m1, double gamma1, double nu, double y) {
  return y * y + m1 * m1 * gamma1 * y - m1 * m1 * (1.0 + gamma1) + (1.0 - m1 * m1) / nu;
}

WeakStabilityWorksheet make_worksheet(double m1, double gamma1, double nu, double c1) {
  WeakStabilityWorksheet sheet;
  sheet.m1 = m1;
  sheet.gamma1 = gamma1;
  sheet.nu = nu;
  sheet.c1 = c1;
  sheet.v1 = -m1 * c1;
  sheet.k = 2.0 - m1 * m1 * gamma1 * nu;
  const CStarResult cs = c_star(m1, gamma1, nu, c1);
  sheet.phi = cs.phi;
  sheet.y = m1 * cs.phi;
  sheet.beta = cs.beta;
  sheet.upsilon = -(1.0 - m1 * cs.beta) / std::sqrt(1.0 - cs.beta * cs.beta);
  sheet.c_star = cs.c_star;
  sheet.v_crit = solve_v(m1, gamma1, nu, c1);
  return sheet;
}

EquivalenceReport critical_velocity_equivalence(double m1, double gamma1, double nu, double c1) {
  EquivalenceReport report;
  report.v_crit = solve_v(m1, gamma1, nu, c1);
  report.c_star = c_star(m1, gamma1, nu, c1).c_star;
  report.relative_gap = std::abs(report.c_star - report.v_crit) / report.v_crit;
  report.pass = report.relative_gap < 1e-10;
  return report;
}

double alpha0_closed(double m1, double nu, double beta) {
  const double root = std::sqrt(1.0 - beta * beta);
  return -(m1 * nu * nu / (1.0 + nu)) * (1.0 - m1 * beta) * root /
         (1.0 + m1 * m1 - 2.0 * m1 * beta);
}

double alpha_minus_closed(double m1, double nu, double beta) {
  const double root = std::sqrt(1.0 - beta * beta);
  return -(m1 * nu / (1.0 + nu)) *
         (1.0 / root + m1 * m1 * nu * root / (1.0 + m1 * m1 - 2.0 * m1 * beta));
}

double omega0_factor(double m1, double beta) {
  return (1.0 + m1 * m1 - 2.0 * m1 * beta) / ((m1 - beta) * (1.0 - m1 * beta));
}

double omega1_factor(double m1, double beta) {
  const double m1sq = m1 * m1;
  const double num = m1 * (3.0 + m1sq) * beta * beta - 2.0 * (1.0 + 3.0 * m1sq) * beta +
                     m1 * (3.0 + m1sq);
  return num / ((m1 - beta) * (1.0 - m1 * beta) * (1.0 + m1sq - 2.0 * m1 * beta));
}

double d2_delta_deps_du_closed(double m1, double nu, double beta, double c1) {
  const double v1 = -m1 * c1;
  return nu * v1 * std::sqrt(1.0 - beta * beta) / (1.0 + nu) *
         (omega0_factor(m1, beta) + nu * m1 * omega1_factor(m1, beta));
}

ScanResult scan_real_roots(const ShockNumbers& nums, double eta, double z_lo, double z_hi,
                           int grid_count) {
  if (eta == 0.0) throw DomainError("scan_real_roots: eta must be nonzero");
  if (!(z_hi > z_lo) || grid_count < 2)
    throw DomainError("scan_real_roots: need z_lo < z_hi and at least two grid points");

  const double a_sq = nums.c1sq - nums.v1 * nums.v1;  // glancing band half width squared
  const auto hyperbolic = [&](double z) {
    const double w = z + nums.ubar * eta;
    return w * w - a_sq * eta * eta > 1e-9 * a_sq * eta * eta;
  };
  const auto re_delta = [&](double z) {
    return lopatinskii(nums, FrequencyPoint{Complex(z, 0.0), eta}).delta.real();
  };

  ScanResult result;
  result.min_normalized = std::numeric_limits<double>::infinity();
  double prev_z = 0.0, prev_re = 0.0;
  bool have_prev = false;
  for (int i = 0; i < grid_count; ++i) {
    const double z = z_lo + (z_hi - z_lo) * i / (grid_count - 1.0);
    double re = 0.0;
    bool usable = hyperbolic(z);
    try {
      const LopatinskiiValue value = lopatinskii(nums, FrequencyPoint{Complex(z, 0.0), eta});
      result.min_normalized = std::min(result.min_normalized, std::abs(value.normalized()));
      re = value.delta.real();
    } catch (const Error&) {
      usable = false;  // glancing or coincidence grid point, skip the cell
    }
    if (usable && have_prev && prev_re * re <= 0.0 && (prev_re != 0.0 || re != 0.0)) {
      double lo = prev_z, hi = z, flo = prev_re;
      while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = re_delta(mid);
        if (flo * fmid <= 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fmid;
        }
      }
      const double root = 0.5 * (lo + hi);
      const double normalized =
          std::abs(lopatinskii(nums, FrequencyPoint{Complex(root, 0.0), eta}).normalized());
      if (normalized < 1e-6) {
        if (result.roots.empty() ||
            std::abs(root - result.roots.back()) > 1e-8 * std::max(1.0, std::abs(root)))
          result.roots.push_back(root);
      }
    }
    prev_z = z;
    prev_re = re;
    have_prev = usable;
  }
  std::sort(result.roots.begin(), result.roots.end());
  return result;
}

ScanResult scan_real_roots(const PlanarShock& shock, double eta, double z_lo, double z_hi,
                           int grid_count) {
  return scan_real_roots(reduce(shock), eta, z_lo, z_hi, grid_count);
}

ShockNumbers synthetic_numbers(double m1, double gamma1, double nu, double c1, double ubar,
                               double p0, double e0) {
  check_triple(m1, gamma1, nu);
  if (!(c1 > 0.0)) throw DomainError("synthetic_numbers: c1 must be positive");
  ShockNumbers n;
  n.tau1 = 1.0;
  n.tau0 = 1.0 + nu;
  n.ubar = ubar;
  n.v1 = -m1 * c1;
  n.j = m1 * c1 / n.tau1;
  n.v0 = -n.j * n.tau0;
  n.p0 = p0;
  n.p1 = p0 + n.j * n.j * (n.tau0 - n.tau1);
  n.e0 = e0;
  n.e1 = e0 + 0.5 * (n.p1 + n.p0) * (n.tau0 - n.tau1);
  n.c1 = c1;
  n.c1sq = c1 * c1;
  n.gamma1 = gamma1;
  n.T1 = 1.0;
  return n;
}

}  // namespace shockstem
