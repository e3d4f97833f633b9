// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "shockstem/json_io.hpp"
#include "shockstem/machstem.hpp"
#include "shockstem/weak_regime.hpp"

#include "fixtures.hpp"

using namespace shockstem;
using namespace shockstem::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double runtime_cap_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= runtime_cap_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("runtime cap exceeded");
  }
  std::printf("[%s] criterion %2d: %-38s (%6.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

Mat4 fd_jacobian(const EosSpec& eos, int axis, const FluidState& state) {
  Mat4 jac;
  const Vec4 x = state.as_vector();
  for (int j = 0; j < 4; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    Vec4 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    jac.col(j) = (flux(eos, axis, FluidState::from_vector(xp)) -
                  flux(eos, axis, FluidState::from_vector(xm))) /
                 (2.0 * h);
  }
  return jac;
}

// ten weak-regime shocks of the stiff Gruneisen material
std::vector<PlanarShock> weak_family() {
  std::vector<PlanarShock> shocks;
  for (int i = 0; i < 10; ++i) shocks.push_back(weak_shock(0.780 - 0.004 * i));
  return shocks;
}

}  // namespace

int main() {
  criterion(1, "flux Jacobians and wave speeds", 1.0, [](std::string& detail) {
    Rng rng(11);
    double worst = 0.0;
    for (const EosSpec& eos : {ideal_air(), gruneisen_stiff()}) {
      for (int i = 0; i < 100; ++i) {
        const FluidState state{rng.uniform(0.6, 1.6), rng.uniform(-2.0, 2.0),
                               rng.uniform(-2.0, 2.0), rng.uniform(-0.4, 0.4)};
        for (int axis : {1, 2}) {
          const Mat4 jac = flux_jacobian(eos, axis, state);
          worst = std::max(worst, (jac - fd_jacobian(eos, axis, state)).cwiseAbs().maxCoeff() /
                                      jac.cwiseAbs().maxCoeff());
        }
        const Mat4 symbol = p_matrix(eos, state) * flux_jacobian(eos, 2, state);
        Eigen::EigenSolver<Mat4> solver(symbol);
        std::array<double, 4> lam;
        for (int k = 0; k < 4; ++k) lam[k] = solver.eigenvalues()[k].real();
        std::sort(lam.begin(), lam.end());
        const ThermoPoint t = thermo_eval(eos, state.tau, state.s);
        const std::array<double, 4> expect = {state.v - t.c, state.v, state.v, state.v + t.c};
        for (int k = 0; k < 4; ++k) {
          if (std::abs(lam[k] - expect[k]) > 1e-10 * (std::abs(state.v) + t.c)) return false;
          if (std::abs(solver.eigenvalues()[k].imag()) > 1e-10 * t.c) return false;
        }
      }
    }
    detail = "max FD gap " + std::to_string(worst);
    return worst < 1e-6;
  });

  criterion(2, "RH/Lax and the Mach 2 oracle", 1.0, [](std::string& detail) {
    for (const PlanarShock& s : {mach2_shock(), weak_shock(), weak_shock_critical()}) {
      if (rh_residual_scaled(s.eos, s.upstream, s.downstream, 0.0) >= 1e-12) return false;
      validate_shock(s);
    }
    const PlanarShock s = mach2_shock();
    const ThermoPoint up = thermo_eval(s.eos, s.upstream.tau, s.upstream.s);
    const ThermoPoint dn = thermo_eval(s.eos, s.downstream.tau, s.downstream.s);
    const double p_gap = std::abs(dn.p / up.p - 4.5);
    const double rho_gap = std::abs(s.upstream.tau / s.downstream.tau - 8.0 / 3.0);
    const double m_gap = std::abs(s.mach_downstream - 1.0 / std::sqrt(3.0));
    detail = "p " + std::to_string(p_gap) + ", rho " + std::to_string(rho_gap);
    return p_gap < 1e-10 * 4.5 && rho_gap < 1e-10 * (8.0 / 3.0) && m_gap < 1e-10;
  });

  criterion(3, "trichotomy and the ideal-gas sweep", 1.0, [](std::string& detail) {
    if (classify(0.5, 0.4, 1.0).kind != StabilityClass::Kind::Uniform) return false;
    if (classify(0.8, 5.0, 0.5).kind != StabilityClass::Kind::Weak) return false;
    if (classify(0.8, 10.0, 0.5).kind != StabilityClass::Kind::Violent) return false;
    const EosSpec eos = ideal_air();
    const FluidState up{1.0, 0.0, -1.0, 0.0};
    double x = 0.0;
    for (double r = 1.1; r < 1.01e4; r *= 1.6) {
      const PlanarShock s = solve_downstream(eos, up, ShockStrength::pressure_ratio(r));
      const ThermoPoint dn = thermo_eval(eos, s.downstream.tau, s.downstream.s);
      const double next = s.mach_downstream * s.mach_downstream * s.compression_ratio;
      if (classify(s.mach_downstream, dn.gamma_g, s.compression_ratio).kind !=
          StabilityClass::Kind::Uniform)
        return false;
      if (next <= x) return false;  // monotone approach from below
      x = next;
    }
    const PlanarShock s = solve_downstream(eos, up, ShockStrength::pressure_ratio(1e4));
    x = s.mach_downstream * s.mach_downstream * s.compression_ratio;
    detail = "1/(1+G) - M1^2 nu = " + std::to_string(1.0 / 1.4 - x);
    return x < 1.0 / 1.4 && 1.0 / 1.4 - x < 1e-3;
  });

  criterion(4, "dual-route critical velocity (1000 triples)", 5.0, [](std::string& detail) {
    Rng rng(20240817);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double m1 = rng.uniform(0.15, 0.92);
      const double g1 = rng.uniform(0.5, 15.0);
      const double lo = 1.0 / (1.0 + g1), hi = (1.0 + m1) / g1;
      const double x = lo + (hi - lo) * rng.uniform(0.02, 0.98);
      worst = std::max(worst, critical_velocity_equivalence(m1, g1, x / (m1 * m1), 1.0).relative_gap);
    }
    detail = "max gap " + std::to_string(worst);
    return worst < 1e-9;
  });

  criterion(5, "Lopatinskii root oracle on 10 shocks", 30.0, [](std::string& detail) {
    for (const PlanarShock& shock : weak_family()) {
      const double v = critical_velocity(shock);
      const ScanResult scan = scan_real_roots(shock, 1.0, -2.0 * v, 2.0 * v, 1501);
      if (scan.roots.size() != 2) return false;
      if (std::abs(scan.roots[0] + v) > 1e-8 * v) return false;
      if (std::abs(scan.roots[1] - v) > 1e-8 * v) return false;
      const PlanarShock critical = galilean_shift(shock, -v);
      const ScanResult at_zero = scan_real_roots(critical, 1.0, -0.8 * v, 0.8 * v, 1001);
      if (at_zero.roots.size() != 1 || std::abs(at_zero.roots[0]) > 1e-8) return false;
    }
    for (double r : {3.0, 4.5, 8.0}) {
      const PlanarShock uniform = solve_downstream(ideal_air(), FluidState{1.0, 0.0, -1.0, 0.0},
                                                   ShockStrength::pressure_ratio(r));
      const ShockNumbers n = reduce(uniform);
      const ScanResult scan = scan_real_roots(n, 1.0, -3.0 * n.c1, 3.0 * n.c1, 1201);
      if (!scan.roots.empty()) return false;
      if (scan.min_normalized <= 1e-3) return false;
    }
    detail = "10 weak + 3 uniform shocks";
    return true;
  });

  criterion(6, "Galilean shift of the zero set", 10.0, [](std::string& detail) {
    int checked = 0;
    for (int i = 0; i < 5; ++i) {
      const PlanarShock base = weak_shock(0.778 - 0.01 * i);
      const double v = critical_velocity(base);
      const ScanResult roots0 =
          scan_real_roots(reduce(base), 1.0, -2.0 * v, 2.0 * v, 1501);
      if (roots0.roots.size() != 2) return false;
      for (double ubar : {-0.3 * v, -v, -1.4 * v}) {
        const ShockNumbers shifted = reduce(galilean_shift(base, ubar));
        const ScanResult roots =
            scan_real_roots(shifted, 1.0, -2.0 * v - ubar, 2.0 * v - ubar, 1501);
        if (roots.roots.size() != 2) return false;
        for (int k = 0; k < 2; ++k)
          if (std::abs(roots.roots[k] + ubar - roots0.roots[k]) > 1e-9 * (1.0 + v)) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " shift checks";
    return true;
  });

  criterion(7, "degree-3 homogeneity of Delta", 5.0, [](std::string& detail) {
    const ShockNumbers n = reduce(weak_shock_critical());
    const double a = std::sqrt(n.c1sq - n.v1 * n.v1);
    int points = 0;
    for (double w = 1.1 * a; w < 3.0 * a; w += 0.17 * a) {
      for (double sign : {-1.0, 1.0}) {
        const double z = sign * w - n.ubar;
        const Complex base = lopatinskii(n, FrequencyPoint{Complex(z, 0.0), 1.0}).delta;
        for (double s : {2.0, 10.0}) {
          const Complex scaled =
              lopatinskii(n, FrequencyPoint{Complex(s * z, 0.0), s}).delta;
          if (std::abs(scaled - s * s * s * base) > 1e-9 * std::abs(s * s * s * base))
            return false;
        }
        ++points;
      }
    }
    detail = std::to_string(points) + " hyperbolic grid points";
    return points > 10;
  });

  criterion(8, "closed-form linearized RH solution", 1.0, [](std::string& detail) {
    const ShockNumbers n = reduce(weak_shock_critical());
    const LinearizedRhSolution sol = solve_linearized_rh(n);
    if (sol.linear_rh_residual >= 1e-12) return false;
    const double a0 = alpha0_closed(n.m1(), n.nu(), sol.cos_psi0);
    const double am = alpha_minus_closed(n.m1(), n.nu(), sol.cos_psi0);
    if (std::abs(sol.alpha0 - a0) > 1e-12 * std::abs(a0)) return false;
    if (std::abs(sol.alpha_minus - am) > 1e-12 * std::abs(am)) return false;
    const Vec4 rebuilt =
        sol.alpha0 * Vec4(0.0, n.ubar, n.v1, 0.0) +
        sol.mu0 * Vec4(n.gamma1 * n.T1 * n.tau1, 0.0, 0.0, n.c1sq) +
        sol.alpha_minus * Vec4(n.tau1, n.c1 * sol.sin_psi0, -n.c1 * sol.cos_psi0, 0.0);
    const double rebuild_gap =
        (rebuilt - sol.u_dot).cwiseAbs().maxCoeff() / sol.u_dot.cwiseAbs().maxCoeff();
    detail = "decomposition gap " + std::to_string(rebuild_gap);
    return rebuild_gap < 1e-12;
  });

  criterion(9, "Mach stem family continuation", 60.0, [](std::string& detail) {
    const PlanarShock shock = weak_shock_critical();
    const MachStemProblem problem(shock.eos, shock);
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(1e-4 * std::pow(100.0, i / 9.0));
    const FamilyResult family = problem.continue_family(grid);
    if (family.failed_index) {
      detail = family.failure;
      return false;
    }
    std::vector<double> log_eps, log_gap, eps_small, phi_small, psi_small;
    for (const MachStemPattern& p : family.patterns) {
      if (p.theta != M_PI - p.eps) return false;
      const PatternDiagnostics& d = p.diag;
      if (std::max(std::max(d.rh_s1, d.rh_s2), std::max(d.rh_s3, d.rh_cd)) >= 1e-10)
        return false;
      if (d.pressure_gap >= 1e-12) return false;
      if (std::abs(d.delta_scaled) >= 1e-12) return false;
      if (!d.pressure_ordering) return false;
      if (!(d.causality_cd > 0.0 && d.causality_cd_other > 0.0 && d.causality_s3 > 0.0))
        return false;
      if (!(d.lax_s1_upstream > 0.0 && d.lax_s1_downstream > 0.0)) return false;
      if (!(d.lax_s2_upstream > 0.0 && d.lax_s2_downstream > 0.0)) return false;
      if (!(d.lax_s3_upstream > 0.0 && d.lax_s3_downstream > 0.0)) return false;
      double gap = 0.0;
      for (const FluidState* s : {&p.u1, &p.u2, &p.u3})
        gap = std::max(gap, (s->as_vector() - shock.downstream.as_vector())
                                .cwiseAbs()
                                .maxCoeff());
      log_eps.push_back(std::log(p.eps));
      log_gap.push_back(std::log(gap));
      if (eps_small.size() < 4) {
        eps_small.push_back(p.eps);
        phi_small.push_back(p.phi);
        psi_small.push_back(p.psi);
      }
    }
    const double slope = fitted_slope(log_eps, log_gap);
    if (std::abs(slope - 1.0) > 0.1) {
      detail = "slope " + std::to_string(slope);
      return false;
    }
    const double phi_limit = extrapolate_to_zero(eps_small, phi_small);
    const double psi_limit = extrapolate_to_zero(eps_small, psi_small);
    const double phi_expected =
        wrap_two_pi(std::atan2(shock.downstream.v, shock.tangential_velocity));
    detail = "slope " + std::to_string(slope);
    return std::abs(phi_limit - phi_expected) < 1e-6 &&
           std::abs(psi_limit - problem.psi0()) < 1e-6;
  });

  criterion(10, "necessity signatures off the critical velocity", 30.0, [](std::string& detail) {
    const PlanarShock base = weak_shock();
    const double v = critical_velocity(base);
    const PlanarShock critical = galilean_shift(base, -v);
    const PlanarShock off = galilean_shift(base, -1.01 * v);
    const MachStemProblem at(critical.eos, critical);
    const MachStemProblem problem(off.eos, off);
    const double h = 1e-5;
    const auto d_eps = [&](const MachStemProblem& pr, const FluidState& u) {
      return (pr.velocity_mismatch(h, u) - pr.velocity_mismatch(-h, u)) / (2.0 * h);
    };
    const double good = d_eps(at, critical.upstream);
    const double bad = d_eps(problem, off.upstream);
    if (!(std::abs(bad) > 10.0 * std::abs(good))) return false;
    // the u-iteration walks back to -V + O(eps)
    const double eps = 1e-4;
    const MachStemPattern p = problem.solve_pattern_unvalidated(eps, off.tangential_velocity);
    if (!(std::abs(p.u0.u + v) < 0.5 * std::abs(off.tangential_velocity + v))) return false;
    // and negative eps breaks the S3 Lax inequalities
    const MachStemPattern neg = at.solve_pattern_unvalidated(-1e-3, critical.tangential_velocity);
    detail = "compat " + std::to_string(good) + " vs " + std::to_string(bad);
    return neg.diag.lax_s3_upstream < 0.0 && neg.diag.lax_s3_downstream < 0.0;
  });

  criterion(11, "asymptotic coefficients", 30.0, [](std::string& detail) {
    const PlanarShock shock = weak_shock_critical();
    const MachStemProblem problem(shock.eos, shock);
    const AsymptoticReport r = problem.asymptotic_checks();
    detail = "lambda gap " + std::to_string(r.lambda_over_eps_gap) + ", d2 gap " +
             std::to_string(r.d2_delta_gap);
    return r.lambda_over_eps_gap < 1e-6 && r.d2_delta_gap < 1e-4 && r.psi_prime0_gap < 1e-4 &&
           r.lax_derivative_gap < 1e-4 && r.omega0_factor > 0.0 && r.omega1_factor > 0.0;
  });

  criterion(12, "glancing limit of the critical velocity", 1.0, [](std::string& detail) {
    const double m1 = 0.8, g1 = 5.0, c1 = 1.0;
    const double glancing = std::sqrt(c1 * c1 * (1.0 - m1 * m1));
    const double margin = 1e-8;
    const double nu = (1.0 + margin) / ((1.0 + g1) * m1 * m1);
    const double v = solve_v(m1, g1, nu, c1);
    detail = "gap " + std::to_string(std::abs(v - glancing));
    return std::abs(v - glancing) < 1e-6;
  });

  if (failures == 0)
    std::printf("all 12 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
