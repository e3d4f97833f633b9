#include "shockstem/shock.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace shockstem {

namespace {

// Hugoniot function H(tau1, s1) = e1 - e0 + (p1 + p0)/2 (tau1 - tau0) and
// its s-derivative T1 (1 + Gamma1 (tau1 - tau0)/(2 tau1)). The thermal part
// of e grows like exp(s/cv), so raw Newton steps overshoot badly for strong
// shocks; steps are capped at two cv units and damped on residual increase.
double hugoniot_entropy(const EosSpec& eos, const ThermoPoint& up, double tau1, double s_seed) {
  const double cv = std::visit([](const auto& e) { return e.cv; }, eos);
  const double step_cap = 2.0 * cv;
  double s1 = s_seed;
  const auto residual = [&](double s) {
    const ThermoPoint t1 = thermo_eval(eos, tau1, s);
    return t1.e - up.e + 0.5 * (t1.p + up.p) * (tau1 - up.tau);
  };
  double h = residual(s1);
  for (int it = 0; it < 50; ++it) {
    const ThermoPoint t1 = thermo_eval(eos, tau1, s1);
    const double dh = t1.T * (1.0 + t1.gamma_g * (tau1 - up.tau) / (2.0 * tau1));
    if (!(std::abs(dh) > 0.0)) throw ConvergenceError("hugoniot: degenerate ds derivative");
    double step = -h / dh;
    if (std::abs(step) > step_cap) step = std::copysign(step_cap, step);
    double damp = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      const double trial = s1 + damp * step;
      const double ht = residual(trial);
      if (std::abs(ht) < std::abs(h)) {
        s1 = trial;
        h = ht;
        accepted = true;
        break;
      }
      damp *= 0.5;
    }
    if (!accepted || std::abs(damp * step) <= 1e-15 * (1.0 + std::abs(s1))) break;
  }
  const ThermoPoint t1 = thermo_eval(eos, tau1, s1);
  const double scale =
      std::abs(t1.e) + std::abs(up.e) + 0.5 * (t1.p + up.p) * std::abs(tau1 - up.tau);
  if (std::abs(h) <= 1e-13 * scale) return s1;
  throw ConvergenceError("hugoniot: entropy iteration did not converge");
}

// Downstream entropy at tau1, with geometric continuation from the acoustic
// limit when the direct solve fails.
double hugoniot_downstream_s(const EosSpec& eos, const ThermoPoint& up, double tau1) {
  try {
    return hugoniot_entropy(eos, up, tau1, up.s);
  } catch (const Error&) {
    double s_seed = up.s;
    const int steps = 64;
    for (int k = 1; k <= steps; ++k) {
      const double t = up.tau + (tau1 - up.tau) * k / static_cast<double>(steps);
      s_seed = hugoniot_entropy(eos, up, t, s_seed);
    }
    return s_seed;
  }
}

struct HugoniotPoint {
  double tau1, s1, p1, j2;
};

HugoniotPoint hugoniot_point(const EosSpec& eos, const ThermoPoint& up, double tau1) {
  HugoniotPoint h;
  h.tau1 = tau1;
  h.s1 = hugoniot_downstream_s(eos, up, tau1);
  const ThermoPoint t1 = thermo_eval(eos, tau1, h.s1);
  h.p1 = t1.p;
  h.j2 = (h.p1 - up.p) / (up.tau - tau1);
  return h;
}

PlanarShock assemble(const EosSpec& eos, const FluidState& upstream, const HugoniotPoint& h) {
  const ThermoPoint up = thermo_eval(eos, upstream.tau, upstream.s);
  const ThermoPoint dn = thermo_eval(eos, h.tau1, h.s1);
  if (!(h.j2 > 0.0)) throw AdmissibilityError("solve_downstream: nonpositive mass flux squared");
  const double j = std::sqrt(h.j2);
  const double m0 = j * up.tau / up.c;
  const double m1 = j * h.tau1 / dn.c;
  if (!(m1 < 1.0 && m1 > 0.0 && m0 > 1.0)) {
    std::ostringstream msg;
    msg << "solve_downstream: Lax inequalities fail (M0=" << m0 << ", M1=" << m1 << ")";
    throw AdmissibilityError(msg.str());
  }
  PlanarShock shock;
  shock.eos = eos;
  shock.upstream = {upstream.tau, upstream.u, -j * upstream.tau, upstream.s};
  shock.downstream = {h.tau1, upstream.u, -j * h.tau1, h.s1};
  shock.mass_flux = j;
  shock.tangential_velocity = upstream.u;
  shock.mach_downstream = m1;
  shock.compression_ratio = upstream.tau / h.tau1 - 1.0;
  return shock;
}

// Brackets and bisects a monotone-increasing-in-strength quantity along the
// compressive Hugoniot branch: value(tau1) rises as tau1 falls from tau0.
double bisect_strength(const EosSpec& eos, const ThermoPoint& up,
                       const std::function<double(const HugoniotPoint&)>& value,
                       double target, const char* what) {
  // adaptive march toward the maximum compression: the strength blows up at
  // a finite tau on some Hugoniots, so a failed or non-monotone step shrinks
  // the factor instead of giving up
  double shrink = 0.985;
  double tau_hi = up.tau;  // value -> acoustic limit here
  double tau_lo = up.tau;
  double prev_value = -std::numeric_limits<double>::infinity();
  bool bracketed = false;
  for (int k = 0; k < 5000 && 1.0 - shrink > 1e-12; ++k) {
    const double tau_try = tau_hi * shrink;
    bool step_ok = false;
    HugoniotPoint h;
    try {
      h = hugoniot_point(eos, up, tau_try);
      step_ok = value(h) >= prev_value;  // still on the monotone branch
    } catch (const Error&) {
    }
    if (!step_ok) {
      shrink = std::sqrt(shrink);
      continue;
    }
    prev_value = value(h);
    tau_lo = tau_try;
    if (prev_value >= target) {
      bracketed = true;
      break;
    }
    tau_hi = tau_try;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "solve_downstream: " << what << " target " << target
        << " is unreachable on this Hugoniot (max " << prev_value << ")";
    throw ConvergenceError(msg.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (tau_lo + tau_hi);
    if (mid == tau_lo || mid == tau_hi) break;  // interval collapsed to ulp
    const double val = value(hugoniot_point(eos, up, mid));
    if (val >= target)
      tau_lo = mid;
    else
      tau_hi = mid;
  }
  return 0.5 * (tau_lo + tau_hi);
}

}  // namespace

FluxVector rh_residual(const EosSpec& eos, const FluidState& a, const FluidState& b,
                       double angle) {
  return std::sin(angle) * (flux(eos, 1, b) - flux(eos, 1, a)) +
         std::cos(angle) * (flux(eos, 2, b) - flux(eos, 2, a));
}

double rh_residual_scaled(const EosSpec& eos, const FluidState& a, const FluidState& b,
                          double angle) {
  const Vec4 r = rh_residual(eos, a, b, angle);
  double scale = 0.0;
  for (int axis = 1; axis <= 2; ++axis) {
    scale = std::max(scale, flux(eos, axis, a).cwiseAbs().maxCoeff());
    scale = std::max(scale, flux(eos, axis, b).cwiseAbs().maxCoeff());
  }
  return r.cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

PlanarShock solve_downstream(const EosSpec& eos, const FluidState& upstream,
                             const ShockStrength& strength) {
  validate(eos);
  if (!(upstream.v < 0.0))
    throw DomainError("solve_downstream: upstream normal velocity must point into the front (v0 < 0)");
  if (!(upstream.u <= 0.0))
    throw DomainError("solve_downstream: tangential velocity convention requires ubar <= 0");
  const ThermoPoint up = thermo_eval(eos, upstream.tau, upstream.s);

  double tau1 = 0.0;
  switch (strength.kind) {
    case ShockStrength::Kind::DownstreamTau: {
      tau1 = strength.value;
      if (!(tau1 > 0.0) || !(tau1 < upstream.tau))
        throw AdmissibilityError("solve_downstream: need 0 < tau1 < tau0 (compressive branch)");
      break;
    }
    case ShockStrength::Kind::PressureRatio: {
      if (strength.value == 1.0)
        throw AdmissibilityError("solve_downstream: pressure ratio 1 is a zero-strength shock");
      if (strength.value < 1.0)
        throw AdmissibilityError("solve_downstream: pressure ratio < 1 requests an expansion shock");
      const double p_target = strength.value * up.p;
      tau1 = bisect_strength(eos, up, [](const HugoniotPoint& h) { return h.p1; }, p_target,
                             "pressure");
      break;
    }
    case ShockStrength::Kind::MassFlux: {
      const double j_acoustic = up.c / up.tau;
      if (!(strength.value > j_acoustic))
        throw AdmissibilityError("solve_downstream: mass flux at or below the acoustic value");
      tau1 = bisect_strength(eos, up, [](const HugoniotPoint& h) { return h.j2; },
                             strength.value * strength.value, "mass flux");
      break;
    }
  }

  PlanarShock shock = assemble(eos, upstream, hugoniot_point(eos, up, tau1));
  validate_shock(shock);
  return shock;
}

PlanarShock galilean_shift(const PlanarShock& shock, double new_tangential_velocity) {
  if (!(new_tangential_velocity <= 0.0))
    throw DomainError("galilean_shift: the convention requires ubar <= 0");
  PlanarShock out = shock;
  out.upstream.u = new_tangential_velocity;
  out.downstream.u = new_tangential_velocity;
  out.tangential_velocity = new_tangential_velocity;
  return out;
}

void validate_shock(const PlanarShock& shock, double tolerance) {
  std::vector<std::string> failures;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const ThermoPoint up = thermo_eval(shock.eos, shock.upstream.tau, shock.upstream.s);
  const ThermoPoint dn = thermo_eval(shock.eos, shock.downstream.tau, shock.downstream.s);
  const double j = shock.mass_flux;

  check(j > 0.0, "mass flux positive");
  check(std::abs(shock.upstream.v + j * shock.upstream.tau) <=
            tolerance * std::abs(shock.upstream.v),
        "j = -rho0 v0");
  check(std::abs(shock.downstream.v + j * shock.downstream.tau) <=
            tolerance * std::abs(shock.downstream.v),
        "j = -rho1 v1");
  check(shock.upstream.u == shock.downstream.u, "shared tangential velocity");
  check(shock.tangential_velocity <= 0.0, "ubar <= 0");

  const double mom = j * j * (shock.downstream.tau - shock.upstream.tau) - (up.p - dn.p);
  check(std::abs(mom) <= tolerance * std::max(up.p, dn.p), "momentum jump");
  const double hug = dn.e - up.e + 0.5 * (dn.p + up.p) * (shock.downstream.tau - shock.upstream.tau);
  check(std::abs(hug) <= tolerance * std::max(std::abs(dn.e), std::abs(up.e)), "Hugoniot relation");

  const double m0 = -shock.upstream.v / up.c;
  const double m1 = -shock.downstream.v / dn.c;
  check(m1 > 0.0 && m1 < 1.0, "0 < M1 < 1");
  check(m0 > 1.0, "M0 > 1");
  check(std::abs(m1 - shock.mach_downstream) <= 1e-12 * m1, "stored M1");
  check(shock.compression_ratio > 0.0, "compressive (nu > 0)");
  check(std::abs(shock.compression_ratio - (shock.upstream.tau / shock.downstream.tau - 1.0)) <=
            1e-12 * (1.0 + shock.compression_ratio),
        "stored nu");
  check(rh_residual_scaled(shock.eos, shock.upstream, shock.downstream, 0.0) <= tolerance,
        "RH residual at angle 0");

  if (!failures.empty()) {
    std::string msg = "planar shock invariants violated:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw ValidationError(msg, failures);
  }
}

ShockNumbers reduce(const PlanarShock& shock) {
  const ThermoPoint up = thermo_eval(shock.eos, shock.upstream.tau, shock.upstream.s);
  const ThermoPoint dn = thermo_eval(shock.eos, shock.downstream.tau, shock.downstream.s);
  ShockNumbers n;
  n.tau0 = shock.upstream.tau;
  n.tau1 = shock.downstream.tau;
  n.ubar = shock.tangential_velocity;
  n.v0 = shock.upstream.v;
  n.v1 = shock.downstream.v;
  n.p0 = up.p;
  n.p1 = dn.p;
  n.e0 = up.e;
  n.e1 = dn.e;
  n.c1 = dn.c;
  n.c1sq = dn.c2;
  n.gamma1 = dn.gamma_g;
  n.T1 = dn.T;
  n.j = shock.mass_flux;
  return n;
}

}  // namespace shockstem
