#ifndef SHOCKSTEM_SHOCK_HPP
#define SHOCKSTEM_SHOCK_HPP

#include "shockstem/euler.hpp"

namespace shockstem {

/// A steady planar shock along {x2 = 0}: upstream in x2 > 0, downstream in
/// x2 < 0, flow crossing downward (v < 0 on both sides).
struct PlanarShock {
  EosSpec eos;
  FluidState upstream;    // U0
  FluidState downstream;  // U1
  double mass_flux = 0.0;            // j = -rho0 v0 = -rho1 v1 > 0
  double tangential_velocity = 0.0;  // ubar = u0 = u1, <= 0 by convention
  double mach_downstream = 0.0;      // M1 = -v1/c1 in (0,1)
  double compression_ratio = 0.0;    // nu = tau0/tau1 - 1 > 0
};

/// Checks every RH/Lax invariant of a PlanarShock; throws ValidationError
/// listing the violated ones.
void validate_shock(const PlanarShock& shock, double tolerance = 1e-12);

/// Residual of the stationary jump relations across the line
/// {sin(angle) x1 + cos(angle) x2 = 0} (normal (sin angle, cos angle)):
///   sin(angle) (f1(Ub) - f1(Ua)) + cos(angle) (f2(Ub) - f2(Ua)).
/// Zero iff (Ua, Ub, angle) is a steady discontinuity.
FluxVector rh_residual(const EosSpec& eos, const FluidState& a, const FluidState& b,
                       double angle);

/// Max-norm of rh_residual scaled by the larger flux magnitude.
double rh_residual_scaled(const EosSpec& eos, const FluidState& a, const FluidState& b,
                          double angle);

/// How the downstream point on the Hugoniot is selected.
struct ShockStrength {
  enum class Kind { DownstreamTau, MassFlux, PressureRatio };
  Kind kind = Kind::PressureRatio;
  double value = 2.0;

  static ShockStrength downstream_tau(double tau1) { return {Kind::DownstreamTau, tau1}; }
  static ShockStrength mass_flux(double j) { return {Kind::MassFlux, j}; }
  static ShockStrength pressure_ratio(double r) { return {Kind::PressureRatio, r}; }
};

/// Solves the Rankine-Hugoniot conditions for the downstream state of a
/// compressive shock with upstream (tau0, s0) and tangential velocity u0.
/// The upstream normal velocity of the returned shock is set to -j tau0 from
/// the computed mass flux (the sign of the caller's v0 only fixes the flow
/// direction and must be negative).
/// Throws AdmissibilityError for zero-strength or expansion requests,
/// ConvergenceError if the Hugoniot solve fails.
PlanarShock solve_downstream(const EosSpec& eos, const FluidState& upstream,
                             const ShockStrength& strength);

/// Replaces the tangential velocity on both sides; every RH/Lax invariant
/// is untouched (they involve only tau, s, v).
PlanarShock galilean_shift(const PlanarShock& shock, double new_tangential_velocity);

/// The reduced set of numbers the normal-mode machinery needs. Worksheet
/// level code can synthesize these without an EOS.
struct ShockNumbers {
  double tau0 = 0.0, tau1 = 0.0;
  double ubar = 0.0;
  double v0 = 0.0, v1 = 0.0;
  double p0 = 0.0, p1 = 0.0;
  double e0 = 0.0, e1 = 0.0;
  double c1 = 0.0, c1sq = 0.0;
  double gamma1 = 0.0;  // downstream Gruneisen coefficient
  double T1 = 0.0;
  double j = 0.0;

  double m1() const { return -v1 / c1; }
  double nu() const { return tau0 / tau1 - 1.0; }
};

ShockNumbers reduce(const PlanarShock& shock);

}  // namespace shockstem

#endif
