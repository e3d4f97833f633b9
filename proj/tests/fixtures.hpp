#ifndef SHOCKSTEM_TEST_FIXTURES_HPP
#define SHOCKSTEM_TEST_FIXTURES_HPP

#include "shockstem/stability.hpp"
#include "shockstem/weak_regime.hpp"

namespace shockstem::testing {

// Ideal gas normalized so that p = 1 at (tau, s) = (1, 0).
inline EosSpec ideal_air() {
  return IdealPolytropicEos{1.4, 1.0, 1.0, 0.0, 2.5};
}

// Constant-Gruneisen material whose Hugoniot reaches the weak-stability
// window with a comfortable margin around tau1/tau0 = 0.76.
inline EosSpec gruneisen_stiff() {
  return ConstantGruneisenEos{5.0, 1.0, 0.04, 20.0, 1.2, 1.0, 0.0};
}

// The softer variant used by the weak-regime search example.
inline EosSpec gruneisen_soft() {
  return ConstantGruneisenEos{5.0, 1.0, 0.04, 1.5, 2.0, 1.0, 0.0};
}

// Upstream Mach 2 normal shock of the ideal gas.
inline PlanarShock mach2_shock() {
  return solve_downstream(ideal_air(), FluidState{1.0, 0.0, -1.0, 0.0},
                          ShockStrength::pressure_ratio(4.5));
}

// Weak-regime reference shock (ubar = 0) for a given downstream volume.
inline PlanarShock weak_shock(double tau1 = 0.76) {
  return solve_downstream(gruneisen_stiff(), FluidState{1.0, 0.0, -1.0, 0.0},
                          ShockStrength::downstream_tau(tau1));
}

inline double critical_velocity(const PlanarShock& shock) {
  const ThermoPoint dn = thermo_eval(shock.eos, shock.downstream.tau, shock.downstream.s);
  return solve_v(shock.mach_downstream, dn.gamma_g, shock.compression_ratio, dn.c);
}

// The same shock carried to the critical tangential velocity ubar = -V.
inline PlanarShock weak_shock_critical(double tau1 = 0.76) {
  const PlanarShock base = weak_shock(tau1);
  return galilean_shift(base, -critical_velocity(base));
}

}  // namespace shockstem::testing

#endif
