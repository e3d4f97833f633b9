#ifndef SHOCKSTEM_EOS_HPP
#define SHOCKSTEM_EOS_HPP

#include <array>
#include <string>
#include <utility>
#include <variant>

#include "shockstem/errors.hpp"

namespace shockstem {

/// Ideal polytropic gas, e(tau,s) = e_ref (tau/tau_ref)^(1-gamma) exp((s-s_ref)/cv).
struct IdealPolytropicEos {
  double gamma = 1.4;  // adiabatic exponent, > 1
  double cv = 1.0;     // specific heat at constant volume
  double tau_ref = 1.0;
  double s_ref = 0.0;
  double e_ref = 1.0;
};

/// Mie-Gruneisen form with constant Gruneisen coefficient and a power-law
/// cold curve,
///   e(tau,s) = A (tau/tau_ref)^(-Gamma0) exp((s-s_ref)/cv)
///            + K (tau/tau_ref)^(1-n) / (n-1).
/// The Gruneisen coefficient of this family is Gamma0 at every state, so the
/// sound speed can be stiffened through K independently of Gamma; that is
/// what makes the weak-stability window reachable (the ideal gas never
/// enters it).
struct ConstantGruneisenEos {
  double gamma0 = 2.0;            // Gruneisen coefficient, > 0
  double cv = 1.0;                // specific heat
  double thermal_amplitude = 1.0; // A; A <= 0 is accepted but fails Bethe-Weyl
  double cold_stiffness = 0.0;    // K >= 0
  double cold_exponent = 2.0;     // n > 1
  double tau_ref = 1.0;
  double s_ref = 0.0;
};

using EosSpec = std::variant<IdealPolytropicEos, ConstantGruneisenEos>;

/// Checks the parameter invariants (gamma > 1, n > 1, positive scales).
/// Throws DomainError naming the offending parameter.
void validate(const EosSpec& eos);

/// Full thermodynamic evaluation at one (tau, s) point. All members are
/// closed-form; finite differences appear only in tests.
struct ThermoPoint {
  double tau = 0.0;
  double s = 0.0;
  double e = 0.0;
  double p = 0.0;     // -de/dtau
  double T = 0.0;     // de/ds
  double c = 0.0;     // sound speed, c^2 = tau^2 e_tautau
  double c2 = 0.0;
  double gamma_g = 0.0;  // Gruneisen coefficient, -(tau/T) e_stau
  double rho = 0.0;      // 1/tau
  double g = 0.0;        // genuine nonlinearity, -(tau/2) e_tautautau / e_tautau

  // raw second/third derivatives of e, used by Jacobians and Newton rows
  double e_tautau = 0.0;
  double e_stau = 0.0;
  double e_tautautau = 0.0;

  double dp_dtau() const { return -e_tautau; }
  double dp_ds() const { return gamma_g * T / tau; }
};

/// Evaluates e and its derivatives at (tau, s) and checks the Bethe-Weyl
/// inequalities there. Throws DomainError reporting the first failed
/// inequality (or tau <= 0).
ThermoPoint thermo_eval(const EosSpec& eos, double tau, double s);

/// The five Bethe-Weyl inequalities in fixed order.
enum class BetheWeyl {
  PressurePositive = 0,      // p > 0
  TemperaturePositive = 1,   // T > 0
  EnergyConvex = 2,          // e_tautau > 0
  CrossDerivativeNegative = 3,  // e_stau < 0
  ThirdDerivativeNegative = 4,  // e_tautautau < 0
};

const char* bethe_weyl_name(BetheWeyl which);

/// Names of the inequalities violated at (tau, s); empty means admissible.
std::vector<std::string> bethe_weyl_violations(const EosSpec& eos, double tau, double s);

struct BetheWeylReport {
  struct Entry {
    std::string name;
    long fail_count = 0;
    double worst_margin = 0.0;  // most negative signed margin seen
    double tau_at_worst = 0.0;
    double s_at_worst = 0.0;
  };
  bool pass = false;  // true iff every inequality holds at every grid point
  long grid_points = 0;
  std::array<Entry, 5> inequalities;
};

/// Checks the five inequalities on a tensor grid over tau_range x s_range.
/// Throws DomainError on empty ranges or grid counts < 2.
BetheWeylReport bethe_weyl_report(const EosSpec& eos,
                                  std::pair<double, double> tau_range,
                                  std::pair<double, double> s_range,
                                  std::pair<int, int> grid_counts);

}  // namespace shockstem

#endif
