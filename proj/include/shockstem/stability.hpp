#ifndef SHOCKSTEM_STABILITY_HPP
#define SHOCKSTEM_STABILITY_HPP

#include <vector>

#include "shockstem/normal_modes.hpp"

namespace shockstem {

/// The uniform / weak / violent trichotomy, classified by M1^2 nu against
/// 1/(1+Gamma1) and (1+M1)/Gamma1.
struct StabilityClass {
  enum class Kind { Uniform, Weak, Violent, LimitGlancing, LimitOneDimensional };
  Kind kind = Kind::Uniform;
  double margin_lower = 0.0;  // M1^2 nu - 1/(1+Gamma1)
  double margin_upper = 0.0;  // (1+M1)/Gamma1 - M1^2 nu

  bool weak() const { return kind == Kind::Weak; }
};

const char* to_string(StabilityClass::Kind kind);

/// Throws DomainError for M1 outside (0,1), Gamma1 <= 0 or nu <= 0.
/// The Limit kinds fire within 1e-12 relative of either boundary.
StabilityClass classify(double m1, double gamma1, double nu);

/// Critical velocity V > 0 from the quadratic in X = V^2,
///   ((k-1)^2 - M1^2) X^2 + ((k-1)^2 + 1 - 2 M1^2 - 2 nu (k-1+M1^2)) v1^2 X
///     + v1^4 (1-M1^2) (1+nu)^2 = 0,   k = 2 - M1^2 Gamma1 nu,
/// keeping the root that satisfies the three-part characterization
///   (i) V^2 > c1^2 - v1^2, (ii) the strict inequality, (iii) the squared
/// relation. Exactly one root qualifies in the weak regime.
/// Throws NoAdmissibleRootError / DegenerateQuarticError accordingly.
double solve_v(double m1, double gamma1, double nu, double c1);

struct CStarResult {
  double c_star = 0.0;
  double phi = 0.0;   // root of the Phi quadratic in (M1, 1)
  double beta = 0.0;  // in (-1, M1)
};

/// The contact-angle route: Phi from its quadratic (unique real root in (M1,1)),
/// then beta and c_star. Throws NoRootInIntervalError when no root lies in
/// (M1, 1) (inputs outside the weak regime).
CStarResult c_star(double m1, double gamma1, double nu, double c1);

/// Every dimensionless quantity of the weak-stability analysis, computed by
/// both independent routes.
struct WeakStabilityWorksheet {
  double m1 = 0.0, gamma1 = 0.0, nu = 0.0, c1 = 0.0;
  double v1 = 0.0;       // -M1 c1
  double k = 0.0;        // 2 - M1^2 Gamma1 nu
  double phi = 0.0;
  double y = 0.0;        // M1 Phi, largest root of Q
  double beta = 0.0;
  double upsilon = 0.0;  // ubar/c1 = -(1 - M1 beta)/sqrt(1-beta^2)
  double c_star = 0.0;
  double v_crit = 0.0;   // V from the quartic route
};

WeakStabilityWorksheet make_worksheet(double m1, double gamma1, double nu, double c1);

/// Q(Y) = Y^2 + M1^2 Gamma1 Y - M1^2 (1+Gamma1) + (1-M1^2)/nu.
double q_polynomial(double m1, double gamma1, double nu, double y);

struct EquivalenceReport {
  double v_crit = 0.0;
  double c_star = 0.0;
  double relative_gap = 0.0;
  bool pass = false;  // gap < 1e-10
};

/// Computes V and c_star by their independent routes and reports the gap.
EquivalenceReport critical_velocity_equivalence(double m1, double gamma1, double nu, double c1);

/// The closed-form E^s coefficients in terms of (M1, nu, beta).
double alpha0_closed(double m1, double nu, double beta);
double alpha_minus_closed(double m1, double nu, double beta);

/// The two positive factors of the mixed derivative of the velocity
/// mismatch: d2(delta)/d(eps)d(u) = nu v1 sqrt(1-beta^2)/(1+nu) *
/// (Omega0 + nu M1 Omega1).
double omega0_factor(double m1, double beta);
double omega1_factor(double m1, double beta);
double d2_delta_deps_du_closed(double m1, double nu, double beta, double c1);

struct ScanResult {
  std::vector<double> roots;      // increasing order
  double min_normalized = 0.0;    // min |Delta|/scale over the scanned grid
};

/// Locates the real zeros of z -> Delta(ubar, z, eta) on [z_lo, z_hi] by
/// sign changes of Re Delta on the hyperbolic segments, refined by bisection
/// to 1e-9. Grid points inside the elliptic band or at glancing points are
/// skipped. An empty list is a valid result.
ScanResult scan_real_roots(const ShockNumbers& nums, double eta, double z_lo, double z_hi,
                           int grid_count);
ScanResult scan_real_roots(const PlanarShock& shock, double eta, double z_lo, double z_hi,
                           int grid_count);

/// Worksheet-level shock numbers: states scaled so tau1 = 1, T1 = 1, with
/// p0 and e0 free gauge choices. The Lopatinskii zero set depends only on
/// (M1, Gamma1, nu, ubar/c1), which lets the trichotomy be probed without
/// realizing an EOS.
ShockNumbers synthetic_numbers(double m1, double gamma1, double nu, double c1 = 1.0,
                               double ubar = 0.0, double p0 = 1.0, double e0 = 1.0);

}  // namespace shockstem

#endif
