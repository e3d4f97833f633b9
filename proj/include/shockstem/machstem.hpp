#ifndef SHOCKSTEM_MACHSTEM_HPP
#define SHOCKSTEM_MACHSTEM_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shockstem/stability.hpp"

namespace shockstem {

/// Residuals, margins and flags of one converged four-wave pattern.
struct PatternDiagnostics {
  double rh_s1 = 0.0, rh_s2 = 0.0, rh_s3 = 0.0, rh_cd = 0.0;  // scaled residual max-norms
  double pressure_gap = 0.0;        // |p2 - p3| / p2
  double delta = 0.0;               // velocity-mismatch determinant
  double delta_scaled = 0.0;        // delta / (|u2||u3|)
  double collinearity_gap = 0.0;    // angle between u(U2) and u(U3)
  double causality_cd = 0.0;        // u(U2).(cos Phi, sin Phi) > 0
  double causality_cd_other = 0.0;  // u(U3).(cos Phi, sin Phi) > 0
  double causality_s3 = 0.0;        // u(U1).(cos Psi, sin Psi) > 0
  double cd_normal_flow_2 = 0.0;    // u(U2).n_CD, ~0
  double cd_normal_flow_3 = 0.0;    // u(U3).n_CD, ~0
  double lax_s1_upstream = 0.0, lax_s1_downstream = 0.0;  // normal Mach margins, > 0
  double lax_s2_upstream = 0.0, lax_s2_downstream = 0.0;
  double lax_s3_upstream = 0.0, lax_s3_downstream = 0.0;
  double entropy_jump_s3 = 0.0;  // s3 - s1 (cubic in the S3 amplitude)
  bool pressure_ordering = false;  // p0 < p1 < p2 = p3
};

/// One member of the Mach stem family at bifurcation parameter eps
/// (stem angle Theta = pi - eps).
struct MachStemPattern {
  double eps = 0.0;
  double theta = 0.0;  // pi - eps exactly
  double phi = 0.0;    // contact angle, common argument of u(U2), u(U3)
  double psi = 0.0;    // S3 angle
  double phi0 = 0.0;   // limit angles of the reference shock
  double psi0 = 0.0;
  double lambda = 0.0;  // S3 amplitude, signed projection on R(U1)
  FluidState u0, u1, u2, u3;
  PatternDiagnostics diag;
};

struct Shock3Result {
  FluidState u3;
  double psi = 0.0;
  double lambda = 0.0;
};

struct FamilyResult {
  std::vector<MachStemPattern> patterns;
  std::optional<std::size_t> failed_index;  // first grid point that failed
  std::string failure;
};

/// Closed-form asymptotics of the family at eps = 0 and their
/// finite-difference counterparts.
struct AsymptoticReport {
  double alpha0 = 0.0;        // from the linearized RH decomposition
  double alpha_minus = 0.0;
  double mu0 = 0.0;
  double alpha0_closed = 0.0;  // defalpha0- route via (M1, nu, beta)
  double alpha_minus_closed = 0.0;
  double g1 = 0.0;  // genuine nonlinearity at the downstream state

  double lambda_over_eps_limit = 0.0;  // Richardson limit of lambda(eps)/eps
  double lambda_over_eps_gap = 0.0;    // |limit - alpha_minus|

  double u_prime0 = 0.0;  // extrapolated (u(eps) - ubar)/eps

  double psi_prime0_closed = 0.0;  // from the Psi'(0) relation given u'(0)
  double psi_prime0_fd = 0.0;
  double psi_prime0_gap = 0.0;  // relative

  double d2_delta_closed = 0.0;  // nu v1 sqrt(1-beta^2)/(1+nu) (Omega0 + nu M1 Omega1)
  double d2_delta_fd = 0.0;      // mixed centered difference of delta(eps, u)
  double d2_delta_gap = 0.0;     // relative
  double omega0_factor = 0.0;    // both must be positive
  double omega1_factor = 0.0;

  double lax_s3_up_derivative_closed = 0.0;  // -alpha_- c1 G1 / 2
  double lax_s3_up_derivative_fd = 0.0;
  double lax_s3_dn_derivative_closed = 0.0;  // +alpha_- c1 G1 / 2
  double lax_s3_dn_derivative_fd = 0.0;
  double lax_derivative_gap = 0.0;  // max relative gap of the two
};

/// Binds an EOS and a validated weak-regime reference shock (normally with
/// ubar = -V) and exposes the bifurcation machinery. All methods are const
/// and safe to call concurrently.
class MachStemProblem {
 public:
  /// Throws DomainError unless the reference shock is weakly stable and its
  /// downstream flow is supersonic (ubar^2 + v1^2 > c1^2).
  MachStemProblem(EosSpec eos, PlanarShock reference);

  const PlanarShock& reference() const { return ref_; }
  const EosSpec& eos() const { return eos_; }
  double psi0() const { return psi0_; }
  double phi0() const { return phi0_; }
  /// Normalized kernel vector R(U) of the acoustic front at a state.
  Vec4 kernel_vector(const FluidState& state) const;

  /// Downstream of the S2 front: solves f2(X) = f2(U) near the reference
  /// downstream state. Throws SeedTooFarError if U is further than the
  /// trust region from the reference upstream.
  FluidState downstream_state_1(const FluidState& upstream) const;

  /// Downstream of the S1 front at angle pi - eps:
  /// sin(eps) (f1(X) - f1(U)) + cos(eps) (f2(X) - f2(U)) = 0.
  FluidState downstream_state_2(double eps, const FluidState& upstream) const;

  /// Small shock S3: solves the four jump relations across the front at
  /// angle Psi plus p(U3) = p_target for (U3, Psi), with Psi on the causal
  /// branch. lambda is recovered as the projection of U3 - U1 on R(U1).
  /// Throws BranchJumpError if the converged angle is nearer the rejected
  /// candidate.
  Shock3Result shock3_solve(const FluidState& u1, double p_target,
                            const std::optional<Shock3Result>& seed = std::nullopt) const;

  /// delta(eps, U) = det [ u(U2(eps,U)) , u(U3) ] with U3 matched to the
  /// pressure of U2.
  double velocity_mismatch(double eps, const FluidState& upstream) const;
  /// delta and delta/eps together (eps != 0).
  std::pair<double, double> velocity_mismatch_scaled(double eps, const FluidState& upstream) const;

  /// Solves delta_tilde(eps, u) = 0 for the upstream tangential velocity and
  /// assembles the validated four-wave pattern. Throws ValidationError with
  /// the list of violated invariants (e.g. the S3 Lax failure for eps < 0).
  MachStemPattern solve_pattern(double eps, double u_seed) const;
  /// Same but returns the pattern without throwing on validation failures.
  MachStemPattern solve_pattern_unvalidated(double eps, double u_seed) const;

  /// Predictor-corrector continuation over an increasing positive eps grid;
  /// on failure the partial family is returned with the failing index.
  FamilyResult continue_family(std::span<const double> eps_grid) const;

  /// Collects validation failures of a pattern (empty = pass).
  std::vector<std::string> validation_failures(const MachStemPattern& pattern) const;

  /// Recomputes diagnostics of a pattern from its states (used by verify).
  PatternDiagnostics diagnose(double eps, const FluidState& u0, const FluidState& u1,
                              const FluidState& u2, const FluidState& u3, double phi,
                              double psi) const;

  AsymptoticReport asymptotic_checks() const;

 private:
  EosSpec eos_;
  PlanarShock ref_;
  ThermoPoint th0_, th1_;
  double psi0_ = 0.0, phi0_ = 0.0;
  NewtonOptions inner_;
  Vec4 state_scale_;  // characteristic magnitudes of (tau, u, v, s)

  double pressure_of(const FluidState& state) const;
};

}  // namespace shockstem

#endif
