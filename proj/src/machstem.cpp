#include "shockstem/machstem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace shockstem {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec2 velocity(const FluidState& state) { return Vec2(state.u, state.v); }

}  // namespace

MachStemProblem::MachStemProblem(EosSpec eos, PlanarShock reference)
    : eos_(std::move(eos)), ref_(std::move(reference)) {
  validate_shock(ref_);
  th0_ = thermo_eval(eos_, ref_.upstream.tau, ref_.upstream.s);
  th1_ = thermo_eval(eos_, ref_.downstream.tau, ref_.downstream.s);

  const StabilityClass cls =
      classify(ref_.mach_downstream, th1_.gamma_g, ref_.compression_ratio);
  if (!cls.weak()) {
    std::ostringstream msg;
    msg << "MachStemProblem: reference shock is not weakly stable (class "
        << to_string(cls.kind) << ")";
    throw DomainError(msg.str());
  }
  const double ub = ref_.tangential_velocity, v1 = ref_.downstream.v;
  if (!(ub * ub + v1 * v1 > th1_.c2))
    throw DomainError("MachStemProblem: downstream flow must be supersonic (ubar^2 + v1^2 > c1^2)");

  const AcousticAngle psi = acoustic_angle(ub, v1, th1_.c);
  psi0_ = psi.psi;
  phi0_ = wrap_two_pi(std::atan2(v1, ub));

  inner_.tolerance = 1e-12;
  inner_.max_iterations = 50;
  inner_.step_cap = 0.10;

  const double s_scale = std::max(std::abs(th1_.s), th1_.p * th1_.tau / th1_.T);
  state_scale_ = Vec4(ref_.downstream.tau, th1_.c, th1_.c, s_scale);
}

double MachStemProblem::pressure_of(const FluidState& state) const {
  return thermo_eval(eos_, state.tau, state.s).p;
}

Vec4 MachStemProblem::kernel_vector(const FluidState& state) const {
  const ThermoPoint t = thermo_eval(eos_, state.tau, state.s);
  const AcousticAngle psi = acoustic_angle(state.u, state.v, t.c);
  return Vec4(state.tau, t.c * psi.sin_psi, -t.c * psi.cos_psi, 0.0);
}

FluidState MachStemProblem::downstream_state_1(const FluidState& upstream) const {
  const Vec4 gap = upstream.as_vector() - ref_.upstream.as_vector();
  double rel = 0.0;
  for (int i = 0; i < 4; ++i) rel = std::max(rel, std::abs(gap[i]) / state_scale_[i]);
  if (rel > inner_.step_cap)
    throw SeedTooFarError("downstream_state_1: upstream state outside the trust region");

  const Vec4 target = flux(eos_, 2, upstream);
  const double f_scale = std::max(target.cwiseAbs().maxCoeff(), 1e-300);
  const Vec4 f_scale_vec = Vec4::Constant(f_scale);

  Vec4 x = ref_.downstream.as_vector();
  const auto residual = [&](const Vec4& q) -> Vec4 {
    return flux(eos_, 2, FluidState::from_vector(q)) - target;
  };
  const auto jacobian = [&](const Vec4& q) -> Mat4 {
    return flux_jacobian(eos_, 2, FluidState::from_vector(q));
  };
  const NewtonReport rep = newton_solve<4>(residual, jacobian, x, f_scale_vec, state_scale_, inner_);
  if (!rep.converged)
    throw ConvergenceError("downstream_state_1: Newton stalled at residual " +
                           std::to_string(rep.residual));
  return FluidState::from_vector(x);
}

FluidState MachStemProblem::downstream_state_2(double eps, const FluidState& upstream) const {
  const double se = std::sin(eps), ce = std::cos(eps);
  const Vec4 target = se * flux(eos_, 1, upstream) + ce * flux(eos_, 2, upstream);
  const double f_scale = std::max(target.cwiseAbs().maxCoeff(), 1e-300);
  const Vec4 f_scale_vec = Vec4::Constant(f_scale);

  Vec4 x = downstream_state_1(upstream).as_vector();
  const auto residual = [&](const Vec4& q) -> Vec4 {
    const FluidState state = FluidState::from_vector(q);
    return se * flux(eos_, 1, state) + ce * flux(eos_, 2, state) - target;
  };
  const auto jacobian = [&](const Vec4& q) -> Mat4 {
    const FluidState state = FluidState::from_vector(q);
    return se * flux_jacobian(eos_, 1, state) + ce * flux_jacobian(eos_, 2, state);
  };
  const NewtonReport rep = newton_solve<4>(residual, jacobian, x, f_scale_vec, state_scale_, inner_);
  if (!rep.converged)
    throw ConvergenceError("downstream_state_2: Newton stalled at residual " +
                           std::to_string(rep.residual));
  return FluidState::from_vector(x);
}

Shock3Result MachStemProblem::shock3_solve(const FluidState& u1, double p_target,
                                           const std::optional<Shock3Result>& seed) const {
  const ThermoPoint t1 = thermo_eval(eos_, u1.tau, u1.s);
  const Vec4 r1 = kernel_vector(u1);
  const AcousticAngle causal = acoustic_angle(u1.u, u1.v, t1.c);

  // zero-amplitude wave: the jump relations hold for every angle, so the
  // eikonal equation alone fixes Psi
  if (std::abs(p_target - t1.p) <= 8.0 * std::numeric_limits<double>::epsilon() * t1.p)
    return {u1, causal.psi, 0.0};

  Vec5 x;
  if (seed) {
    x.head<4>() = seed->u3.as_vector();
    x[4] = seed->psi;
  } else {
    const double lambda_guess = (t1.p - p_target) * u1.tau / t1.c2;
    x.head<4>() = u1.as_vector() + lambda_guess * r1;
    x[4] = causal.psi;
  }

  const Vec4 f1_u1 = flux(eos_, 1, u1);
  const Vec4 f2_u1 = flux(eos_, 2, u1);
  const double f_scale =
      std::max(std::max(f1_u1.cwiseAbs().maxCoeff(), f2_u1.cwiseAbs().maxCoeff()), 1e-300);
  Vec5 r_scale;
  r_scale << f_scale, f_scale, f_scale, f_scale, t1.p;
  Vec5 x_scale;
  x_scale << state_scale_[0], state_scale_[1], state_scale_[2], state_scale_[3], 1.0;

  const auto residual = [&](const Vec5& q) -> Vec5 {
    const FluidState u3 = FluidState::from_vector(q.head<4>());
    const double psi = q[4];
    const Vec4 jump = -std::sin(psi) * (flux(eos_, 1, u3) - f1_u1) +
                      std::cos(psi) * (flux(eos_, 2, u3) - f2_u1);
    Vec5 out;
    out.head<4>() = jump;
    out[4] = thermo_eval(eos_, u3.tau, u3.s).p - p_target;
    return out;
  };
  const auto jacobian = [&](const Vec5& q) -> Mat5 {
    const FluidState u3 = FluidState::from_vector(q.head<4>());
    const double psi = q[4];
    const ThermoPoint t3 = thermo_eval(eos_, u3.tau, u3.s);
    Mat5 jac = Mat5::Zero();
    jac.topLeftCorner<4, 4>() = -std::sin(psi) * flux_jacobian(eos_, 1, u3) +
                                std::cos(psi) * flux_jacobian(eos_, 2, u3);
    jac.col(4).head<4>() = -std::cos(psi) * (flux(eos_, 1, u3) - f1_u1) -
                           std::sin(psi) * (flux(eos_, 2, u3) - f2_u1);
    jac(4, 0) = t3.dp_dtau();
    jac(4, 3) = t3.dp_ds();
    return jac;
  };

  NewtonOptions opts = inner_;
  opts.tolerance = 1e-13;
  const NewtonReport rep = newton_solve<5>(residual, jacobian, x, r_scale, x_scale, opts);
  if (!rep.converged && rep.residual > 1e-11)
    throw ConvergenceError("shock3_solve: Newton stalled at residual " +
                           std::to_string(rep.residual));

  Shock3Result out;
  out.u3 = FluidState::from_vector(x.head<4>());
  out.psi = wrap_two_pi(x[4]);
  out.lambda = (out.u3.as_vector() - u1.as_vector()).dot(r1) / r1.squaredNorm();

  const AcousticAngle rejected = acoustic_angle_rejected(u1.u, u1.v, t1.c);
  if (std::abs(angle_gap(out.psi, causal.psi)) > std::abs(angle_gap(out.psi, rejected.psi)))
    throw BranchJumpError("shock3_solve: converged angle belongs to the rejected branch");
  return out;
}

double MachStemProblem::velocity_mismatch(double eps, const FluidState& upstream) const {
  const FluidState u1 = downstream_state_1(upstream);
  const FluidState u2 = downstream_state_2(eps, upstream);
  const Shock3Result s3 = shock3_solve(u1, pressure_of(u2));
  return cross2(velocity(u2), velocity(s3.u3));
}

std::pair<double, double> MachStemProblem::velocity_mismatch_scaled(
    double eps, const FluidState& upstream) const {
  if (eps == 0.0) throw DomainError("velocity_mismatch_scaled: eps must be nonzero");
  const double d = velocity_mismatch(eps, upstream);
  return {d, d / eps};
}

MachStemPattern MachStemProblem::solve_pattern_unvalidated(double eps, double u_seed) const {
  if (eps == 0.0) throw DomainError("solve_pattern: eps must be nonzero");

  const double vel_scale = th1_.c2;
  const double u_step = 1e-6 * th1_.c;
  double u = u_seed;

  FluidState upstream = ref_.upstream;
  upstream.u = u;
  double dt = velocity_mismatch(eps, upstream) / eps;
  double best = std::abs(dt);
  for (int it = 0; it < 50 && best > 1e-13 * vel_scale; ++it) {
    upstream.u = u + u_step;
    const double dt_plus = velocity_mismatch(eps, upstream) / eps;
    const double slope = (dt_plus - dt) / u_step;
    if (slope == 0.0) break;
    double step = -dt / slope;
    const double cap = 0.05 * th1_.c;
    if (std::abs(step) > cap) step = std::copysign(cap, step);
    upstream.u = u + step;
    const double dt_next = velocity_mismatch(eps, upstream) / eps;
    if (std::abs(dt_next) >= best) break;  // converged to the noise floor
    u += step;
    dt = dt_next;
    best = std::abs(dt);
  }
  if (!(best < 1e-9 * vel_scale))
    throw ConvergenceError("solve_pattern: tangential-velocity iteration stalled at |delta|/eps = " +
                           std::to_string(best));

  upstream.u = u;
  const FluidState u1 = downstream_state_1(upstream);
  const FluidState u2 = downstream_state_2(eps, upstream);
  const Shock3Result s3 = shock3_solve(u1, pressure_of(u2));

  MachStemPattern pattern;
  pattern.eps = eps;
  pattern.theta = M_PI - eps;
  pattern.psi = s3.psi;
  pattern.phi = wrap_two_pi(std::atan2(u2.v, u2.u));
  pattern.phi0 = phi0_;
  pattern.psi0 = psi0_;
  pattern.lambda = s3.lambda;
  pattern.u0 = upstream;
  pattern.u1 = u1;
  pattern.u2 = u2;
  pattern.u3 = s3.u3;
  pattern.diag = diagnose(eps, upstream, u1, u2, s3.u3, pattern.phi, pattern.psi);
  return pattern;
}

PatternDiagnostics MachStemProblem::diagnose(double eps, const FluidState& u0,
                                             const FluidState& u1, const FluidState& u2,
                                             const FluidState& u3, double phi,
                                             double psi) const {
  PatternDiagnostics d;
  // front normal angles: S1 normal (sin eps, cos eps), S2 normal (0, 1),
  // S3 and CD normals at -psi, -phi
  d.rh_s1 = rh_residual_scaled(eos_, u0, u2, eps);
  d.rh_s2 = rh_residual_scaled(eos_, u0, u1, 0.0);
  d.rh_s3 = rh_residual_scaled(eos_, u1, u3, -psi);
  d.rh_cd = rh_residual_scaled(eos_, u2, u3, -phi);

  const ThermoPoint t0 = thermo_eval(eos_, u0.tau, u0.s);
  const ThermoPoint t1 = thermo_eval(eos_, u1.tau, u1.s);
  const ThermoPoint t2 = thermo_eval(eos_, u2.tau, u2.s);
  const ThermoPoint t3 = thermo_eval(eos_, u3.tau, u3.s);

  d.pressure_gap = std::abs(t2.p - t3.p) / t2.p;
  d.delta = cross2(velocity(u2), velocity(u3));
  const double vel_norm = velocity(u2).norm() * velocity(u3).norm();
  d.delta_scaled = d.delta / (vel_norm > 0.0 ? vel_norm : 1.0);
  d.collinearity_gap = std::abs(angle_gap(std::atan2(u3.v, u3.u), std::atan2(u2.v, u2.u)));

  const Vec2 cd_dir(std::cos(phi), std::sin(phi));
  const Vec2 cd_normal(-std::sin(phi), std::cos(phi));
  const Vec2 s3_dir(std::cos(psi), std::sin(psi));
  d.causality_cd = velocity(u2).dot(cd_dir);
  d.causality_cd_other = velocity(u3).dot(cd_dir);
  d.causality_s3 = velocity(u1).dot(s3_dir);
  d.cd_normal_flow_2 = velocity(u2).dot(cd_normal);
  d.cd_normal_flow_3 = velocity(u3).dot(cd_normal);

  // Lax margins as normal Mach number gaps; the upstream side of each front
  // must be supersonic, the downstream side subsonic
  const auto lax_pair = [&](const FluidState& up, const ThermoPoint& tup, const FluidState& dn,
                            const ThermoPoint& tdn, const Vec2& normal, double& up_margin,
                            double& dn_margin) {
    up_margin = std::abs(velocity(up).dot(normal)) / tup.c - 1.0;
    dn_margin = 1.0 - std::abs(velocity(dn).dot(normal)) / tdn.c;
  };
  lax_pair(u0, t0, u2, t2, Vec2(std::sin(eps), std::cos(eps)), d.lax_s1_upstream,
           d.lax_s1_downstream);
  lax_pair(u0, t0, u1, t1, Vec2(0.0, 1.0), d.lax_s2_upstream, d.lax_s2_downstream);
  lax_pair(u1, t1, u3, t3, Vec2(std::sin(psi), -std::cos(psi)), d.lax_s3_upstream,
           d.lax_s3_downstream);

  d.entropy_jump_s3 = u3.s - u1.s;
  d.pressure_ordering = t0.p < t1.p && t1.p < t2.p;
  return d;
}

std::vector<std::string> MachStemProblem::validation_failures(
    const MachStemPattern& pattern) const {
  std::vector<std::string> failures;
  const PatternDiagnostics& d = pattern.diag;
  const auto check = [&](bool ok, const std::string& what, double value) {
    if (!ok) {
      std::ostringstream msg;
      msg << what << " (" << value << ")";
      failures.push_back(msg.str());
    }
  };
  const double tol = 1e-10;
  check(pattern.theta == M_PI - pattern.eps, "theta = pi - eps", pattern.theta);
  check(d.rh_s1 < tol, "RH residual S1 < 1e-10", d.rh_s1);
  check(d.rh_s2 < tol, "RH residual S2 < 1e-10", d.rh_s2);
  check(d.rh_s3 < tol, "RH residual S3 < 1e-10", d.rh_s3);
  check(d.rh_cd < tol, "RH residual CD < 1e-10", d.rh_cd);
  check(d.pressure_gap < 1e-12, "pressure match p2 = p3", d.pressure_gap);
  check(std::abs(d.delta_scaled) < 1e-12, "velocity collinearity delta = 0", d.delta_scaled);
  check(d.causality_cd > 0.0, "causality along CD (state 2)", d.causality_cd);
  check(d.causality_cd_other > 0.0, "causality along CD (state 3)", d.causality_cd_other);
  check(d.causality_s3 > 0.0, "causality along S3", d.causality_s3);
  const double u_scale = std::abs(th1_.c);
  check(std::abs(d.cd_normal_flow_2) < tol * u_scale, "zero normal flow through CD (state 2)",
        d.cd_normal_flow_2);
  check(std::abs(d.cd_normal_flow_3) < tol * u_scale, "zero normal flow through CD (state 3)",
        d.cd_normal_flow_3);
  check(d.pressure_ordering, "pressure ordering p0 < p1 < p2", 0.0);
  check(d.lax_s1_upstream > 0.0 && d.lax_s1_downstream > 0.0, "Lax inequalities for S1",
        std::min(d.lax_s1_upstream, d.lax_s1_downstream));
  check(d.lax_s2_upstream > 0.0 && d.lax_s2_downstream > 0.0, "Lax inequalities for S2",
        std::min(d.lax_s2_upstream, d.lax_s2_downstream));
  check(d.lax_s3_upstream > 0.0 && d.lax_s3_downstream > 0.0, "Lax inequalities for S3",
        std::min(d.lax_s3_upstream, d.lax_s3_downstream));
  // the S3 entropy jump is cubic in the amplitude; below the noise floor the
  // sign is unresolvable, so the check only fires on resolvable violations
  const double s_noise = 1e-12 * state_scale_[3];
  if (pattern.eps > 0.0)
    check(d.entropy_jump_s3 > -s_noise, "entropy rise across S3", d.entropy_jump_s3);
  const double branch_own = std::abs(angle_gap(pattern.psi, pattern.psi0));
  const double branch_other = std::abs(
      angle_gap(pattern.psi, acoustic_angle_rejected(pattern.u1.u, pattern.u1.v,
                                                     thermo_eval(eos_, pattern.u1.tau, pattern.u1.s).c)
                                 .psi));
  check(branch_own < branch_other, "Psi stays on the causal branch", pattern.psi);
  return failures;
}

MachStemPattern MachStemProblem::solve_pattern(double eps, double u_seed) const {
  MachStemPattern pattern = solve_pattern_unvalidated(eps, u_seed);
  const std::vector<std::string> failures = validation_failures(pattern);
  if (!failures.empty()) {
    std::string msg = "solve_pattern: pattern invariants violated:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw ValidationError(msg, failures);
  }
  return pattern;
}

FamilyResult MachStemProblem::continue_family(std::span<const double> eps_grid) const {
  FamilyResult family;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))) {
      family.failed_index = i;
      family.failure = "eps grid must be strictly increasing and positive";
      return family;
    }
    double u_seed = ref_.tangential_velocity;
    if (family.patterns.size() == 1) {
      u_seed = family.patterns[0].u0.u;
    } else if (family.patterns.size() >= 2) {
      const auto& a = family.patterns[family.patterns.size() - 2];
      const auto& b = family.patterns[family.patterns.size() - 1];
      u_seed = b.u0.u + (b.u0.u - a.u0.u) * (eps_grid[i] - b.eps) / (b.eps - a.eps);
    }
    try {
      family.patterns.push_back(solve_pattern(eps_grid[i], u_seed));
    } catch (const Error& err) {
      family.failed_index = i;
      family.failure = err.what();
      return family;
    }
  }
  return family;
}

AsymptoticReport MachStemProblem::asymptotic_checks() const {
  AsymptoticReport report;
  const ShockNumbers nums = reduce(ref_);
  const LinearizedRhSolution rh = solve_linearized_rh(nums);
  report.alpha0 = rh.alpha0;
  report.alpha_minus = rh.alpha_minus;
  report.mu0 = rh.mu0;
  report.g1 = th1_.g;

  const double m1 = ref_.mach_downstream;
  const double nu = ref_.compression_ratio;
  const double beta = rh.cos_psi0;
  report.alpha0_closed = alpha0_closed(m1, nu, beta);
  report.alpha_minus_closed = alpha_minus_closed(m1, nu, beta);
  report.omega0_factor = omega0_factor(m1, beta);
  report.omega1_factor = omega1_factor(m1, beta);
  report.d2_delta_closed = d2_delta_deps_du_closed(m1, nu, beta, th1_.c);

  // family at halving eps for the extrapolations
  const std::vector<double> eps_grid = {1.25e-3, 2.5e-3, 5e-3, 1e-2};
  FamilyResult family = continue_family(eps_grid);
  if (family.failed_index)
    throw ConvergenceError("asymptotic_checks: family construction failed: " + family.failure);

  const std::size_t n = eps_grid.size();
  std::vector<double> eps(n), lam_ratio(n), u_ratio(n), psi_ratio(n), up_ratio(n), dn_ratio(n);
  const double ubar = ref_.tangential_velocity;
  for (std::size_t i = 0; i < n; ++i) {
    const MachStemPattern& p = family.patterns[i];
    eps[i] = p.eps;
    lam_ratio[i] = p.lambda / p.eps;
    u_ratio[i] = (p.u0.u - ubar) / p.eps;
    psi_ratio[i] = angle_gap(p.psi, psi0_) / p.eps;
    const ThermoPoint t1 = thermo_eval(eos_, p.u1.tau, p.u1.s);
    const ThermoPoint t3 = thermo_eval(eos_, p.u3.tau, p.u3.s);
    const Vec2 s3_out(std::sin(p.psi), -std::cos(p.psi));
    up_ratio[i] = (velocity(p.u1).dot(s3_out) - t1.c) / p.eps;
    dn_ratio[i] = (velocity(p.u3).dot(s3_out) - t3.c) / p.eps;
  }
  report.lambda_over_eps_limit = extrapolate_to_zero(eps, lam_ratio);
  report.lambda_over_eps_gap = std::abs(report.lambda_over_eps_limit - report.alpha_minus);
  report.u_prime0 = extrapolate_to_zero(eps, u_ratio);
  report.psi_prime0_fd = extrapolate_to_zero(eps, psi_ratio);

  const double root = std::sqrt(ubar * ubar + ref_.downstream.v * ref_.downstream.v - th1_.c2);
  report.psi_prime0_closed =
      (-0.5 * report.alpha_minus * th1_.c * report.g1 - rh.sin_psi0 * report.u_prime0) / root;
  report.psi_prime0_gap = std::abs(report.psi_prime0_fd - report.psi_prime0_closed) /
                          std::abs(report.psi_prime0_closed);

  report.lax_s3_up_derivative_closed = -0.5 * report.alpha_minus * th1_.c * report.g1;
  report.lax_s3_dn_derivative_closed = 0.5 * report.alpha_minus * th1_.c * report.g1;
  report.lax_s3_up_derivative_fd = extrapolate_to_zero(eps, up_ratio);
  report.lax_s3_dn_derivative_fd = extrapolate_to_zero(eps, dn_ratio);
  report.lax_derivative_gap = std::max(
      std::abs(report.lax_s3_up_derivative_fd - report.lax_s3_up_derivative_closed) /
          std::abs(report.lax_s3_up_derivative_closed),
      std::abs(report.lax_s3_dn_derivative_fd - report.lax_s3_dn_derivative_closed) /
          std::abs(report.lax_s3_dn_derivative_closed));

  // mixed centered difference of delta(eps, u) against the closed form
  const double h_eps = 3e-4;
  const double h_u = 3e-4 * std::abs(ubar);
  const auto delta_at = [&](double e, double du) {
    FluidState upstream = ref_.upstream;
    upstream.u = ubar + du;
    return velocity_mismatch(e, upstream);
  };
  report.d2_delta_fd = (delta_at(h_eps, h_u) - delta_at(h_eps, -h_u) - delta_at(-h_eps, h_u) +
                        delta_at(-h_eps, -h_u)) /
                       (4.0 * h_eps * h_u);
  report.d2_delta_gap =
      std::abs(report.d2_delta_fd - report.d2_delta_closed) / std::abs(report.d2_delta_closed);
  return report;
}

}  // namespace shockstem
