#include "shockstem/euler.hpp"

#include <cmath>

namespace shockstem {

namespace {

void check_axis(int axis, int lo) {
  if (axis < lo || axis > 2) throw DomainError("flux axis must be in {" + std::to_string(lo) + ",...,2}");
}

}  // namespace

FluxVector flux(const EosSpec& eos, int axis, const FluidState& state) {
  check_axis(axis, 0);
  const ThermoPoint t = thermo_eval(eos, state.tau, state.s);
  const double rho = t.rho;
  const double total = 0.5 * rho * (state.u * state.u + state.v * state.v) + rho * t.e;
  switch (axis) {
    case 0:
      return Vec4(rho, rho * state.u, rho * state.v, total);
    case 1:
      return Vec4(rho * state.u, rho * state.u * state.u + t.p, rho * state.u * state.v,
                  (total + t.p) * state.u);
    default:
      return Vec4(rho * state.v, rho * state.u * state.v, rho * state.v * state.v + t.p,
                  (total + t.p) * state.v);
  }
}

Mat4 p_matrix(const EosSpec& eos, const FluidState& state) {
  const ThermoPoint t = thermo_eval(eos, state.tau, state.s);
  const double tau = state.tau, u = state.u, v = state.v;
  Mat4 p = Mat4::Zero();
  p(0, 0) = -tau * tau;
  p(1, 0) = -tau * u;
  p(1, 1) = tau;
  p(2, 0) = -tau * v;
  p(2, 2) = tau;
  p(3, 0) = tau * tau / t.T * (t.rho * (0.5 * (u * u + v * v) - t.e) - t.p);
  p(3, 1) = -tau * u / t.T;
  p(3, 2) = -tau * v / t.T;
  p(3, 3) = tau / t.T;
  return p;
}

Mat4 p_matrix_inverse(const EosSpec& eos, const FluidState& state) {
  // P^{-1} = df0(U) in closed form
  const ThermoPoint t = thermo_eval(eos, state.tau, state.s);
  const double tau = state.tau, u = state.u, v = state.v;
  const double rho = t.rho;
  Mat4 m = Mat4::Zero();
  m(0, 0) = -1.0 / (tau * tau);
  m(1, 0) = -u / (tau * tau);
  m(1, 1) = rho;
  m(2, 0) = -v / (tau * tau);
  m(2, 2) = rho;
  m(3, 0) = -(0.5 * (u * u + v * v) + t.e) / (tau * tau) - t.p / tau;
  m(3, 1) = rho * u;
  m(3, 2) = rho * v;
  m(3, 3) = t.T / tau;
  return m;
}

Mat4 quasilinear_matrix(const EosSpec& eos, int axis, const FluidState& state) {
  check_axis(axis, 1);
  const ThermoPoint t = thermo_eval(eos, state.tau, state.s);
  const double tau = state.tau;
  Mat4 b = Mat4::Zero();
  if (axis == 1) {
    const double u = state.u;
    b(0, 0) = u;
    b(0, 1) = -tau;
    b(1, 0) = -t.c2 / tau;
    b(1, 1) = u;
    b(1, 3) = t.gamma_g * t.T;
    b(2, 2) = u;
    b(3, 3) = u;
  } else {
    const double v = state.v;
    b(0, 0) = v;
    b(0, 2) = -tau;
    b(1, 1) = v;
    b(2, 0) = -t.c2 / tau;
    b(2, 2) = v;
    b(2, 3) = t.gamma_g * t.T;
    b(3, 3) = v;
  }
  return b;
}

Mat4 flux_jacobian(const EosSpec& eos, int axis, const FluidState& state) {
  check_axis(axis, 1);
  const Mat4 p = p_matrix(eos, state);
  const double det = p.determinant();  // equals -tau^5 / T at a valid state
  const double scale = std::pow(state.tau, 5);
  if (!(std::abs(det) > 1e-14 * std::max(scale, 1e-300)))
    throw SingularMatrixError("flux_jacobian: P(U) is numerically singular");
  return p_matrix_inverse(eos, state) * quasilinear_matrix(eos, axis, state);
}

Mat4 averaged_jacobian(const EosSpec& eos, int axis, const FluidState& a, const FluidState& b) {
  check_axis(axis, 1);
  const Vec4 xa = a.as_vector(), xb = b.as_vector();
  const Vec4 diff = xa - xb;
  const Vec4 delta_f = flux(eos, axis, a) - flux(eos, axis, b);
  double scale = std::max(flux(eos, axis, a).cwiseAbs().maxCoeff(),
                          flux(eos, axis, b).cwiseAbs().maxCoeff());
  if (scale <= 0.0) scale = 1.0;

  Mat4 best = Mat4::Zero();
  for (int n = 8; n <= 64; n *= 2) {
    const Quadrature& q = gauss_legendre(n);
    Mat4 acc = Mat4::Zero();
    for (int k = 0; k < n; ++k) {
      const Vec4 x = q.nodes[k] * xa + (1.0 - q.nodes[k]) * xb;
      acc += q.weights[k] * flux_jacobian(eos, axis, FluidState::from_vector(x));
    }
    best = acc;
    const double residual = (acc * diff - delta_f).cwiseAbs().maxCoeff() / scale;
    if (residual < 1e-10) return best;
  }
  throw ConvergenceError("averaged_jacobian: mean-value identity not met at 64 nodes");
}

}  // namespace shockstem
