#ifndef SHOCKSTEM_EULER_HPP
#define SHOCKSTEM_EULER_HPP

#include "shockstem/eos.hpp"
#include "shockstem/numerics.hpp"

namespace shockstem {

/// The nonconservative state vector U = (tau, u, v, s).
struct FluidState {
  double tau = 1.0;
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;

  Vec4 as_vector() const { return Vec4(tau, u, v, s); }
  static FluidState from_vector(const Vec4& x) { return {x[0], x[1], x[2], x[3]}; }
};

using FluxVector = Vec4;

/// Euler flux f_axis(U), axis 0 = time (conserved densities), 1 = x1, 2 = x2.
FluxVector flux(const EosSpec& eos, int axis, const FluidState& state);

/// P(U) with P = df0(U)^{-1}; det P = -tau^5 / T, so P is invertible at any
/// valid state.
Mat4 p_matrix(const EosSpec& eos, const FluidState& state);

/// P(U)^{-1} = df0(U), in closed form.
Mat4 p_matrix_inverse(const EosSpec& eos, const FluidState& state);

/// The quasilinear (primitive-variable) matrix B_axis with
/// df_axis = P^{-1} B_axis; its eigenvalues are the transport speeds
/// {w - c, w, w, w + c} with w the velocity component along the axis.
Mat4 quasilinear_matrix(const EosSpec& eos, int axis, const FluidState& state);

/// Jacobian df_axis(U) of the flux with respect to (tau, u, v, s),
/// computed as P(U)^{-1} B_axis(U). axis must be 1 or 2.
/// Throws SingularMatrixError if P(U) is numerically singular (cannot occur
/// for tau > 0, T > 0; signals invalid input).
Mat4 flux_jacobian(const EosSpec& eos, int axis, const FluidState& state);

/// Segment-averaged Jacobian A_axis(U1, U3) = int_0^1 df_axis(t U1 + (1-t) U3) dt
/// by Gauss-Legendre quadrature, starting at 8 points and doubling until the
/// mean-value identity A (U1 - U3) = f(U1) - f(U3) holds to 1e-10 relative.
/// Symmetric in (U1, U3). Throws DomainError if a quadrature node leaves the
/// EOS domain, ConvergenceError if 64 points are not enough.
Mat4 averaged_jacobian(const EosSpec& eos, int axis, const FluidState& a, const FluidState& b);

}  // namespace shockstem

#endif
