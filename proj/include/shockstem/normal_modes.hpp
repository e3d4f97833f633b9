#ifndef SHOCKSTEM_NORMAL_MODES_HPP
#define SHOCKSTEM_NORMAL_MODES_HPP

#include <array>

#include "shockstem/shock.hpp"

namespace shockstem {

/// Laplace-Fourier frequency. The paper's convention is Im z <= 0 (Laplace
/// variable z = delta - i gamma, gamma >= 0).
struct FrequencyPoint {
  Complex z{0.0, 0.0};
  double eta = 1.0;
};

/// Eigenmodes behind the shock and the spanning vectors of the stable
/// subspace E^s(z,eta) = E_0 + E_-.
struct ModeDecomposition {
  Complex omega0{};
  Complex omega_minus{};
  std::array<CVec4, 2> basis_e0{};  // (0, omega0, -eta, 0), (Gamma1 T1 tau1, 0, 0, c1^2)
  CVec4 basis_eminus{};             // (tau1 (z + ubar eta + v1 omega_-), c1^2 eta, c1^2 omega_-, 0)
  bool hyperbolic = false;          // all acoustic roots real and separated at (z, eta)
};

/// omega_0 from the transport equation and omega_- as the acoustic root with
/// Im omega_- < 0 for Im z < 0, extended continuously to real z by a damped
/// probe z - i gamma_probe with gamma_probe halved until two successive
/// probes agree to 1e-10.
/// Throws GlancingError when the acoustic roots collide at a real frequency
/// and CoincidenceError when omega_0 = omega_- within tolerance.
ModeDecomposition eigenmodes(const ShockNumbers& nums, const FrequencyPoint& f);
ModeDecomposition eigenmodes(const PlanarShock& shock, const FrequencyPoint& f);

/// Same as eigenmodes but guarantees the three basis vectors are populated
/// exactly as in the eigenspace formulas.
ModeDecomposition stable_subspace(const ShockNumbers& nums, const FrequencyPoint& f);
ModeDecomposition stable_subspace(const PlanarShock& shock, const FrequencyPoint& f);

/// The forcing column r = df2(U1)^{-1} (z (f0(U1)-f0(U0)) + eta (f1(U1)-f1(U0))).
CVec4 forcing_vector(const ShockNumbers& nums, const FrequencyPoint& f);

struct LopatinskiiValue {
  Complex delta{};      // det [ b1 | b2 | b3 | r ]
  double scale = 1.0;   // product of column norms (Hadamard scale)
  Complex normalized() const { return delta / scale; }
};

/// Lopatinskii determinant with the fixed column convention
/// [ b1 | b2 | b3 | r ]; Delta = 0 iff r lies in E^s(z, eta) iff the
/// linearized RH system has a nonzero solution. The zero set is convention
/// independent, the value is not.
LopatinskiiValue lopatinskii(const ShockNumbers& nums, const FrequencyPoint& f);
LopatinskiiValue lopatinskii(const PlanarShock& shock, const FrequencyPoint& f);

/// Closed-form solution of the linearized RH system at (z, eta, chi) = (0, 1, 1)
/// for a weakly stable shock with ubar = -V, together with its coefficients
/// on the E^s(0,1) basis (alpha0, mu0, alpha_minus).
struct LinearizedRhSolution {
  double chi = 1.0;
  Vec4 u_dot{};   // (tau_dot, u_dot, v_dot, s_dot)
  Vec4 r{};       // df2(U1)^{-1} (f1(U1) - f1(U0)); u_dot = -r
  double alpha0 = 0.0;
  double mu0 = 0.0;
  double alpha_minus = 0.0;
  double sin_psi0 = 0.0;
  double cos_psi0 = 0.0;
  double linear_rh_residual = 0.0;  // scaled residual of the four equations
};

/// Throws NotWeaklyStableError if Delta(ubar, 0, 1) is not numerically zero.
LinearizedRhSolution solve_linearized_rh(const ShockNumbers& nums);
LinearizedRhSolution solve_linearized_rh(const PlanarShock& shock);

/// Rectangle in the open lower half plane (im_hi < 0).
struct FrequencyRect {
  double re_lo, re_hi;
  double im_lo, im_hi;
};

/// Number of zeros of Delta(ubar, . , eta) strictly inside the rectangle,
/// by the argument principle, with the construction's own coincidence zero
/// at z = -ubar eta - i |v1| eta discounted (the fixed-basis determinant
/// vanishes there for every shock; it is not a stability root).
int unstable_root_count(const ShockNumbers& nums, double eta, const FrequencyRect& rect);

/// The causal acoustic front angle of a supersonic state (u, v, c with
/// u^2 + v^2 > c^2): the branch with the smaller cos among the two
/// solutions of -u sin(psi) + v cos(psi) + c = 0.
struct AcousticAngle {
  double cos_psi = 0.0;
  double sin_psi = 0.0;
  double psi = 0.0;  // in [0, 2 pi)
};
AcousticAngle acoustic_angle(double u, double v, double c);

/// The rejected candidate of the same equation (larger cos).
AcousticAngle acoustic_angle_rejected(double u, double v, double c);

}  // namespace shockstem

#endif
