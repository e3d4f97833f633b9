#include "shockstem/normal_modes.hpp"

#include <cmath>
#include <sstream>

namespace shockstem {

namespace {

// Flux vectors of the two constant states from the reduced numbers alone.
Vec4 side_flux(const ShockNumbers& n, int axis, int side) {
  const double tau = side == 0 ? n.tau0 : n.tau1;
  const double v = side == 0 ? n.v0 : n.v1;
  const double p = side == 0 ? n.p0 : n.p1;
  const double e = side == 0 ? n.e0 : n.e1;
  const double u = n.ubar;
  const double rho = 1.0 / tau;
  const double total = 0.5 * rho * (u * u + v * v) + rho * e;
  switch (axis) {
    case 0: return Vec4(rho, rho * u, rho * v, total);
    case 1: return Vec4(rho * u, rho * u * u + p, rho * u * v, (total + p) * u);
    default: return Vec4(rho * v, rho * u * v, rho * v * v + p, (total + p) * v);
  }
}

Mat4 df2_downstream(const ShockNumbers& n) {
  const double tau = n.tau1, u = n.ubar, v = n.v1;
  const double rho = 1.0 / tau;
  Mat4 p_inv = Mat4::Zero();  // df0(U1)
  p_inv(0, 0) = -rho * rho;
  p_inv(1, 0) = -u * rho * rho;
  p_inv(1, 1) = rho;
  p_inv(2, 0) = -v * rho * rho;
  p_inv(2, 2) = rho;
  p_inv(3, 0) = -(0.5 * (u * u + v * v) + n.e1) * rho * rho - n.p1 * rho;
  p_inv(3, 1) = rho * u;
  p_inv(3, 2) = rho * v;
  p_inv(3, 3) = n.T1 / tau;
  Mat4 b2 = Mat4::Zero();
  b2(0, 0) = v;
  b2(0, 2) = -tau;
  b2(1, 1) = v;
  b2(2, 0) = -n.c1sq / tau;
  b2(2, 2) = v;
  b2(2, 3) = n.gamma1 * n.T1;
  b2(3, 3) = v;
  return p_inv * b2;
}

// Both roots of (v1^2 - c1^2) w^2 + 2 v1 W w + W^2 - c1^2 eta^2 = 0,
// with the numerically stable two-branch split.
std::pair<Complex, Complex> acoustic_roots(const ShockNumbers& n, Complex w_shift, double eta) {
  const double a = n.v1 * n.v1 - n.c1sq;
  const Complex b = 2.0 * n.v1 * w_shift;
  const Complex c = w_shift * w_shift - n.c1sq * eta * eta;
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const double align = b.real() * disc.real() + b.imag() * disc.imag();
  const Complex q = align >= 0.0 ? -0.5 * (b + disc) : -0.5 * (b - disc);
  if (std::abs(q) == 0.0) return {Complex(0.0), Complex(0.0)};
  return {q / a, c / q};
}

Complex omega_minus_lower_half(const ShockNumbers& n, Complex z, double eta) {
  const Complex w = z + n.ubar * eta;
  auto [r1, r2] = acoustic_roots(n, w, eta);
  return r1.imag() < r2.imag() ? r1 : r2;  // exactly one decays for Im z < 0
}

// Continuous extension of omega_- to real z through probes z - i gamma,
// gamma halved until two successive probes agree.
Complex omega_minus(const ShockNumbers& n, Complex z, double eta) {
  if (z.imag() < 0.0) return omega_minus_lower_half(n, z, eta);

  const double omega_scale = (std::abs(z + n.ubar * eta) + n.c1 * std::abs(eta)) / n.c1;
  {
    // the root gap scales like the square root of the discriminant, so
    // rounding alone separates exactly-glancing roots by ~1e-8; the collision
    // tolerance has to sit above that
    const Complex w = z + n.ubar * eta;
    auto [r1, r2] = acoustic_roots(n, w, eta);
    if (std::abs(r1 - r2) <= 1e-7 * (std::abs(r1) + std::abs(r2) + omega_scale))
      throw GlancingError("omega_minus: acoustic roots collide at a real frequency");
  }
  double gamma = 1e-8 * std::max(std::abs(z) + std::abs(n.ubar * eta), n.c1 * std::abs(eta));
  Complex prev = omega_minus_lower_half(n, z - Complex(0.0, gamma), eta);
  for (int k = 0; k < 60; ++k) {
    gamma *= 0.5;
    Complex cur = omega_minus_lower_half(n, z - Complex(0.0, gamma), eta);
    if (std::abs(cur - prev) <= 1e-10 * std::max(std::abs(cur), omega_scale)) {
      // polish onto the exact root at the real frequency; in the hyperbolic
      // region this removes the imaginary residue left by the finite probe
      const Complex w = z + n.ubar * eta;
      const double a = n.v1 * n.v1 - n.c1sq;
      for (int it = 0; it < 4; ++it) {
        const Complex res = a * cur * cur + 2.0 * n.v1 * w * cur + w * w - n.c1sq * eta * eta;
        const Complex dres = 2.0 * a * cur + 2.0 * n.v1 * w;
        if (std::abs(dres) == 0.0) break;
        cur -= res / dres;
      }
      return cur;
    }
    prev = cur;
  }
  throw GlancingError("omega_minus: probe continuation did not settle (glancing frequency)");
}

void fill_bases(const ShockNumbers& n, const FrequencyPoint& f, ModeDecomposition& m) {
  const Complex w = f.z + n.ubar * f.eta;
  m.basis_e0[0] = CVec4(Complex(0.0), m.omega0, Complex(-f.eta), Complex(0.0));
  m.basis_e0[1] = CVec4(Complex(n.gamma1 * n.T1 * n.tau1), Complex(0.0), Complex(0.0),
                        Complex(n.c1sq));
  m.basis_eminus = CVec4(n.tau1 * (w + n.v1 * m.omega_minus), Complex(n.c1sq * f.eta),
                         n.c1sq * m.omega_minus, Complex(0.0));
}

}  // namespace

ModeDecomposition eigenmodes(const ShockNumbers& nums, const FrequencyPoint& f) {
  if (f.z == Complex(0.0) && f.eta == 0.0)
    throw DomainError("eigenmodes: (z, eta) = (0, 0) is excluded");
  if (f.z.imag() > 0.0)
    throw DomainError("eigenmodes: the convention requires Im z <= 0");
  ModeDecomposition m;
  const Complex w = f.z + nums.ubar * f.eta;
  m.omega0 = -w / nums.v1;
  m.omega_minus = omega_minus(nums, f.z, f.eta);
  if (std::abs(m.omega0 - m.omega_minus) <=
      1e-10 * (std::abs(m.omega0) + std::abs(m.omega_minus)))
    throw CoincidenceError("eigenmodes: omega_0 and omega_- coincide at this frequency");
  if (f.z.imag() == 0.0) {
    const double wr = w.real();
    m.hyperbolic = wr * wr - (nums.c1sq - nums.v1 * nums.v1) * f.eta * f.eta > 0.0;
  }
  fill_bases(nums, f, m);
  return m;
}

ModeDecomposition eigenmodes(const PlanarShock& shock, const FrequencyPoint& f) {
  return eigenmodes(reduce(shock), f);
}

ModeDecomposition stable_subspace(const ShockNumbers& nums, const FrequencyPoint& f) {
  return eigenmodes(nums, f);
}

ModeDecomposition stable_subspace(const PlanarShock& shock, const FrequencyPoint& f) {
  return eigenmodes(reduce(shock), f);
}

CVec4 forcing_vector(const ShockNumbers& nums, const FrequencyPoint& f) {
  const Vec4 d0 = side_flux(nums, 0, 1) - side_flux(nums, 0, 0);
  const Vec4 d1 = side_flux(nums, 1, 1) - side_flux(nums, 1, 0);
  CVec4 rhs;
  for (int i = 0; i < 4; ++i) rhs[i] = f.z * d0[i] + f.eta * d1[i];
  const Mat4 df2 = df2_downstream(nums);
  return df2.cast<Complex>().partialPivLu().solve(rhs);
}

LopatinskiiValue lopatinskii(const ShockNumbers& nums, const FrequencyPoint& f) {
  const ModeDecomposition m = eigenmodes(nums, f);
  CMat4 cols;
  cols.col(0) = m.basis_e0[0];
  cols.col(1) = m.basis_e0[1];
  cols.col(2) = m.basis_eminus;
  cols.col(3) = forcing_vector(nums, f);
  LopatinskiiValue value;
  value.delta = cols.determinant();
  value.scale = 1.0;
  for (int k = 0; k < 4; ++k) value.scale *= cols.col(k).norm();
  if (!(value.scale > 0.0)) value.scale = 1.0;
  return value;
}

LopatinskiiValue lopatinskii(const PlanarShock& shock, const FrequencyPoint& f) {
  return lopatinskii(reduce(shock), f);
}

AcousticAngle acoustic_angle(double u, double v, double c) {
  const double d = u * u + v * v - c * c;
  if (!(d > 0.0)) throw DomainError("acoustic_angle: flow is not supersonic (u^2+v^2 <= c^2)");
  const double root = std::sqrt(d);
  const double q = u * u + v * v;
  AcousticAngle a;
  a.cos_psi = (-c * v + u * root) / q;
  a.sin_psi = (c * u + v * root) / q;
  a.psi = wrap_two_pi(std::atan2(a.sin_psi, a.cos_psi));
  return a;
}

AcousticAngle acoustic_angle_rejected(double u, double v, double c) {
  const double d = u * u + v * v - c * c;
  if (!(d > 0.0)) throw DomainError("acoustic_angle: flow is not supersonic (u^2+v^2 <= c^2)");
  const double root = std::sqrt(d);
  const double q = u * u + v * v;
  AcousticAngle a;
  a.cos_psi = (-c * v - u * root) / q;
  a.sin_psi = (c * u - v * root) / q;
  a.psi = wrap_two_pi(std::atan2(a.sin_psi, a.cos_psi));
  return a;
}

LinearizedRhSolution solve_linearized_rh(const ShockNumbers& n) {
  {
    const LopatinskiiValue at01 = lopatinskii(n, FrequencyPoint{Complex(0.0), 1.0});
    if (!(std::abs(at01.normalized()) < 1e-8)) {
      std::ostringstream msg;
      msg << "solve_linearized_rh: Delta(ubar,0,1) = " << std::abs(at01.normalized())
          << " does not vanish; the shock is not weakly stable with ubar = -V";
      throw NotWeaklyStableError(msg.str());
    }
  }
  const double tau0 = n.tau0, tau1 = n.tau1, v0 = n.v0, v1 = n.v1, ub = n.ubar;
  const double c1sq = n.c1sq;

  LinearizedRhSolution sol;
  sol.chi = 1.0;
  sol.u_dot[0] = (2.0 + n.gamma1 * (1.0 - tau0 / tau1)) * v1 * v1 * ub /
                 (v0 * (c1sq - v1 * v1)) * (tau1 - tau0);
  sol.u_dot[1] = v1 - v0;
  sol.u_dot[2] = ub / (c1sq - v1 * v1) * (tau1 / tau0 - 1.0) *
                 (c1sq + v1 * v1 + v1 * v1 * n.gamma1 * (1.0 - tau0 / tau1));
  sol.u_dot[3] = n.j * n.j / n.T1 * (ub / v0) * (tau1 - tau0) * (tau1 - tau0);

  const Vec4 d1 = side_flux(n, 1, 1) - side_flux(n, 1, 0);
  sol.r = df2_downstream(n).partialPivLu().solve(d1);

  const AcousticAngle psi0 = acoustic_angle(ub, v1, n.c1);
  sol.sin_psi0 = psi0.sin_psi;
  sol.cos_psi0 = psi0.cos_psi;
  sol.mu0 = sol.u_dot[3] / c1sq;
  sol.alpha0 = -(ub / v0) * (v1 - v0) * (v1 - v0) / (ub * ub + v1 * v1);
  sol.alpha_minus = (v1 - v0) / (n.c1 * psi0.sin_psi) * (v1 / v0) * (ub * ub + v0 * v1) /
                    (ub * ub + v1 * v1);

  // residual of the four linearized RH equations at (z, eta, chi) = (0, 1, 1)
  const double rho0 = 1.0 / tau0, rho1 = 1.0 / tau1;
  const double td = sol.u_dot[0], ud = sol.u_dot[1], vd = sol.u_dot[2], sd = sol.u_dot[3];
  const double r1 = -v1 / (tau1 * tau1) * td + vd / tau1 + (rho1 - rho0) * ub;
  const double r2 = v1 / tau1 * ud + (n.p1 - n.p0);
  const double r3 = -(v1 * v1 + c1sq) / (tau1 * tau1) * td + 2.0 * v1 / tau1 * vd +
                    n.gamma1 * n.T1 / tau1 * sd;
  const double r4 = -0.5 * (c1sq / (tau1 * tau1) * (tau1 - tau0) + n.p1 - n.p0) * td +
                    n.T1 * (1.0 + n.gamma1 * (tau1 - tau0) / (2.0 * tau1)) * sd;
  const double scale = std::abs(n.p1 - n.p0) + c1sq / tau1 * std::abs(td) + 1e-300;
  sol.linear_rh_residual =
      std::max(std::max(std::abs(r1) * tau1, std::abs(r2)) , std::max(std::abs(r3) * tau1, std::abs(r4))) /
      scale;
  return sol;
}

LinearizedRhSolution solve_linearized_rh(const PlanarShock& shock) {
  return solve_linearized_rh(reduce(shock));
}

int unstable_root_count(const ShockNumbers& nums, double eta, const FrequencyRect& rect) {
  if (!(rect.im_hi < 0.0))
    throw DomainError("unstable_root_count: rectangle must lie strictly below the real axis");
  if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi))
    throw DomainError("unstable_root_count: empty rectangle");
  if (eta == 0.0) throw DomainError("unstable_root_count: eta must be nonzero");

  // The fixed-basis determinant vanishes at the eigenmode-coincidence point
  // regardless of stability; it is discounted from the winding below.
  const Complex coincidence(-nums.ubar * eta, -std::abs(nums.v1 * eta));

  const auto delta_at = [&](Complex z) {
    return lopatinskii(nums, FrequencyPoint{z, eta}).delta;
  };

  const Complex corners[5] = {Complex(rect.re_lo, rect.im_lo), Complex(rect.re_hi, rect.im_lo),
                              Complex(rect.re_hi, rect.im_hi), Complex(rect.re_lo, rect.im_hi),
                              Complex(rect.re_lo, rect.im_lo)};
  // adaptive phase marching: split a step while it turns by more than pi/2
  struct Seg {
    Complex za, zb;
    Complex fa, fb;
    int depth;
  };
  double total_phase = 0.0;
  for (int edge = 0; edge < 4; ++edge) {
    const Complex a = corners[edge], b = corners[edge + 1];
    const int base = 64;
    std::vector<Seg> stack;
    Complex z_prev = a;
    Complex f_prev = delta_at(a);
    for (int k = 1; k <= base; ++k) {
      const Complex z = a + (b - a) * (static_cast<double>(k) / base);
      const Complex f = delta_at(z);
      stack.push_back({z_prev, z, f_prev, f, 0});
      z_prev = z;
      f_prev = f;
    }
    while (!stack.empty()) {
      const Seg s = stack.back();
      stack.pop_back();
      const double dphi = std::arg(s.fb / s.fa);
      if (std::abs(dphi) <= 0.5 * M_PI || s.depth >= 48) {
        total_phase += dphi;
        continue;
      }
      const Complex zm = 0.5 * (s.za + s.zb);
      const Complex fm = delta_at(zm);
      stack.push_back({zm, s.zb, fm, s.fb, s.depth + 1});
      stack.push_back({s.za, zm, s.fa, fm, s.depth + 1});
    }
  }
  const double winding = total_phase / (2.0 * M_PI);
  const long rounded = std::lround(winding);
  if (std::abs(winding - rounded) > 0.05)
    throw ConvergenceError("unstable_root_count: winding number did not settle on an integer");

  long count = rounded;
  if (coincidence.real() > rect.re_lo && coincidence.real() < rect.re_hi &&
      coincidence.imag() > rect.im_lo && coincidence.imag() < rect.im_hi)
    count -= 1;
  return static_cast<int>(count);
}

}  // namespace shockstem
