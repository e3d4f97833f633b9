#ifndef SHOCKSTEM_NUMERICS_HPP
#define SHOCKSTEM_NUMERICS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shockstem/errors.hpp"

namespace shockstem {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVec4 = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;
using Complex = std::complex<double>;

/// Wraps an angle into [0, 2*pi).
inline double wrap_two_pi(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  return a;
}

/// Signed distance between two angles, wrapped into (-pi, pi].
inline double angle_gap(double a, double b) {
  double d = std::fmod(a - b, 2.0 * M_PI);
  if (d > M_PI) d -= 2.0 * M_PI;
  if (d <= -M_PI) d += 2.0 * M_PI;
  return d;
}

/// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule on [0, 1]; n in {8, 16, 32, 64}
/// is what the averaged-Jacobian ladder uses, but any n >= 1 works.
const Quadrature& gauss_legendre(int n);

struct NewtonOptions {
  double tolerance = 1e-12;  // on the scaled residual max-norm
  int max_iterations = 50;
  double step_cap = 0.10;  // per-iteration relative step limit
  int max_backtracks = 30;
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // scaled max-norm at exit
};

/// Damped Newton on a small dense system. `residual` may throw DomainError
/// on an infeasible trial point; the line search treats that as a rejected
/// step. Residuals are scaled per component by `residual_scale`, steps are
/// capped at `step_cap` relative to `state_scale`.
template <int N, class ResidualFn, class JacobianFn>
NewtonReport newton_solve(ResidualFn&& residual, JacobianFn&& jacobian,
                          Eigen::Matrix<double, N, 1>& x,
                          const Eigen::Matrix<double, N, 1>& residual_scale,
                          const Eigen::Matrix<double, N, 1>& state_scale,
                          const NewtonOptions& opt = {}) {
  using VecN = Eigen::Matrix<double, N, 1>;
  const auto scaled_norm = [&](const VecN& r) {
    double m = 0.0;
    for (int i = 0; i < N; ++i) m = std::max(m, std::abs(r[i]) / residual_scale[i]);
    return m;
  };

  VecN r = residual(x);
  double nr = scaled_norm(r);
  NewtonReport rep;
  for (rep.iterations = 0; rep.iterations < opt.max_iterations; ++rep.iterations) {
    if (nr < opt.tolerance) break;
    Eigen::Matrix<double, N, N> jac = jacobian(x);
    VecN dx = jac.partialPivLu().solve(-r);
    if (!dx.allFinite()) throw SingularMatrixError("newton_solve: singular Jacobian");

    double rel = 0.0;
    for (int i = 0; i < N; ++i) rel = std::max(rel, std::abs(dx[i]) / state_scale[i]);
    if (rel > opt.step_cap) dx *= opt.step_cap / rel;

    double damp = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < opt.max_backtracks; ++bt) {
      VecN xt = x + damp * dx;
      try {
        VecN rt = residual(xt);
        double nt = scaled_norm(rt);
        if (nt < nr || nt < opt.tolerance) {
          x = xt;
          r = rt;
          nr = nt;
          accepted = true;
          break;
        }
      } catch (const DomainError&) {
        // trial point left the EOS domain; shrink the step
      }
      damp *= 0.5;
    }
    if (!accepted) break;  // stagnated
  }
  rep.residual = nr;
  rep.converged = nr < opt.tolerance;
  return rep;
}

/// Polynomial extrapolation of samples (x_k, y_k) to x = 0 (Neville tableau).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

/// Deterministic uniform generator (identical streams on every platform).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t next() {  // xorshift64*
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }
  std::uint64_t state_;
};

}  // namespace shockstem

#endif
