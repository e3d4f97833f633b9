#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "fixtures.hpp"

using namespace shockstem;
using namespace shockstem::testing;

namespace {

// interior symbol of the linearized Euler equations behind the shock; every
// E_0 / E_- basis vector must be annihilated at its own omega
CMat4 interior_symbol(const ShockNumbers& n, Complex z, double eta, Complex omega) {
  const Complex w = z + n.ubar * eta + n.v1 * omega;
  CMat4 sym = CMat4::Zero();
  sym(0, 0) = w;
  sym(0, 1) = -n.tau1 * eta;
  sym(0, 2) = -n.tau1 * omega;
  sym(1, 0) = -n.c1sq / n.tau1 * eta;
  sym(1, 1) = w;
  sym(1, 3) = n.gamma1 * n.T1 * eta;
  sym(2, 0) = -n.c1sq / n.tau1 * omega;
  sym(2, 2) = w;
  sym(2, 3) = n.gamma1 * n.T1 * omega;
  sym(3, 3) = w;
  return sym;
}

double quadratic_residual(const ShockNumbers& n, Complex z, double eta, Complex omega) {
  const Complex w = z + n.ubar * eta;
  const Complex lhs = (w + n.v1 * omega) * (w + n.v1 * omega);
  const Complex rhs = n.c1sq * (eta * eta + omega * omega);
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

}  // namespace

TEST_CASE("eigenmodes at normal incidence (eta = 0)") {
  const PlanarShock shock = weak_shock_critical();
  const ShockNumbers n = reduce(shock);
  const Complex z(0.0, -n.c1);
  const ModeDecomposition m = eigenmodes(n, FrequencyPoint{z, 0.0});
  CHECK(std::abs(z + n.v1 * m.omega0) < 1e-13 * std::abs(z));
  CHECK(quadratic_residual(n, z, 0.0, m.omega_minus) < 1e-12);
  CHECK(m.omega_minus.imag() < 0.0);
  // the decaying acoustic root is -z/(v1 - c1)
  const Complex expected = -z / (n.v1 - n.c1);
  CHECK(std::abs(m.omega_minus - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("omega_-(0,1) matches the hyperbolic-point formula") {
  const PlanarShock shock = weak_shock_critical();
  const ShockNumbers n = reduce(shock);
  REQUIRE(n.ubar * n.ubar + n.v1 * n.v1 > n.c1sq);
  const ModeDecomposition m = eigenmodes(n, FrequencyPoint{Complex(0.0), 1.0});
  // sgn(ubar) = -1 here
  const double root = std::sqrt(n.ubar * n.ubar + n.v1 * n.v1 - n.c1sq);
  const double expected = (n.v1 * n.ubar - n.c1 * root) / (n.c1sq - n.v1 * n.v1);
  CHECK(m.omega_minus.real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(m.omega_minus.imag()) < 1e-12 * std::abs(expected));
  CHECK(m.hyperbolic);
}

TEST_CASE("omega_- scales homogeneously with the same branch") {
  const ShockNumbers n = reduce(weak_shock_critical());
  const std::vector<FrequencyPoint> points = {
      {Complex(0.0), 1.0},                 // hyperbolic real point
      {Complex(0.3 * n.c1, 0.0), 1.0},     // another real point
      {Complex(0.4 * n.c1, -0.7 * n.c1), 1.0},  // interior of the lower half plane
  };
  for (const FrequencyPoint& f : points) {
    const Complex base = eigenmodes(n, f).omega_minus;
    for (double s : {2.0, 10.0}) {
      const Complex scaled =
          eigenmodes(n, FrequencyPoint{s * f.z, s * f.eta}).omega_minus;
      CHECK(std::abs(scaled - s * base) < 1e-9 * std::abs(s * base));
    }
  }
}

TEST_CASE("branch continuity along the real axis") {
  const ShockNumbers n = reduce(weak_shock_critical());
  const double a = std::sqrt(n.c1sq - n.v1 * n.v1);
  // walk a real segment inside the hyperbolic region (w = z + ubar)
  for (double z = -n.ubar + 1.3 * a; z < -n.ubar + 2.5 * a; z += 0.05 * a) {
    const ModeDecomposition m = eigenmodes(n, FrequencyPoint{Complex(z, 0.0), 1.0});
    CHECK(std::abs(m.omega_minus.imag()) < 1e-10);  // exactly real after the probe settles
    CHECK(quadratic_residual(n, Complex(z, 0.0), 1.0, m.omega_minus) < 1e-12);
    // locally Lipschitz in z away from glancing points
    const double dz = 1e-7 * a;
    const ModeDecomposition near = eigenmodes(n, FrequencyPoint{Complex(z + dz, 0.0), 1.0});
    CHECK(std::abs(near.omega_minus - m.omega_minus) < 1e-4 * (std::abs(m.omega_minus) + 1.0));
  }
}

TEST_CASE("glancing and coincidence frequencies raise their own errors") {
  // synthetic numbers make the glancing point exactly representable:
  // c1 = 1, M1 = 0.6 gives a = 0.8
  const ShockNumbers n = synthetic_numbers(0.6, 1.0, 0.5, 1.0, 0.0);
  CHECK_THROWS_AS(eigenmodes(n, FrequencyPoint{Complex(0.8, 0.0), 1.0}), GlancingError);
  // omega_0 = omega_- at z = -i |v1|
  CHECK_THROWS_AS(eigenmodes(n, FrequencyPoint{Complex(0.0, -0.6), 1.0}), CoincidenceError);
  CHECK_THROWS_AS(eigenmodes(n, FrequencyPoint{Complex(0.0), 0.0}), DomainError);
}

TEST_CASE("stable subspace bases") {
  const ShockNumbers n = reduce(weak_shock_critical());
  SUBCASE("at (0,1) the span reduces to the stationary form") {
    const ModeDecomposition m = stable_subspace(n, FrequencyPoint{Complex(0.0), 1.0});
    // first E0 vector is collinear with (0, ubar, v1, 0)
    const CVec4 b = m.basis_e0[0];
    CHECK(std::abs(b[0]) == 0.0);
    CHECK(std::abs(b[3]) == 0.0);
    CHECK(std::abs(b[1] * n.v1 - b[2] * n.ubar) < 1e-13 * (std::abs(n.ubar) + std::abs(n.v1)));
    // second E0 vector is exactly (Gamma1 T1 tau1, 0, 0, c1^2)
    CHECK(m.basis_e0[1][0].real() == doctest::Approx(n.gamma1 * n.T1 * n.tau1).epsilon(1e-14));
    CHECK(m.basis_e0[1][3].real() == doctest::Approx(n.c1sq).epsilon(1e-14));
    // E- vector is collinear with (tau1, c1 sin psi0, -c1 cos psi0, 0)
    const AcousticAngle psi0 = acoustic_angle(n.ubar, n.v1, n.c1);
    const CVec4 em = m.basis_eminus / (m.basis_eminus[0] / n.tau1);
    CHECK(em[1].real() == doctest::Approx(n.c1 * psi0.sin_psi).epsilon(1e-10));
    CHECK(em[2].real() == doctest::Approx(-n.c1 * psi0.cos_psi).epsilon(1e-10));
  }
  SUBCASE("rank three across a frequency grid") {
    for (double re : {-2.0, -0.7, 0.0, 0.9, 2.3}) {
      for (double im : {0.0, -0.4, -1.6}) {
        const FrequencyPoint f{Complex(re * n.c1, im * n.c1), 1.0};
        ModeDecomposition m;
        try {
          m = stable_subspace(n, f);
        } catch (const Error&) {
          continue;  // glancing/coincidence points are excluded by contract
        }
        Eigen::Matrix<Complex, 4, 3> basis;
        basis.col(0) = m.basis_e0[0];
        basis.col(1) = m.basis_e0[1];
        basis.col(2) = m.basis_eminus;
        Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, 3>> svd(basis);
        CHECK(svd.singularValues()[2] > 1e-8 * svd.singularValues()[0]);
      }
    }
  }
  SUBCASE("each basis vector is annihilated by the interior symbol") {
    for (double re : {-1.5, 0.0, 1.1}) {
      for (double im : {-0.3, -1.2}) {
        const FrequencyPoint f{Complex(re * n.c1, im * n.c1), 1.0};
        const ModeDecomposition m = stable_subspace(n, f);
        const double scale = n.c1sq + n.gamma1 * n.T1 * n.tau1;
        CHECK((interior_symbol(n, f.z, f.eta, m.omega0) * m.basis_e0[0]).norm() <
              1e-10 * scale * m.basis_e0[0].norm());
        CHECK((interior_symbol(n, f.z, f.eta, m.omega0) * m.basis_e0[1]).norm() <
              1e-10 * scale * m.basis_e0[1].norm());
        CHECK((interior_symbol(n, f.z, f.eta, m.omega_minus) * m.basis_eminus).norm() <
              1e-10 * scale * m.basis_eminus.norm());
      }
    }
  }
}

TEST_CASE("Lopatinskii determinant zeros and floors") {
  SUBCASE("weak shock with ubar = -V vanishes at (0,1)") {
    const LopatinskiiValue v = lopatinskii(weak_shock_critical(), FrequencyPoint{Complex(0.0), 1.0});
    CHECK(std::abs(v.normalized()) < 1e-8);
  }
  SUBCASE("uniform ideal-gas shock stays away from zero on the real line") {
    const ShockNumbers n = reduce(mach2_shock());
    double floor = 1e30;
    for (int i = 0; i <= 400; ++i) {
      const double z = -3.0 * n.c1 + 6.0 * n.c1 * i / 400.0;
      try {
        floor = std::min(floor,
                         std::abs(lopatinskii(n, FrequencyPoint{Complex(z, 0.0), 1.0}).normalized()));
      } catch (const Error&) {
      }
    }
    CHECK(floor > 1e-3);
  }
}

TEST_CASE("Delta is homogeneous of degree three") {
  const ShockNumbers n = reduce(weak_shock_critical());
  for (double re : {0.2, 0.45, -0.8, 1.7}) {
    const FrequencyPoint f{Complex(re * n.c1, 0.0), 1.0};
    ModeDecomposition probe;
    try {
      probe = eigenmodes(n, f);
    } catch (const Error&) {
      continue;
    }
    if (!probe.hyperbolic) continue;
    // stay away from the determinant's own zeros, where the relative
    // comparison is pure noise
    if (std::abs(lopatinskii(n, f).normalized()) < 1e-6) continue;
    const Complex base = lopatinskii(n, f).delta;
    for (double s : {2.0, 10.0}) {
      const Complex scaled = lopatinskii(n, FrequencyPoint{s * f.z, s * f.eta}).delta;
      CHECK(std::abs(scaled - s * s * s * base) < 1e-9 * std::abs(s * s * s * base));
    }
  }
}

TEST_CASE("Galilean shift moves the zero set rigidly") {
  const PlanarShock base = weak_shock();  // ubar = 0
  const double v_crit = critical_velocity(base);
  const ShockNumbers n0 = reduce(base);
  const double span = 2.0 * v_crit;
  const ScanResult roots0 = scan_real_roots(n0, 1.0, -span, span, 1501);
  REQUIRE(roots0.roots.size() == 2);

  for (double ubar : {-0.4 * v_crit, -v_crit, -1.5 * v_crit}) {
    const ShockNumbers ns = reduce(galilean_shift(base, ubar));
    const ScanResult roots = scan_real_roots(ns, 1.0, -span - ubar, span - ubar, 1501);
    REQUIRE(roots.roots.size() == roots0.roots.size());
    for (std::size_t k = 0; k < roots.roots.size(); ++k) {
      // zero sets coincide after the shift z -> z + ubar eta
      CHECK(std::abs(roots.roots[k] + ubar - roots0.roots[k]) < 1e-9 * (1.0 + v_crit));
    }
    // the two conventions differ by a smooth nonvanishing factor; sample it
    for (double z : {roots0.roots[0] + 0.3 * v_crit, roots0.roots[1] - 0.2 * v_crit}) {
      const Complex shifted = lopatinskii(ns, FrequencyPoint{Complex(z - ubar, 0.0), 1.0}).delta;
      const Complex original = lopatinskii(n0, FrequencyPoint{Complex(z, 0.0), 1.0}).delta;
      const Complex ratio = shifted / original;
      CHECK(std::isfinite(std::abs(ratio)));
      CHECK(std::abs(ratio) > 1e-6);
    }
  }
}

TEST_CASE("closed-form linearized RH solution") {
  const PlanarShock shock = weak_shock_critical();
  const ShockNumbers n = reduce(shock);
  const LinearizedRhSolution sol = solve_linearized_rh(n);

  SUBCASE("u_dot equals v1 - v0 exactly") {
    CHECK(sol.u_dot[1] == n.v1 - n.v0);
  }
  SUBCASE("the four linearized RH equations hold") {
    CHECK(sol.linear_rh_residual < 1e-12);
  }
  SUBCASE("u_dot is the negated forcing vector") {
    CHECK((sol.u_dot + sol.r).cwiseAbs().maxCoeff() < 1e-11 * sol.u_dot.cwiseAbs().maxCoeff());
  }
  SUBCASE("both coefficient routes agree to 1e-12") {
    const double beta = sol.cos_psi0;
    const double a0 = alpha0_closed(n.m1(), n.nu(), beta);
    const double am = alpha_minus_closed(n.m1(), n.nu(), beta);
    CHECK(sol.alpha0 == doctest::Approx(a0).epsilon(1e-12));
    CHECK(sol.alpha_minus == doctest::Approx(am).epsilon(1e-12));
  }
  SUBCASE("the E^s decomposition reconstructs u_dot") {
    const Vec4 rebuilt = sol.alpha0 * Vec4(0.0, n.ubar, n.v1, 0.0) +
                         sol.mu0 * Vec4(n.gamma1 * n.T1 * n.tau1, 0.0, 0.0, n.c1sq) +
                         sol.alpha_minus *
                             Vec4(n.tau1, n.c1 * sol.sin_psi0, -n.c1 * sol.cos_psi0, 0.0);
    CHECK((rebuilt - sol.u_dot).cwiseAbs().maxCoeff() <
          1e-12 * sol.u_dot.cwiseAbs().maxCoeff());
  }
  SUBCASE("mu0 = s_dot / c1^2") {
    CHECK(sol.mu0 == sol.u_dot[3] / n.c1sq);
  }
}

TEST_CASE("solve_linearized_rh rejects shocks without the critical velocity") {
  CHECK_THROWS_AS(solve_linearized_rh(mach2_shock()), NotWeaklyStableError);
  CHECK_THROWS_AS(solve_linearized_rh(weak_shock()), NotWeaklyStableError);  // ubar = 0
}

TEST_CASE("argument-principle count of unstable roots") {
  const FrequencyRect rect{-3.0, 3.0, -2.0, -1e-3};
  SUBCASE("uniform regime has none") {
    CHECK(unstable_root_count(synthetic_numbers(0.5, 0.4, 1.0), 1.0, rect) == 0);
  }
  SUBCASE("weak regime has none strictly inside the open half plane") {
    CHECK(unstable_root_count(synthetic_numbers(0.8, 5.0, 0.5), 1.0, rect) == 0);
  }
  SUBCASE("violent regime has at least one") {
    CHECK(unstable_root_count(synthetic_numbers(0.8, 10.0, 0.5), 1.0, rect) >= 1);
  }
  SUBCASE("rectangles touching the real axis are rejected") {
    CHECK_THROWS_AS(unstable_root_count(synthetic_numbers(0.5, 0.4, 1.0), 1.0,
                                        FrequencyRect{-1.0, 1.0, -1.0, 0.0}),
                    DomainError);
  }
}
