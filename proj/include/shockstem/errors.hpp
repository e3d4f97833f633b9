#ifndef SHOCKSTEM_ERRORS_HPP
#define SHOCKSTEM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace shockstem {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside the physical or EOS domain (tau <= 0, a Bethe-Weyl
/// inequality fails at the queried point, empty ranges, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A matrix that must be invertible is numerically singular.
struct SingularMatrixError : Error {
  using Error::Error;
};

/// An iterative solve did not reach its tolerance within the iteration cap.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A discontinuity violates the Lax shock inequalities (zero-strength or
/// expansion shock requested).
struct AdmissibilityError : Error {
  using Error::Error;
};

/// The two acoustic roots collide at a real frequency; the branch of
/// omega_- is undefined pointwise there.
struct GlancingError : Error {
  using Error::Error;
};

/// omega_0 and omega_- coincide; the plain E_0 + E_- decomposition of the
/// stable subspace degenerates at such frequencies.
struct CoincidenceError : Error {
  using Error::Error;
};

/// Requested an operation that needs Delta(ubar,0,1) = 0 on a shock whose
/// determinant does not vanish there.
struct NotWeaklyStableError : Error {
  using Error::Error;
};

/// Neither root of the critical-velocity quartic satisfies the
/// characterization (i)-(iii); signals inconsistent classification.
struct NoAdmissibleRootError : Error {
  using Error::Error;
};

/// Both leading coefficients of the critical-velocity quartic vanish.
struct DegenerateQuarticError : Error {
  using Error::Error;
};

/// The quadratic for Phi has no root inside (M1, 1).
struct NoRootInIntervalError : Error {
  using Error::Error;
};

/// An input state lies outside the trust region around the reference state.
struct SeedTooFarError : Error {
  using Error::Error;
};

/// A converged shock-3 angle landed nearer to the rejected candidate branch
/// than to the causal one.
struct BranchJumpError : Error {
  using Error::Error;
};

/// A constructed object violates one or more of its invariants; carries the
/// full list of failed checks.
struct ValidationError : Error {
  explicit ValidationError(std::string what_arg, std::vector<std::string> failed = {})
      : Error(std::move(what_arg)), failures(std::move(failed)) {}
  std::vector<std::string> failures;
};

}  // namespace shockstem

#endif
