#ifndef SHOCKSTEM_WEAK_REGIME_HPP
#define SHOCKSTEM_WEAK_REGIME_HPP

#include <optional>

#include "shockstem/shock.hpp"

namespace shockstem {

/// Rectangle of upstream (tau0, s0) samples.
struct UpstreamBox {
  double tau_lo = 1.0, tau_hi = 1.0;
  double s_lo = 0.0, s_hi = 0.0;
  int tau_samples = 3;
  int s_samples = 3;
};

/// Grid of shock strengths, parameterized by tau1/tau0 in (0, 1).
struct StrengthRange {
  double ratio_lo = 0.3, ratio_hi = 0.99;
  int samples = 64;
};

struct WeakSearchResult {
  std::optional<PlanarShock> shock;  // first candidate inside the window
  double best_margin = 0.0;    // max over sweep of min(x - lo, hi - x), x = M1^2 nu
  double best_m1sq_nu = 0.0;   // x at the best margin
  double window_lo_at_best = 0.0;
  double window_hi_at_best = 0.0;
};

/// Sweeps the upstream box and strength grid looking for a shock whose
/// downstream satisfies the strict weak-stability inequalities
///   1/(1+Gamma1) < M1^2 nu < (1+M1)/Gamma1,
/// with Bethe-Weyl and Lax checks passing. If none exists the result carries
/// the closest (negative) margin achieved. Strength grid points where the
/// Hugoniot solve fails (past the maximum compression of the EOS) are
/// skipped. Throws DomainError on empty box or range.
WeakSearchResult find_weak_regime(const EosSpec& eos, const UpstreamBox& box,
                                  const StrengthRange& range);

}  // namespace shockstem

#endif
