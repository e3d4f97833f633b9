#include "shockstem/weak_regime.hpp"

#include <cmath>
#include <limits>

namespace shockstem {

WeakSearchResult find_weak_regime(const EosSpec& eos, const UpstreamBox& box,
                                  const StrengthRange& range) {
  validate(eos);
  if (box.tau_samples < 1 || box.s_samples < 1 || !(box.tau_lo > 0.0) ||
      box.tau_hi < box.tau_lo || box.s_hi < box.s_lo)
    throw DomainError("find_weak_regime: empty or invalid upstream box");
  if (range.samples < 1 || !(range.ratio_lo > 0.0) || !(range.ratio_hi < 1.0) ||
      !(range.ratio_lo <= range.ratio_hi))
    throw DomainError("find_weak_regime: strength range must satisfy 0 < lo <= hi < 1");

  WeakSearchResult result;
  result.best_margin = -std::numeric_limits<double>::infinity();

  const auto sample = [](double lo, double hi, int n, int i) {
    return n > 1 ? lo + (hi - lo) * i / (n - 1.0) : 0.5 * (lo + hi);
  };

  for (int it = 0; it < box.tau_samples; ++it) {
    const double tau0 = sample(box.tau_lo, box.tau_hi, box.tau_samples, it);
    for (int is = 0; is < box.s_samples; ++is) {
      const double s0 = sample(box.s_lo, box.s_hi, box.s_samples, is);
      for (int ik = 0; ik < range.samples; ++ik) {
        const double ratio = sample(range.ratio_lo, range.ratio_hi, range.samples, ik);
        PlanarShock shock;
        try {
          shock = solve_downstream(eos, FluidState{tau0, 0.0, -1.0, s0},
                                   ShockStrength::downstream_tau(ratio * tau0));
        } catch (const Error&) {
          continue;  // past the maximum compression or otherwise inadmissible
        }
        const ThermoPoint dn = thermo_eval(eos, shock.downstream.tau, shock.downstream.s);
        const double m1 = shock.mach_downstream;
        const double x = m1 * m1 * shock.compression_ratio;
        const double lo = 1.0 / (1.0 + dn.gamma_g);
        const double hi = (1.0 + m1) / dn.gamma_g;
        const double margin = std::min(x - lo, hi - x);
        if (margin > result.best_margin) {
          result.best_margin = margin;
          result.best_m1sq_nu = x;
          result.window_lo_at_best = lo;
          result.window_hi_at_best = hi;
        }
        if (margin > 0.0 && !result.shock) {
          result.shock = shock;
          return result;  // first hit, deterministic sweep order
        }
      }
    }
  }
  return result;
}

}  // namespace shockstem
