#include "shockstem/eos.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace shockstem {

namespace {

struct EnergyDerivatives {
  double e, e_tau, e_s, e_tautau, e_stau, e_tautautau;
};

EnergyDerivatives evaluate(const IdealPolytropicEos& eos, double tau, double s) {
  const double g = eos.gamma;
  const double e = eos.e_ref * std::pow(tau / eos.tau_ref, 1.0 - g) *
                   std::exp((s - eos.s_ref) / eos.cv);
  EnergyDerivatives d;
  d.e = e;
  d.e_tau = (1.0 - g) * e / tau;
  d.e_s = e / eos.cv;
  d.e_tautau = (1.0 - g) * (-g) * e / (tau * tau);
  d.e_stau = (1.0 - g) * e / (tau * eos.cv);
  d.e_tautautau = (1.0 - g) * (-g) * (-g - 1.0) * e / (tau * tau * tau);
  return d;
}

EnergyDerivatives evaluate(const ConstantGruneisenEos& eos, double tau, double s) {
  const double g0 = eos.gamma0;
  const double n = eos.cold_exponent;
  const double x = tau / eos.tau_ref;
  const double thermal = eos.thermal_amplitude * std::pow(x, -g0) *
                         std::exp((s - eos.s_ref) / eos.cv);
  const double cold_scale = eos.cold_stiffness / eos.tau_ref;
  EnergyDerivatives d;
  d.e = thermal + eos.cold_stiffness * std::pow(x, 1.0 - n) / (n - 1.0);
  d.e_tau = -g0 * thermal / tau - cold_scale * std::pow(x, -n);
  d.e_s = thermal / eos.cv;
  d.e_tautau = g0 * (g0 + 1.0) * thermal / (tau * tau) +
               n * cold_scale / eos.tau_ref * std::pow(x, -n - 1.0);
  d.e_stau = -g0 * thermal / (tau * eos.cv);
  d.e_tautautau = -g0 * (g0 + 1.0) * (g0 + 2.0) * thermal / (tau * tau * tau) -
                  n * (n + 1.0) * cold_scale / (eos.tau_ref * eos.tau_ref) *
                      std::pow(x, -n - 2.0);
  return d;
}

EnergyDerivatives evaluate(const EosSpec& eos, double tau, double s) {
  return std::visit([&](const auto& e) { return evaluate(e, tau, s); }, eos);
}

// signed margins; the inequality holds iff the margin is positive
std::array<double, 5> bethe_weyl_margins(const EnergyDerivatives& d) {
  return {-d.e_tau, d.e_s, d.e_tautau, -d.e_stau, -d.e_tautautau};
}

}  // namespace

void validate(const EosSpec& eos) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, IdealPolytropicEos>) {
          if (!(e.gamma > 1.0)) throw DomainError("ideal EOS requires gamma > 1");
          if (!(e.cv > 0.0)) throw DomainError("ideal EOS requires cv > 0");
          if (!(e.tau_ref > 0.0)) throw DomainError("ideal EOS requires tau_ref > 0");
          if (!(e.e_ref > 0.0)) throw DomainError("ideal EOS requires e_ref > 0");
        } else {
          if (!(e.gamma0 > 0.0)) throw DomainError("mie_gruneisen EOS requires gamma0 > 0");
          if (!(e.cv > 0.0)) throw DomainError("mie_gruneisen EOS requires cv > 0");
          if (!(e.cold_stiffness >= 0.0))
            throw DomainError("mie_gruneisen EOS requires cold_stiffness >= 0");
          if (!(e.cold_exponent > 1.0))
            throw DomainError("mie_gruneisen EOS requires cold_exponent > 1");
          if (!(e.tau_ref > 0.0)) throw DomainError("mie_gruneisen EOS requires tau_ref > 0");
        }
      },
      eos);
}

const char* bethe_weyl_name(BetheWeyl which) {
  switch (which) {
    case BetheWeyl::PressurePositive: return "p > 0";
    case BetheWeyl::TemperaturePositive: return "T > 0";
    case BetheWeyl::EnergyConvex: return "e_tautau > 0";
    case BetheWeyl::CrossDerivativeNegative: return "e_stau < 0";
    case BetheWeyl::ThirdDerivativeNegative: return "e_tautautau < 0";
  }
  return "?";
}

std::vector<std::string> bethe_weyl_violations(const EosSpec& eos, double tau, double s) {
  std::vector<std::string> out;
  if (!(tau > 0.0)) {
    out.emplace_back("tau > 0");
    return out;
  }
  const auto margins = bethe_weyl_margins(evaluate(eos, tau, s));
  for (int i = 0; i < 5; ++i) {
    if (!(margins[i] > 0.0)) out.emplace_back(bethe_weyl_name(static_cast<BetheWeyl>(i)));
  }
  return out;
}

ThermoPoint thermo_eval(const EosSpec& eos, double tau, double s) {
  if (!(tau > 0.0)) throw DomainError("thermo_eval: tau must be positive");
  const EnergyDerivatives d = evaluate(eos, tau, s);
  const auto margins = bethe_weyl_margins(d);
  for (int i = 0; i < 5; ++i) {
    if (!(margins[i] > 0.0)) {
      std::ostringstream msg;
      msg << "thermo_eval: Bethe-Weyl inequality '" << bethe_weyl_name(static_cast<BetheWeyl>(i))
          << "' fails at tau=" << tau << ", s=" << s;
      throw DomainError(msg.str());
    }
  }
  ThermoPoint t;
  t.tau = tau;
  t.s = s;
  t.e = d.e;
  t.p = -d.e_tau;
  t.T = d.e_s;
  t.c2 = tau * tau * d.e_tautau;
  t.c = std::sqrt(t.c2);
  t.gamma_g = -(tau / t.T) * d.e_stau;
  t.rho = 1.0 / tau;
  t.g = -0.5 * tau * d.e_tautautau / d.e_tautau;
  t.e_tautau = d.e_tautau;
  t.e_stau = d.e_stau;
  t.e_tautautau = d.e_tautautau;
  return t;
}

BetheWeylReport bethe_weyl_report(const EosSpec& eos, std::pair<double, double> tau_range,
                                  std::pair<double, double> s_range,
                                  std::pair<int, int> grid_counts) {
  validate(eos);
  if (!(tau_range.first > 0.0) || !(tau_range.second > tau_range.first))
    throw DomainError("bethe_weyl_report: tau range must be positive with tau_lo < tau_hi");
  if (!(s_range.second > s_range.first))
    throw DomainError("bethe_weyl_report: s range must satisfy s_lo < s_hi");
  if (grid_counts.first < 2 || grid_counts.second < 2)
    throw DomainError("bethe_weyl_report: grid counts must be at least 2 in each direction");

  BetheWeylReport report;
  for (int i = 0; i < 5; ++i) {
    report.inequalities[i].name = bethe_weyl_name(static_cast<BetheWeyl>(i));
    report.inequalities[i].worst_margin = std::numeric_limits<double>::infinity();
  }
  const int nt = grid_counts.first, ns = grid_counts.second;
  for (int it = 0; it < nt; ++it) {
    const double tau = tau_range.first +
                       (tau_range.second - tau_range.first) * it / (nt - 1.0);
    for (int is = 0; is < ns; ++is) {
      const double s = s_range.first + (s_range.second - s_range.first) * is / (ns - 1.0);
      const auto margins = bethe_weyl_margins(evaluate(eos, tau, s));
      ++report.grid_points;
      for (int i = 0; i < 5; ++i) {
        auto& entry = report.inequalities[i];
        if (!(margins[i] > 0.0)) ++entry.fail_count;
        if (margins[i] < entry.worst_margin) {
          entry.worst_margin = margins[i];
          entry.tau_at_worst = tau;
          entry.s_at_worst = s;
        }
      }
    }
  }
  report.pass = true;
  for (const auto& entry : report.inequalities) {
    if (entry.fail_count > 0) report.pass = false;
  }
  return report;
}

}  // namespace shockstem
