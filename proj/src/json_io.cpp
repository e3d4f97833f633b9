#include "shockstem/json_io.hpp"

#include <fstream>
#include <set>

namespace shockstem {

namespace {

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw DomainError(context + ": unknown key '" + item.key() + "'");
  }
}

double require_number(const Json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key)) throw DomainError(context + ": missing key '" + key + "'");
  if (!j.at(key).is_number()) throw DomainError(context + ": key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double optional_number(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw DomainError("key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

EosSpec eos_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw DomainError("eos: expected an object with a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  EosSpec spec;
  if (type == "ideal") {
    reject_unknown_keys(j, {"type", "gamma", "cv", "tau_ref", "s_ref", "e_ref"}, "eos(ideal)");
    IdealPolytropicEos eos;
    eos.gamma = require_number(j, "gamma", "eos(ideal)");
    eos.cv = optional_number(j, "cv", 1.0);
    eos.tau_ref = optional_number(j, "tau_ref", 1.0);
    eos.s_ref = optional_number(j, "s_ref", 0.0);
    eos.e_ref = optional_number(j, "e_ref", 1.0);
    spec = eos;
  } else if (type == "mie_gruneisen") {
    reject_unknown_keys(j,
                        {"type", "gamma0", "cv", "thermal_amplitude", "cold_stiffness",
                         "cold_exponent", "tau_ref", "s_ref"},
                        "eos(mie_gruneisen)");
    ConstantGruneisenEos eos;
    eos.gamma0 = require_number(j, "gamma0", "eos(mie_gruneisen)");
    eos.cv = optional_number(j, "cv", 1.0);
    eos.thermal_amplitude = require_number(j, "thermal_amplitude", "eos(mie_gruneisen)");
    eos.cold_stiffness = optional_number(j, "cold_stiffness", 0.0);
    eos.cold_exponent = optional_number(j, "cold_exponent", 2.0);
    eos.tau_ref = optional_number(j, "tau_ref", 1.0);
    eos.s_ref = optional_number(j, "s_ref", 0.0);
    spec = eos;
  } else {
    throw DomainError("eos: unknown type '" + type + "' (expected 'ideal' or 'mie_gruneisen')");
  }
  validate(spec);
  return spec;
}

Json eos_to_json(const EosSpec& eos) {
  Json j;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, IdealPolytropicEos>) {
          j["type"] = "ideal";
          j["gamma"] = e.gamma;
          j["cv"] = e.cv;
          j["tau_ref"] = e.tau_ref;
          j["s_ref"] = e.s_ref;
          j["e_ref"] = e.e_ref;
        } else {
          j["type"] = "mie_gruneisen";
          j["gamma0"] = e.gamma0;
          j["cv"] = e.cv;
          j["thermal_amplitude"] = e.thermal_amplitude;
          j["cold_stiffness"] = e.cold_stiffness;
          j["cold_exponent"] = e.cold_exponent;
          j["tau_ref"] = e.tau_ref;
          j["s_ref"] = e.s_ref;
        }
      },
      eos);
  return j;
}

FluidState state_from_json(const Json& j) {
  reject_unknown_keys(j, {"tau", "u", "v", "s"}, "state");
  FluidState state;
  state.tau = require_number(j, "tau", "state");
  state.u = require_number(j, "u", "state");
  state.v = require_number(j, "v", "state");
  state.s = require_number(j, "s", "state");
  return state;
}

Json state_to_json(const FluidState& state) {
  Json j;
  j["tau"] = state.tau;
  j["u"] = state.u;
  j["v"] = state.v;
  j["s"] = state.s;
  return j;
}

PlanarShock shock_from_json(const Json& j) {
  reject_unknown_keys(j,
                      {"format_version", "eos", "upstream", "downstream", "mass_flux",
                       "tangential_velocity", "mach_downstream", "compression_ratio"},
                      "shock");
  PlanarShock shock;
  shock.eos = eos_from_json(j.at("eos"));
  shock.upstream = state_from_json(j.at("upstream"));
  shock.downstream = state_from_json(j.at("downstream"));
  shock.mass_flux = require_number(j, "mass_flux", "shock");
  shock.tangential_velocity = require_number(j, "tangential_velocity", "shock");
  shock.mach_downstream = require_number(j, "mach_downstream", "shock");
  shock.compression_ratio = require_number(j, "compression_ratio", "shock");
  return shock;
}

Json shock_to_json(const PlanarShock& shock) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["eos"] = eos_to_json(shock.eos);
  j["upstream"] = state_to_json(shock.upstream);
  j["downstream"] = state_to_json(shock.downstream);
  j["mass_flux"] = shock.mass_flux;
  j["tangential_velocity"] = shock.tangential_velocity;
  j["mach_downstream"] = shock.mach_downstream;
  j["compression_ratio"] = shock.compression_ratio;
  return j;
}

Json pattern_to_json(const MachStemPattern& p) {
  Json j;
  j["eps"] = p.eps;
  j["theta"] = p.theta;
  j["phi"] = p.phi;
  j["psi"] = p.psi;
  j["phi0"] = p.phi0;
  j["psi0"] = p.psi0;
  j["lambda"] = p.lambda;
  j["states"] = Json{{"u0", state_to_json(p.u0)},
                     {"u1", state_to_json(p.u1)},
                     {"u2", state_to_json(p.u2)},
                     {"u3", state_to_json(p.u3)}};
  const PatternDiagnostics& d = p.diag;
  j["diagnostics"] = Json{{"rh_s1", d.rh_s1},
                          {"rh_s2", d.rh_s2},
                          {"rh_s3", d.rh_s3},
                          {"rh_cd", d.rh_cd},
                          {"pressure_gap", d.pressure_gap},
                          {"delta", d.delta},
                          {"delta_scaled", d.delta_scaled},
                          {"collinearity_gap", d.collinearity_gap},
                          {"causality_cd", d.causality_cd},
                          {"causality_cd_other", d.causality_cd_other},
                          {"causality_s3", d.causality_s3},
                          {"cd_normal_flow_2", d.cd_normal_flow_2},
                          {"cd_normal_flow_3", d.cd_normal_flow_3},
                          {"lax_s1_upstream", d.lax_s1_upstream},
                          {"lax_s1_downstream", d.lax_s1_downstream},
                          {"lax_s2_upstream", d.lax_s2_upstream},
                          {"lax_s2_downstream", d.lax_s2_downstream},
                          {"lax_s3_upstream", d.lax_s3_upstream},
                          {"lax_s3_downstream", d.lax_s3_downstream},
                          {"entropy_jump_s3", d.entropy_jump_s3},
                          {"pressure_ordering", d.pressure_ordering}};
  return j;
}

MachStemPattern pattern_from_json(const Json& j) {
  MachStemPattern p;
  p.eps = require_number(j, "eps", "pattern");
  p.theta = require_number(j, "theta", "pattern");
  p.phi = require_number(j, "phi", "pattern");
  p.psi = require_number(j, "psi", "pattern");
  p.phi0 = require_number(j, "phi0", "pattern");
  p.psi0 = require_number(j, "psi0", "pattern");
  p.lambda = require_number(j, "lambda", "pattern");
  const Json& s = j.at("states");
  p.u0 = state_from_json(s.at("u0"));
  p.u1 = state_from_json(s.at("u1"));
  p.u2 = state_from_json(s.at("u2"));
  p.u3 = state_from_json(s.at("u3"));
  const Json& d = j.at("diagnostics");
  p.diag.rh_s1 = optional_number(d, "rh_s1", 0.0);
  p.diag.rh_s2 = optional_number(d, "rh_s2", 0.0);
  p.diag.rh_s3 = optional_number(d, "rh_s3", 0.0);
  p.diag.rh_cd = optional_number(d, "rh_cd", 0.0);
  p.diag.pressure_gap = optional_number(d, "pressure_gap", 0.0);
  p.diag.delta = optional_number(d, "delta", 0.0);
  p.diag.delta_scaled = optional_number(d, "delta_scaled", 0.0);
  p.diag.collinearity_gap = optional_number(d, "collinearity_gap", 0.0);
  p.diag.causality_cd = optional_number(d, "causality_cd", 0.0);
  p.diag.causality_cd_other = optional_number(d, "causality_cd_other", 0.0);
  p.diag.causality_s3 = optional_number(d, "causality_s3", 0.0);
  p.diag.cd_normal_flow_2 = optional_number(d, "cd_normal_flow_2", 0.0);
  p.diag.cd_normal_flow_3 = optional_number(d, "cd_normal_flow_3", 0.0);
  p.diag.lax_s1_upstream = optional_number(d, "lax_s1_upstream", 0.0);
  p.diag.lax_s1_downstream = optional_number(d, "lax_s1_downstream", 0.0);
  p.diag.lax_s2_upstream = optional_number(d, "lax_s2_upstream", 0.0);
  p.diag.lax_s2_downstream = optional_number(d, "lax_s2_downstream", 0.0);
  p.diag.lax_s3_upstream = optional_number(d, "lax_s3_upstream", 0.0);
  p.diag.lax_s3_downstream = optional_number(d, "lax_s3_downstream", 0.0);
  p.diag.entropy_jump_s3 = optional_number(d, "entropy_jump_s3", 0.0);
  p.diag.pressure_ordering = d.contains("pressure_ordering") && d.at("pressure_ordering").get<bool>();
  return p;
}

Json family_to_json(const PlanarShock& reference, const FamilyResult& family) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["reference_shock"] = shock_to_json(reference);
  Json patterns = Json::array();
  for (const auto& p : family.patterns) patterns.push_back(pattern_to_json(p));
  j["patterns"] = std::move(patterns);
  if (family.failed_index) {
    j["failed_index"] = *family.failed_index;
    j["failure"] = family.failure;
  }
  return j;
}

Json worksheet_to_json(const WeakStabilityWorksheet& s) {
  Json j;
  j["m1"] = s.m1;
  j["gamma1"] = s.gamma1;
  j["nu"] = s.nu;
  j["c1"] = s.c1;
  j["v1"] = s.v1;
  j["k"] = s.k;
  j["phi"] = s.phi;
  j["y"] = s.y;
  j["beta"] = s.beta;
  j["upsilon"] = s.upsilon;
  j["c_star"] = s.c_star;
  j["v_crit"] = s.v_crit;
  return j;
}

Json asymptotics_to_json(const AsymptoticReport& r) {
  Json j;
  j["alpha0"] = r.alpha0;
  j["alpha_minus"] = r.alpha_minus;
  j["mu0"] = r.mu0;
  j["alpha0_closed"] = r.alpha0_closed;
  j["alpha_minus_closed"] = r.alpha_minus_closed;
  j["g1"] = r.g1;
  j["lambda_over_eps_limit"] = r.lambda_over_eps_limit;
  j["lambda_over_eps_gap"] = r.lambda_over_eps_gap;
  j["u_prime0"] = r.u_prime0;
  j["psi_prime0_closed"] = r.psi_prime0_closed;
  j["psi_prime0_fd"] = r.psi_prime0_fd;
  j["psi_prime0_gap"] = r.psi_prime0_gap;
  j["d2_delta_closed"] = r.d2_delta_closed;
  j["d2_delta_fd"] = r.d2_delta_fd;
  j["d2_delta_gap"] = r.d2_delta_gap;
  j["omega0_factor"] = r.omega0_factor;
  j["omega1_factor"] = r.omega1_factor;
  j["lax_s3_up_derivative_closed"] = r.lax_s3_up_derivative_closed;
  j["lax_s3_up_derivative_fd"] = r.lax_s3_up_derivative_fd;
  j["lax_s3_dn_derivative_closed"] = r.lax_s3_dn_derivative_closed;
  j["lax_s3_dn_derivative_fd"] = r.lax_s3_dn_derivative_fd;
  j["lax_derivative_gap"] = r.lax_derivative_gap;
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw DomainError("malformed JSON in '" + path + "': " + err.what());
  }
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace shockstem
