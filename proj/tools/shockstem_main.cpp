// Command-line front end: thermodynamics, shock construction, stability
// worksheets, Lopatinskii scans, Mach stem families and their asymptotics.
//
// Exit codes: 0 success, 2 validation failure, 3 convergence failure,
// 4 bad input or configuration.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "shockstem/json_io.hpp"
#include "shockstem/parallel.hpp"
#include "shockstem/weak_regime.hpp"

namespace ss = shockstem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitBadInput = 4;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

void print_row(const std::string& key, const std::string& value, const std::string& badge = "") {
  std::printf("  %-28s %-24s %s\n", key.c_str(), value.c_str(), badge.c_str());
}

const char* badge(bool ok) { return ok ? "[pass]" : "[FAIL]"; }

void write_artifact(const ss::Json& j, const std::string& path) {
  if (path.empty()) return;
  ss::save_json(j, path);
  std::printf("  wrote %s\n", path.c_str());
}

struct EpsGrid {
  std::vector<double> values;
};

// "a:b:n" -> n points from a to b, geometric when both endpoints share a
// sign, linear otherwise
EpsGrid parse_eps_grid(const std::string& text) {
  EpsGrid grid;
  double a = 0.0, b = 0.0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
    throw ss::DomainError("eps grid must have the form a:b:n with n >= 1");
  if (n == 1) {
    grid.values.push_back(a);
    return grid;
  }
  if (a * b > 0.0) {
    const double ratio = std::pow(b / a, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) grid.values.push_back(a * std::pow(ratio, i));
  } else {
    for (int i = 0; i < n; ++i) grid.values.push_back(a + (b - a) * i / (n - 1.0));
  }
  return grid;
}

struct ThermoArgs {
  std::string eos_path;
  double tau = 1.0, s = 0.0;
  bool bw = false;
  double bw_tau_lo = 0.1, bw_tau_hi = 10.0, bw_s_lo = -1.0, bw_s_hi = 1.0;
  int bw_nt = 16, bw_ns = 16;
  std::string out;
};

int run_thermo(const ThermoArgs& args) {
  const ss::EosSpec eos = ss::eos_from_json(ss::load_json(args.eos_path));
  const ss::ThermoPoint t = ss::thermo_eval(eos, args.tau, args.s);
  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  j["eos"] = ss::eos_to_json(eos);
  j["point"] = ss::Json{{"tau", t.tau}, {"s", t.s},       {"e", t.e},   {"p", t.p},
                        {"T", t.T},     {"c", t.c},       {"rho", t.rho},
                        {"gamma_gruneisen", t.gamma_g},   {"g", t.g}};
  std::printf("thermo point\n");
  print_row("tau", fmt(t.tau));
  print_row("s", fmt(t.s));
  print_row("e", fmt(t.e));
  print_row("p", fmt(t.p));
  print_row("T", fmt(t.T));
  print_row("c", fmt(t.c));
  print_row("Gruneisen", fmt(t.gamma_g));
  print_row("genuine nonlinearity", fmt(t.g));
  if (args.bw) {
    const ss::BetheWeylReport report = ss::bethe_weyl_report(
        eos, {args.bw_tau_lo, args.bw_tau_hi}, {args.bw_s_lo, args.bw_s_hi},
        {args.bw_nt, args.bw_ns});
    ss::Json bw;
    bw["pass"] = report.pass;
    bw["grid_points"] = report.grid_points;
    ss::Json entries = ss::Json::array();
    std::printf("Bethe-Weyl report (%ld grid points)\n", report.grid_points);
    for (const auto& entry : report.inequalities) {
      entries.push_back(ss::Json{{"name", entry.name},
                                 {"fail_count", entry.fail_count},
                                 {"worst_margin", entry.worst_margin},
                                 {"tau_at_worst", entry.tau_at_worst},
                                 {"s_at_worst", entry.s_at_worst}});
      print_row(entry.name, "worst margin " + fmt(entry.worst_margin),
                badge(entry.fail_count == 0));
    }
    bw["inequalities"] = std::move(entries);
    j["bethe_weyl"] = std::move(bw);
    if (!report.pass) {
      write_artifact(j, args.out);
      return kExitValidation;
    }
  }
  write_artifact(j, args.out);
  return kExitOk;
}

struct ShockArgs {
  std::string eos_path;
  double tau0 = 1.0, s0 = 0.0, u0 = 0.0;
  double tau1 = 0.0, mass_flux = 0.0, pressure_ratio = 0.0;
  bool critical_tangential = false;
  std::string out;
};

int run_shock_solve(const ShockArgs& args) {
  const ss::EosSpec eos = ss::eos_from_json(ss::load_json(args.eos_path));
  ss::ShockStrength strength;
  int picked = 0;
  if (args.tau1 > 0.0) {
    strength = ss::ShockStrength::downstream_tau(args.tau1);
    ++picked;
  }
  if (args.mass_flux > 0.0) {
    strength = ss::ShockStrength::mass_flux(args.mass_flux);
    ++picked;
  }
  if (args.pressure_ratio > 0.0) {
    strength = ss::ShockStrength::pressure_ratio(args.pressure_ratio);
    ++picked;
  }
  if (picked != 1)
    throw ss::DomainError("pick exactly one of --tau1, --mass-flux, --pressure-ratio");

  ss::PlanarShock shock =
      ss::solve_downstream(eos, ss::FluidState{args.tau0, args.u0, -1.0, args.s0}, strength);
  const ss::ThermoPoint dn = ss::thermo_eval(eos, shock.downstream.tau, shock.downstream.s);
  const ss::StabilityClass cls =
      ss::classify(shock.mach_downstream, dn.gamma_g, shock.compression_ratio);
  if (args.critical_tangential) {
    const double v = ss::solve_v(shock.mach_downstream, dn.gamma_g, shock.compression_ratio, dn.c);
    shock = ss::galilean_shift(shock, -v);
  }

  std::printf("planar shock\n");
  print_row("class", ss::to_string(cls.kind));
  print_row("M1", fmt(shock.mach_downstream));
  print_row("nu", fmt(shock.compression_ratio));
  print_row("M1^2 nu", fmt(shock.mach_downstream * shock.mach_downstream * shock.compression_ratio));
  print_row("mass flux", fmt(shock.mass_flux));
  print_row("tangential velocity", fmt(shock.tangential_velocity));
  print_row("p ratio", fmt(dn.p / ss::thermo_eval(eos, shock.upstream.tau, shock.upstream.s).p));
  print_row("RH residual",
            fmt(ss::rh_residual_scaled(eos, shock.upstream, shock.downstream, 0.0)), badge(true));
  write_artifact(ss::shock_to_json(shock), args.out);
  return kExitOk;
}

struct StabilityArgs {
  double m1 = 0.5, gamma1 = 1.0, nu = 1.0, c1 = 1.0;
  long sweep = 0;
  std::uint64_t seed = 20240817;
  std::string out;
};

int run_classify(const StabilityArgs& args) {
  const ss::StabilityClass cls = ss::classify(args.m1, args.gamma1, args.nu);
  std::printf("stability class\n");
  print_row("class", ss::to_string(cls.kind));
  print_row("margin lower", fmt(cls.margin_lower));
  print_row("margin upper", fmt(cls.margin_upper));
  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  j["inputs"] = ss::Json{{"m1", args.m1}, {"gamma1", args.gamma1}, {"nu", args.nu}};
  j["class"] = ss::to_string(cls.kind);
  j["margin_lower"] = cls.margin_lower;
  j["margin_upper"] = cls.margin_upper;
  write_artifact(j, args.out);
  return kExitOk;
}

int run_worksheet(const StabilityArgs& args, bool v_route, bool cstar_route) {
  const ss::WeakStabilityWorksheet sheet =
      ss::make_worksheet(args.m1, args.gamma1, args.nu, args.c1);
  std::printf("weak-stability worksheet\n");
  if (v_route) print_row("V", fmt(sheet.v_crit));
  if (cstar_route) {
    print_row("c*", fmt(sheet.c_star));
    print_row("Phi", fmt(sheet.phi));
    print_row("beta", fmt(sheet.beta));
  }
  print_row("k", fmt(sheet.k));
  print_row("y", fmt(sheet.y));
  print_row("Upsilon", fmt(sheet.upsilon));
  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  j["worksheet"] = ss::worksheet_to_json(sheet);
  write_artifact(j, args.out);
  return kExitOk;
}

int run_prop1(const StabilityArgs& args) {
  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  if (args.sweep <= 0) {
    const ss::EquivalenceReport report =
        ss::critical_velocity_equivalence(args.m1, args.gamma1, args.nu, args.c1);
    std::printf("critical-velocity equivalence (V vs c*)\n");
    print_row("V", fmt(report.v_crit));
    print_row("c*", fmt(report.c_star));
    print_row("relative gap", fmt(report.relative_gap), badge(report.pass));
    j["inputs"] = ss::Json{{"m1", args.m1}, {"gamma1", args.gamma1}, {"nu", args.nu},
                           {"c1", args.c1}};
    j["v_crit"] = report.v_crit;
    j["c_star"] = report.c_star;
    j["gap"] = report.relative_gap;
    j["pass"] = report.pass;
    write_artifact(j, args.out);
    return report.pass ? kExitOk : kExitValidation;
  }

  // seeded sweep over weak-regime triples, fanned out over the worker pool
  std::vector<std::array<double, 3>> triples(args.sweep);
  ss::Rng rng(args.seed);
  for (auto& t : triples) {
    const double m1 = rng.uniform(0.15, 0.92);
    const double g1 = rng.uniform(0.5, 15.0);
    const double lo = 1.0 / (1.0 + g1), hi = (1.0 + m1) / g1;
    const double x = lo + (hi - lo) * rng.uniform(0.02, 0.98);
    t = {m1, g1, x / (m1 * m1)};
  }
  std::vector<double> gaps(args.sweep);
  ss::parallel_for(args.sweep, [&](long i) {
    gaps[i] = ss::critical_velocity_equivalence(triples[i][0], triples[i][1], triples[i][2], 1.0)
                  .relative_gap;
  });
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const bool pass = sorted.back() < 1e-9;
  std::printf("equivalence sweep (%ld samples, seed %llu)\n", args.sweep,
              static_cast<unsigned long long>(args.seed));
  print_row("min gap", fmt(sorted.front()));
  print_row("median gap", fmt(median));
  print_row("max gap", fmt(sorted.back()), badge(pass));
  j["samples"] = args.sweep;
  j["seed"] = args.seed;
  j["min_gap"] = sorted.front();
  j["median_gap"] = median;
  j["max_gap"] = sorted.back();
  j["pass"] = pass;
  write_artifact(j, args.out);
  return pass ? kExitOk : kExitValidation;
}

struct ScanArgs {
  std::string shock_path;
  double eta = 1.0;
  double z_lo = 0.0, z_hi = 0.0;
  int grid = 801;
  bool zero_tangential = false;
  std::string out;
  std::string csv;
};

int run_scan(const ScanArgs& args) {
  ss::PlanarShock shock = ss::shock_from_json(ss::load_json(args.shock_path));
  ss::validate_shock(shock);
  if (args.zero_tangential) shock = ss::galilean_shift(shock, 0.0);
  const ss::ShockNumbers nums = ss::reduce(shock);

  double z_lo = args.z_lo, z_hi = args.z_hi;
  if (z_lo == 0.0 && z_hi == 0.0) {
    const double span = 3.0 * nums.c1 * std::abs(args.eta) + std::abs(nums.ubar * args.eta);
    z_lo = -span;
    z_hi = span;
  }
  const ss::ScanResult result = ss::scan_real_roots(nums, args.eta, z_lo, z_hi, args.grid);

  if (!args.csv.empty()) {
    std::FILE* f = std::fopen(args.csv.c_str(), "w");
    if (!f) throw ss::DomainError("cannot write '" + args.csv + "'");
    std::fprintf(f, "re_z,im_z,eta,re_delta,im_delta,normalized\n");
    for (int i = 0; i < args.grid; ++i) {
      const double z = z_lo + (z_hi - z_lo) * i / (args.grid - 1.0);
      try {
        const ss::LopatinskiiValue value =
            ss::lopatinskii(nums, ss::FrequencyPoint{ss::Complex(z, 0.0), args.eta});
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", z, 0.0, args.eta,
                     value.delta.real(), value.delta.imag(), std::abs(value.normalized()));
      } catch (const ss::Error&) {
        // glancing or coincidence point: leave it out of the table
      }
    }
    std::fclose(f);
    std::printf("  wrote %s\n", args.csv.c_str());
  }

  std::printf("Lopatinskii real-line scan (eta = %s, z in [%s, %s])\n", fmt(args.eta).c_str(),
              fmt(z_lo).c_str(), fmt(z_hi).c_str());
  if (result.roots.empty()) {
    print_row("roots", "none");
  } else {
    for (std::size_t i = 0; i < result.roots.size(); ++i)
      print_row("root " + std::to_string(i), fmt(result.roots[i]));
  }
  print_row("min |Delta|/scale", fmt(result.min_normalized));

  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  j["eta"] = args.eta;
  j["z_lo"] = z_lo;
  j["z_hi"] = z_hi;
  j["roots"] = result.roots;
  j["min_normalized"] = result.min_normalized;
  write_artifact(j, args.out);
  return kExitOk;
}

struct MachstemArgs {
  std::string shock_path;
  std::string eps_grid = "1e-4:1e-2:10";
  std::string out;
  std::string csv;
};

void write_family_csv(const std::string& path, const ss::EosSpec& eos,
                      const std::vector<ss::MachStemPattern>& patterns) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ss::DomainError("cannot write '" + path + "'");
  std::fprintf(f, "eps,theta,phi,psi,lambda,p0,p1,p2,p3\n");
  for (const auto& p : patterns) {
    const double p0 = ss::thermo_eval(eos, p.u0.tau, p.u0.s).p;
    const double p1 = ss::thermo_eval(eos, p.u1.tau, p.u1.s).p;
    const double p2 = ss::thermo_eval(eos, p.u2.tau, p.u2.s).p;
    const double p3 = ss::thermo_eval(eos, p.u3.tau, p.u3.s).p;
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.eps, p.theta,
                 p.phi, p.psi, p.lambda, p0, p1, p2, p3);
  }
  std::fclose(f);
  std::printf("  wrote %s\n", path.c_str());
}

void render_family(const std::vector<ss::MachStemPattern>& patterns) {
  if (patterns.empty()) {
    std::printf("  no patterns\n");
    return;
  }
  std::printf("  %-12s %-12s %-12s %-12s %-12s %s\n", "eps", "theta", "phi", "psi", "lambda",
              "badges");
  for (const auto& p : patterns) {
    std::printf("  %-12.6g %-12.8g %-12.8g %-12.8g %-12.6g rh<%.1e dp<%.1e\n", p.eps, p.theta,
                p.phi, p.psi, p.lambda,
                std::max(std::max(p.diag.rh_s1, p.diag.rh_s2), std::max(p.diag.rh_s3, p.diag.rh_cd)),
                p.diag.pressure_gap);
  }
}

int run_machstem_build(const MachstemArgs& args) {
  const ss::PlanarShock shock = ss::shock_from_json(ss::load_json(args.shock_path));
  ss::validate_shock(shock);
  const ss::MachStemProblem problem(shock.eos, shock);
  const EpsGrid grid = parse_eps_grid(args.eps_grid);

  const bool all_positive =
      std::all_of(grid.values.begin(), grid.values.end(), [](double e) { return e > 0.0; });

  ss::FamilyResult family;
  std::vector<std::vector<std::string>> failures_per_pattern;
  if (all_positive) {
    family = problem.continue_family(grid.values);
    for (const auto& p : family.patterns) failures_per_pattern.push_back({});
  } else {
    // off-contract grids (eps <= 0) are solved pointwise so the failed Lax
    // diagnostics can be reported
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      try {
        ss::MachStemPattern p =
            problem.solve_pattern_unvalidated(grid.values[i], shock.tangential_velocity);
        failures_per_pattern.push_back(problem.validation_failures(p));
        family.patterns.push_back(std::move(p));
        if (!failures_per_pattern.back().empty() && !family.failed_index) {
          family.failed_index = i;
          family.failure = "validation failed: " + failures_per_pattern.back().front();
        }
      } catch (const ss::Error& err) {
        family.failed_index = i;
        family.failure = err.what();
        break;
      }
    }
  }

  ss::Json j = ss::family_to_json(shock, family);
  for (std::size_t i = 0; i < failures_per_pattern.size(); ++i) {
    if (!failures_per_pattern[i].empty())
      j["patterns"][i]["validation_failures"] = failures_per_pattern[i];
  }
  std::printf("Mach stem family (%zu of %zu grid points)\n", family.patterns.size(),
              grid.values.size());
  render_family(family.patterns);
  for (std::size_t i = 0; i < failures_per_pattern.size(); ++i) {
    for (const auto& f : failures_per_pattern[i])
      std::printf("  eps=%g %s %s\n", family.patterns[i].eps, badge(false), f.c_str());
  }
  if (family.failed_index && family.patterns.size() <= *family.failed_index)
    std::printf("  grid point %zu failed: %s\n", *family.failed_index, family.failure.c_str());

  write_artifact(j, args.out);
  if (!args.csv.empty()) write_family_csv(args.csv, shock.eos, family.patterns);

  if (family.failed_index) {
    const bool validation = !all_positive || family.failure.rfind("solve_pattern: pattern", 0) == 0;
    return validation ? kExitValidation : kExitConvergence;
  }
  return kExitOk;
}

int run_machstem_verify(const std::string& path) {
  const ss::Json j = ss::load_json(path);
  const ss::PlanarShock shock = ss::shock_from_json(j.at("reference_shock"));
  ss::validate_shock(shock);
  const ss::MachStemProblem problem(shock.eos, shock);
  if (!j.contains("patterns") || !j.at("patterns").is_array())
    throw ss::DomainError("machstem verify: no 'patterns' array in " + path);

  std::size_t failed = 0;
  std::size_t index = 0;
  for (const auto& pj : j.at("patterns")) {
    ss::MachStemPattern p = ss::pattern_from_json(pj);
    p.diag = problem.diagnose(p.eps, p.u0, p.u1, p.u2, p.u3, p.phi, p.psi);
    const auto failures = problem.validation_failures(p);
    std::printf("pattern %zu (eps = %s) %s\n", index, fmt(p.eps).c_str(),
                badge(failures.empty()));
    for (const auto& f : failures) std::printf("    %s\n", f.c_str());
    if (!failures.empty()) ++failed;
    ++index;
  }
  if (index == 0) std::printf("  no patterns\n");
  std::printf("verified %zu pattern(s), %zu failed\n", index, failed);
  return failed == 0 ? kExitOk : kExitValidation;
}

struct AsymptoticsArgs {
  std::string shock_path;
  std::string out;
};

int run_asymptotics(const AsymptoticsArgs& args) {
  const ss::PlanarShock shock = ss::shock_from_json(ss::load_json(args.shock_path));
  ss::validate_shock(shock);
  const ss::MachStemProblem problem(shock.eos, shock);
  const ss::AsymptoticReport report = problem.asymptotic_checks();

  std::printf("asymptotic report\n");
  print_row("alpha0", fmt(report.alpha0));
  print_row("alpha0 (closed)", fmt(report.alpha0_closed));
  print_row("alpha-", fmt(report.alpha_minus));
  print_row("alpha- (closed)", fmt(report.alpha_minus_closed));
  print_row("mu0", fmt(report.mu0));
  print_row("G1", fmt(report.g1));
  print_row("lambda/eps limit", fmt(report.lambda_over_eps_limit),
            badge(report.lambda_over_eps_gap < 1e-6));
  print_row("u'(0)", fmt(report.u_prime0));
  print_row("Psi'(0) closed", fmt(report.psi_prime0_closed));
  print_row("Psi'(0) fd", fmt(report.psi_prime0_fd), badge(report.psi_prime0_gap < 1e-4));
  print_row("d2 delta closed", fmt(report.d2_delta_closed));
  print_row("d2 delta fd", fmt(report.d2_delta_fd), badge(report.d2_delta_gap < 1e-4));
  print_row("Omega0", fmt(report.omega0_factor), badge(report.omega0_factor > 0.0));
  print_row("Omega1", fmt(report.omega1_factor), badge(report.omega1_factor > 0.0));
  print_row("Lax S3 margin d/deps", fmt(report.lax_s3_up_derivative_fd),
            badge(report.lax_derivative_gap < 1e-4));

  ss::Json j;
  j["format_version"] = ss::kFormatVersion;
  j["report"] = ss::asymptotics_to_json(report);
  write_artifact(j, args.out);
  const bool pass = report.lambda_over_eps_gap < 1e-6 && report.psi_prime0_gap < 1e-4 &&
                    report.d2_delta_gap < 1e-4 && report.lax_derivative_gap < 1e-4 &&
                    report.omega0_factor > 0.0 && report.omega1_factor > 0.0;
  return pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shock stability and Mach stem toolbox"};
  app.require_subcommand(1);

  ThermoArgs thermo_args;
  CLI::App* thermo = app.add_subcommand("thermo", "evaluate an EOS point / Bethe-Weyl report");
  thermo->add_option("--eos", thermo_args.eos_path, "EOS JSON file")->required();
  thermo->add_option("--tau", thermo_args.tau, "specific volume");
  thermo->add_option("--s", thermo_args.s, "specific entropy");
  thermo->add_flag("--bw", thermo_args.bw, "run the Bethe-Weyl grid report");
  thermo->add_option("--bw-tau-lo", thermo_args.bw_tau_lo);
  thermo->add_option("--bw-tau-hi", thermo_args.bw_tau_hi);
  thermo->add_option("--bw-s-lo", thermo_args.bw_s_lo);
  thermo->add_option("--bw-s-hi", thermo_args.bw_s_hi);
  thermo->add_option("--bw-nt", thermo_args.bw_nt);
  thermo->add_option("--bw-ns", thermo_args.bw_ns);
  thermo->add_option("--out", thermo_args.out, "JSON artifact path");

  ShockArgs shock_args;
  CLI::App* shock = app.add_subcommand("shock", "planar shock construction");
  CLI::App* shock_solve = shock->add_subcommand("solve", "solve the downstream state");
  shock_solve->add_option("--eos", shock_args.eos_path)->required();
  shock_solve->add_option("--tau0", shock_args.tau0);
  shock_solve->add_option("--s0", shock_args.s0);
  shock_solve->add_option("--u0", shock_args.u0, "tangential velocity (<= 0)");
  shock_solve->add_option("--tau1", shock_args.tau1, "downstream specific volume");
  shock_solve->add_option("--mass-flux", shock_args.mass_flux);
  shock_solve->add_option("--pressure-ratio", shock_args.pressure_ratio);
  shock_solve->add_flag("--critical-tangential", shock_args.critical_tangential,
                        "shift the tangential velocity to -V");
  shock_solve->add_option("--out", shock_args.out);

  StabilityArgs stability_args;
  CLI::App* stability = app.add_subcommand("stability", "trichotomy and critical velocity");
  CLI::App* classify_cmd = stability->add_subcommand("classify", "uniform/weak/violent");
  CLI::App* v_cmd = stability->add_subcommand("v", "critical velocity V");
  CLI::App* cstar_cmd = stability->add_subcommand("cstar", "dual route to the critical velocity");
  CLI::App* prop1_cmd = stability->add_subcommand("prop1", "V vs c* equivalence");
  for (CLI::App* cmd : {classify_cmd, v_cmd, cstar_cmd, prop1_cmd}) {
    cmd->add_option("--m1", stability_args.m1)->required();
    cmd->add_option("--gamma1", stability_args.gamma1)->required();
    cmd->add_option("--nu", stability_args.nu)->required();
    cmd->add_option("--c1", stability_args.c1);
    cmd->add_option("--out", stability_args.out);
  }
  prop1_cmd->add_option("--sweep", stability_args.sweep, "sweep sample count");
  prop1_cmd->add_option("--seed", stability_args.seed, "sweep seed");

  ScanArgs scan_args;
  CLI::App* lopatinskii = app.add_subcommand("lopatinskii", "Lopatinskii determinant");
  CLI::App* scan = lopatinskii->add_subcommand("scan", "scan the real z line");
  scan->add_option("--shock", scan_args.shock_path)->required();
  scan->add_option("--eta", scan_args.eta);
  scan->add_option("--z-lo", scan_args.z_lo);
  scan->add_option("--z-hi", scan_args.z_hi);
  scan->add_option("--grid", scan_args.grid);
  scan->add_flag("--zero-tangential", scan_args.zero_tangential,
                 "shift to ubar = 0 before scanning");
  scan->add_option("--out", scan_args.out);
  scan->add_option("--csv", scan_args.csv);

  MachstemArgs machstem_args;
  CLI::App* machstem = app.add_subcommand("machstem", "Mach stem families");
  CLI::App* build = machstem->add_subcommand("build", "continue the family over an eps grid");
  build->add_option("--shock", machstem_args.shock_path)->required();
  build->add_option("--eps-grid", machstem_args.eps_grid, "a:b:n");
  build->add_option("--out", machstem_args.out);
  build->add_option("--csv", machstem_args.csv);
  std::string verify_path;
  CLI::App* verify = machstem->add_subcommand("verify", "re-check a family artifact");
  verify->add_option("family", verify_path, "family JSON file")->required();

  AsymptoticsArgs asym_args;
  CLI::App* asym = app.add_subcommand("asymptotics", "closed forms vs finite differences");
  asym->add_option("--shock", asym_args.shock_path)->required();
  asym->add_option("--out", asym_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (thermo->parsed()) return run_thermo(thermo_args);
    if (shock->parsed() && shock_solve->parsed()) return run_shock_solve(shock_args);
    if (classify_cmd->parsed()) return run_classify(stability_args);
    if (v_cmd->parsed()) return run_worksheet(stability_args, true, false);
    if (cstar_cmd->parsed()) return run_worksheet(stability_args, false, true);
    if (prop1_cmd->parsed()) return run_prop1(stability_args);
    if (scan->parsed()) return run_scan(scan_args);
    if (build->parsed()) return run_machstem_build(machstem_args);
    if (verify->parsed()) return run_machstem_verify(verify_path);
    if (asym->parsed()) return run_asymptotics(asym_args);
    std::fprintf(stderr, "no verb selected\n");
    return kExitBadInput;
  } catch (const ss::ValidationError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kExitValidation;
  } catch (const ss::AdmissibilityError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kExitValidation;
  } catch (const ss::NotWeaklyStableError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kExitValidation;
  } catch (const ss::DomainError& e) {
    std::fprintf(stderr, "bad input: %s\n", e.what());
    return kExitBadInput;
  } catch (const ss::Error& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConvergence;
  }
}
