#pragma once

// Command-line front end: force | sweep | crit | sumrule | verify.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pemc/pemc.hpp"

namespace pemc::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, usage = 2, accuracy = 3, verification_failed = 4, io_error = 5 };

enum class Command { force, sweep, crit, sumrule, verify };
enum class OutputFormat { csv, json };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::force: return "force";
    case Command::sweep: return "sweep";
    case Command::crit: return "crit";
    case Command::sumrule: return "sumrule";
    case Command::verify: return "verify";
  }
  return "unknown";
}

struct RunConfig {
  Command command = Command::force;
  // Plates are given either as duality angles or as PEMC parameters, never mixed.
  bool use_m = false;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double m_plus = std::numeric_limits<double>::infinity();
  double m_minus = std::numeric_limits<double>::infinity();
  double separation = 1e-6;
  force::UnitSystem units = force::UnitSystem::normalized;
  OutputFormat format = OutputFormat::csv;
  int sweep_points = 181;
  double delta_min = 0.0;
  double delta_max = constants::pi / 2.0;
  force::QuadratureConfig tolerances;
  bool inject_quartic_fault = false;

  force::PlatePair plates() const {
    if (use_m) return force::PlatePair::from_m({m_plus}, {m_minus}, separation);
    return {{theta_plus}, {theta_minus}, separation};
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a PEMC parameter; accepts finite reals and +-inf / infinity.
inline double parse_m_value(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || std::isnan(v)) {
    throw UsageError("invalid PEMC parameter '" + text + "'");
  }
  return v;
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Json config_json(const RunConfig& cfg) {
  Json c;
  c["command"] = to_string(cfg.command);
  if (cfg.use_m) {
    c["m_plus"] = fmt(cfg.m_plus);
    c["m_minus"] = fmt(cfg.m_minus);
  } else {
    c["theta_plus_rad"] = cfg.theta_plus;
    c["theta_minus_rad"] = cfg.theta_minus;
  }
  c["L_m"] = cfg.separation;
  c["units"] = force::to_string(cfg.units);
  c["points"] = cfg.sweep_points;
  c["rel_tol"] = cfg.tolerances.rel_tol;
  c["abs_tol"] = cfg.tolerances.abs_tol;
  return c;
}

inline Json entry(std::string_view name, double value, std::string_view unit) {
  Json e;
  e["name"] = name;
  e["value"] = value;
  e["unit"] = unit;
  return e;
}

struct Report {
  Json results = Json::array();
  Json checks = Json::array();
};

inline void emit_json(std::ostream& out, const RunConfig& cfg, const Report& rep) {
  Json doc;
  doc["config"] = config_json(cfg);
  doc["results"] = rep.results;
  doc["checks"] = rep.checks;
  out << doc.dump(2) << '\n';
}

inline Json check_json(const verification::CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["measured"] = c.measured;
  j["tolerance"] = c.tolerance;
  j["unit"] = "dimensionless";
  j["detail"] = c.detail;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_force(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const force::PlatePair pair = cfg.plates();
  pair.validate();
  const auto unit = force::unit_label(cfg.units);
  const double reference = force::casimir_reference(pair.separation, cfg.units);

  const auto analytic = force::force_analytic(pair, cfg.units);
  const auto quartic = force::force_quartic(pair, cfg.units);
  force::ForceResult quad;
  try {
    quad = force::force_quadrature(pair, cfg.tolerances, cfg.units);
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (best estimate " << detail::fmt(e.best_estimate()) << " " << unit
        << ", error " << detail::fmt(e.error_estimate()) << ")\n";
    return ExitCode::accuracy;
  }
  const double discrepancy = std::abs(quad.value - analytic.value);

  if (cfg.format == OutputFormat::csv) {
    out << "method,value,abs_error_estimate,unit,ratio_to_pec_pec\n";
    for (const auto& r : {analytic, quartic, quad}) {
      out << force::to_string(r.method) << ',' << detail::fmt(r.value) << ',' << detail::fmt(r.abs_error_estimate)
          << ',' << unit << ',' << detail::fmt(r.value / reference) << '\n';
    }
    out << "discrepancy_quadrature_analytic," << detail::fmt(discrepancy) << ",," << unit << ",\n";
    return ExitCode::ok;
  }

  detail::Report rep;
  rep.results.push_back(detail::entry("delta", pair.delta(), "rad"));
  for (const auto& r : {analytic, quartic, quad}) {
    Json e;
    e["name"] = "force";
    e["method"] = force::to_string(r.method);
    e["value"] = r.value;
    e["abs_error_estimate"] = r.abs_error_estimate;
    e["unit"] = unit;
    e["ratio_to_pec_pec"] = r.value / reference;
    rep.results.push_back(e);
  }
  rep.results.push_back(detail::entry("discrepancy_quadrature_analytic", discrepancy, unit));
  detail::emit_json(out, cfg, rep);
  return ExitCode::ok;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.sweep_points < 2) throw UsageError("--points must be at least 2");
  if (!(cfg.delta_max > cfg.delta_min)) throw UsageError("sweep range must satisfy delta-min < delta-max");
  const double reference = std::abs(force::casimir_reference(1.0));
  const int n = cfg.sweep_points;

  std::vector<std::pair<double, double>> rows(n);
  for (int i = 0; i < n; ++i) {
    const double delta = i == n - 1 ? cfg.delta_max : cfg.delta_min + (cfg.delta_max - cfg.delta_min) * i / (n - 1);
    rows[i] = {delta, force::force_analytic({{delta}, {0.0}, 1.0}).value / reference};
  }

  if (cfg.format == OutputFormat::csv) {
    out << "delta_rad,force_normalized\n";
    for (const auto& [d, f] : rows) out << detail::fmt(d) << ',' << detail::fmt(f) << '\n';
  } else {
    detail::Report rep;
    for (const auto& [d, f] : rows) {
      Json e;
      e["delta_rad"] = d;
      e["force_normalized"] = f;
      e["unit"] = "|f(0)|";
      rep.results.push_back(e);
    }
    detail::emit_json(out, cfg, rep);
  }
  if (!out) return ExitCode::io_error;
  return ExitCode::ok;
}

inline int cmd_crit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double closed = force::delta_crit();
  const double bisected = force::bisect_zero_force();
  const double diff = std::abs(closed - bisected);
  const double ratio = closed / (constants::pi / 4.0);
  const verification::CheckResult check{"closed_vs_bisection", diff <= 1e-10, diff, 1e-10, ""};

  if (cfg.format == OutputFormat::csv) {
    out << "name,value,unit\n"
        << "delta_crit_closed_form," << detail::fmt(closed) << ",rad\n"
        << "delta_crit_bisection," << detail::fmt(bisected) << ",rad\n"
        << "difference," << detail::fmt(diff) << ",rad\n"
        << "ratio_to_quarter_pi," << detail::fmt(ratio) << ",dimensionless\n";
  } else {
    detail::Report rep;
    rep.results.push_back(detail::entry("delta_crit_closed_form", closed, "rad"));
    rep.results.push_back(detail::entry("delta_crit_bisection", bisected, "rad"));
    rep.results.push_back(detail::entry("difference", diff, "rad"));
    rep.results.push_back(detail::entry("ratio_to_quarter_pi", ratio, "dimensionless"));
    rep.checks.push_back(detail::check_json(check));
    detail::emit_json(out, cfg, rep);
  }
  return check.passed ? ExitCode::ok : ExitCode::verification_failed;
}

inline int cmd_sumrule(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  quadrature::Estimate est;
  try {
    est = force::sum_rule(cfg.tolerances);
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (best estimate " << detail::fmt(e.best_estimate()) << ")\n";
    return ExitCode::accuracy;
  }
  constexpr double pi = constants::pi;
  const double norm = std::abs(force::casimir_reference(1.0)) * pi / 2.0;
  const double normalized = est.value / norm;
  // Antiderivative of the quartic bracket pi^4/30 - d^2 (pi - d)^2 at pi/2.
  const double d = pi / 2.0;
  const double symbolic = pi * pi * pi * pi / 30.0 * d - (pi * pi * d * d * d / 3.0 - pi * d * d * d * d / 2.0 +
                                                          d * d * d * d * d / 5.0);
  const verification::CheckResult check{"sum_rule", std::abs(normalized) <= 1e-10, std::abs(normalized), 1e-10, ""};

  if (cfg.format == OutputFormat::csv) {
    out << "name,value,unit\n"
        << "integral," << detail::fmt(est.value) << ",hbar*c/L^4*rad\n"
        << "integral_normalized," << detail::fmt(normalized) << ",dimensionless\n"
        << "quadrature_error_estimate," << detail::fmt(est.abs_error) << ",hbar*c/L^4*rad\n"
        << "symbolic_antiderivative_bracket," << detail::fmt(symbolic) << ",rad^5\n";
  } else {
    detail::Report rep;
    rep.results.push_back(detail::entry("integral", est.value, "hbar*c/L^4*rad"));
    rep.results.push_back(detail::entry("integral_normalized", normalized, "dimensionless"));
    rep.results.push_back(detail::entry("quadrature_error_estimate", est.abs_error, "hbar*c/L^4*rad"));
    rep.results.push_back(detail::entry("symbolic_antiderivative_bracket", symbolic, "rad^5"));
    rep.checks.push_back(detail::check_json(check));
    detail::emit_json(out, cfg, rep);
  }
  return check.passed ? ExitCode::ok : ExitCode::verification_failed;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  verification::Options opts;
  opts.quadrature = cfg.tolerances;
  if (cfg.inject_quartic_fault) opts.quartic_perturbation = 1e-6;
  const auto checks = verification::run_all(opts);
  bool all = true;
  for (const auto& c : checks) all = all && c.passed;

  if (cfg.format == OutputFormat::csv) {
    out << "check,passed,measured,tolerance\n";
    for (const auto& c : checks) {
      out << c.name << ',' << (c.passed ? "pass" : "FAIL") << ',' << detail::fmt(c.measured) << ','
          << detail::fmt(c.tolerance) << '\n';
    }
  } else {
    detail::Report rep;
    for (const auto& c : checks) rep.checks.push_back(detail::check_json(c));
    detail::emit_json(out, cfg, rep);
  }
  return all ? ExitCode::ok : ExitCode::verification_failed;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::force: return cmd_force(cfg, out, err);
    case Command::sweep: return cmd_sweep(cfg, out, err);
    case Command::crit: return cmd_crit(cfg, out, err);
    case Command::sumrule: return cmd_sumrule(cfg, out, err);
    case Command::verify: return cmd_verify(cfg, out, err);
  }
  return ExitCode::usage;
}

/// Parses argv (program name first) and runs the selected command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Casimir force between perfect electromagnetic conductor plates", "pemc"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string m_plus_text, m_minus_text, units_text = "normalized", format_text = "csv";
  auto* tp = app.add_option("--theta-plus", cfg.theta_plus, "duality angle of the plate at z = L [rad]");
  auto* tm = app.add_option("--theta-minus", cfg.theta_minus, "duality angle of the plate at z = 0 [rad]");
  auto* mp = app.add_option("--m-plus", m_plus_text, "PEMC parameter M of the plate at z = L (inf = PEC)");
  auto* mm = app.add_option("--m-minus", m_minus_text, "PEMC parameter M of the plate at z = 0 (inf = PEC)");
  for (auto* theta_opt : {tp, tm}) {
    for (auto* m_opt : {mp, mm}) theta_opt->excludes(m_opt);
  }
  app.add_option("--L", cfg.separation, "plate separation [m]");
  app.add_option("--units", units_text, "si | normalized")->check(CLI::IsMember({"si", "normalized"}));
  app.add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag_callback("--json", [&format_text] { format_text = "json"; }, "shorthand for --format json");
  app.add_option("--points", cfg.sweep_points, "number of sweep points (>= 2)");
  app.add_option("--delta-min", cfg.delta_min, "sweep start [rad]");
  app.add_option("--delta-max", cfg.delta_max, "sweep end [rad]");
  app.add_option("--rel-tol", cfg.tolerances.rel_tol, "quadrature relative tolerance");
  app.add_option("--abs-tol", cfg.tolerances.abs_tol, "quadrature absolute tolerance");
  app.add_option("--max-subdivisions", cfg.tolerances.max_subdivisions, "quadrature panel budget");
  app.add_flag("--inject-quartic-fault", cfg.inject_quartic_fault)->group("");

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::force, "force per unit area for one plate pair"},
      {Command::sweep, "normalized force over a delta grid"},
      {Command::crit, "zero-force phase shift"},
      {Command::sumrule, "integral of the force over delta in [0, pi/2]"},
      {Command::verify, "run the verification battery"}};
  for (const auto& [cmd, help] : commands) {
    app.add_subcommand(std::string(to_string(cmd)), help)->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  try {
    cfg.units = units_text == "si" ? force::UnitSystem::si : force::UnitSystem::normalized;
    cfg.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!m_plus_text.empty() || !m_minus_text.empty()) {
      cfg.use_m = true;
      if (!m_plus_text.empty()) cfg.m_plus = parse_m_value(m_plus_text);
      if (!m_minus_text.empty()) cfg.m_minus = parse_m_value(m_minus_text);
    }
    if (!(cfg.separation > 0.0)) throw UsageError("--L must be positive");
    cfg.tolerances.validate();
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return ExitCode::usage;
  }
}

}  // namespace pemc::cli
