#include "polycc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "polycc/central_config.hpp"
#include "polycc/circulant.hpp"
#include "polycc/dynamics.hpp"
#include "polycc/errors.hpp"
#include "polycc/euler_collinear.hpp"
#include "polycc/identities.hpp"

namespace polycc::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config documents

ConfigDocument ConfigDocument::from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("config document must be a JSON object");
  ConfigDocument out;
  try {
    if (!doc.contains("masses")) throw DomainError("config document needs \"masses\"");
    out.masses = doc.at("masses").get<std::vector<double>>();
    out.n = doc.contains("n") ? doc.at("n").get<int>() : static_cast<int>(out.masses.size());
    if (doc.contains("center_mass") && !doc.at("center_mass").is_null()) {
      out.center_mass = doc.at("center_mass").get<double>();
    }
    if (doc.contains("omega_squared") && !doc.at("omega_squared").is_null()) {
      out.omega_squared = doc.at("omega_squared").get<double>();
    }
    if (doc.contains("positions") && !doc.at("positions").is_null()) {
      std::vector<PlanarPoint> points;
      for (const auto& p : doc.at("positions")) {
        const auto xy = p.get<std::vector<double>>();
        if (xy.size() != 2) throw DomainError("each position must be [x, y]");
        points.emplace_back(xy[0], xy[1]);
      }
      out.positions = std::move(points);
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed config document: ") + e.what());
  }
  if (out.n != static_cast<int>(out.masses.size())) {
    throw DomainError("\"n\" = " + std::to_string(out.n) + " but " +
                      std::to_string(out.masses.size()) + " masses given");
  }
  return out;
}

json ConfigDocument::to_json() const {
  json doc;
  doc["n"] = n;
  doc["masses"] = masses;
  if (center_mass) doc["center_mass"] = *center_mass;
  if (omega_squared) doc["omega_squared"] = *omega_squared;
  if (positions) {
    json points = json::array();
    for (const auto& p : *positions) points.push_back({p.real(), p.imag()});
    doc["positions"] = std::move(points);
  }
  return doc;
}

Configuration ConfigDocument::configuration() const {
  std::vector<double> all_masses = masses;
  if (center_mass) all_masses.push_back(*center_mass);
  if (positions) {
    if (positions->size() != all_masses.size()) {
      throw DomainError(std::to_string(positions->size()) + " positions for " +
                        std::to_string(all_masses.size()) + " bodies");
    }
    return Configuration(*positions, std::move(all_masses));
  }
  if (center_mass) return polygon_plus_center_configuration(n, masses, *center_mass);
  return Configuration(regular_polygon_vertices(n), masses);
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return ConfigDocument::from_json(doc);
}

std::pair<int, int> parse_range(std::string_view text, int lo, int hi) {
  auto parse_int = [&](std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw DomainError("malformed range '" + std::string(text) + "'");
    }
    return value;
  };
  int first = 0;
  int last = 0;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    first = parse_int(text.substr(0, dots));
    last = parse_int(text.substr(dots + 2));
  } else {
    first = last = parse_int(text);
  }
  if (first > last || first < lo || last > hi) {
    throw DomainError("range '" + std::string(text) + "' must lie within " + std::to_string(lo) +
                      ".." + std::to_string(hi));
  }
  return {first, last};
}

// ---------------------------------------------------------------------------
// Report rendering

namespace {

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  bool pass = false;
  int exit_code = kCheckFailed;
};

json point_json(PlanarPoint p) { return json::array({p.real(), p.imag()}); }

std::string scalar_text(const json& value) {
  if (value.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(12) << value.get<double>();
    return s.str();
  }
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return "(" + scalar_text(value[0]) + ", " + scalar_text(value[1]) + ")";
  }
  return value.dump();
}

void render_table(std::ostream& out, const json& rows) {
  std::vector<std::string> columns;
  for (const auto& [key, _] : rows.front().items()) columns.push_back(key);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> widths;
  for (const auto& c : columns) widths.push_back(c.size());
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      line.push_back(row.contains(columns[i]) ? scalar_text(row.at(columns[i])) : "");
      widths[i] = std::max(widths[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << " ";
    for (std::size_t i = 0; i < line.size(); ++i) out << ' ' << std::setw(static_cast<int>(widths[i])) << line[i];
    out << '\n';
  };
  emit(columns);
  for (const auto& line : cells) emit(line);
}

void render(std::ostream& out, const Report& report, bool as_json) {
  if (as_json) {
    const json doc = {{"command", report.command},
                      {"inputs", report.inputs},
                      {"results", report.results},
                      {"pass", report.pass}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << report.command << '\n';
  for (const auto& [key, value] : report.inputs.items()) {
    out << "  " << key << " = " << scalar_text(value) << '\n';
  }
  for (const auto& [key, value] : report.results.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << key << ":\n";
      render_table(out, value);
    } else {
      out << key << ": " << scalar_text(value) << '\n';
    }
  }
  out << (report.pass ? "PASS" : "FAIL") << '\n';
}

// ---------------------------------------------------------------------------
// Commands

struct IdentitiesArgs {
  std::string range;
  double tol = 1e-11;
};

Report cmd_identities(const IdentitiesArgs& args) {
  const auto [first, last] = parse_range(args.range, 2, 1024);
  Report report;
  report.command = "identities";
  report.inputs = {{"n", args.range}, {"tol_identity", args.tol}};
  json rows = json::array();
  bool all = true;
  for (int n = first; n <= last; ++n) {
    const IdentityReport cosecant = verify_cosecant_identity(n);
    const IdentityReport potential = verify_potential_identity(n);
    const bool pass = cosecant.abs_difference < args.tol && potential.abs_difference < args.tol;
    all = all && pass;
    rows.push_back({{"n", n},
                    {"csc_sum", cosecant.rhs},
                    {"force_sum_re", cosecant.lhs.real()},
                    {"force_sum_im", cosecant.lhs.imag()},
                    {"cosecant_diff", cosecant.abs_difference},
                    {"pair_potential", potential.lhs.real()},
                    {"potential_diff", potential.abs_difference},
                    {"pass", pass}});
  }
  report.results["rows"] = std::move(rows);
  report.pass = all;
  report.exit_code = all ? kPass : kCheckFailed;
  return report;
}

struct MassesArgs {
  int n = 0;
  double omega_squared = 0.0;
  double center = 0.0;
  double tol = 1e-12;
  std::string write_config;
};

Report cmd_masses(const MassesArgs& args) {
  Report report;
  report.command = "masses";
  report.inputs = {{"n", args.n}, {"omega_squared", args.omega_squared}, {"center_mass", args.center},
                   {"tol_agreement", args.tol}};
  const double theorem = theorem_masses(args.n, args.omega_squared, args.center);
  report.results["theorem_mass"] = theorem;
  report.results["csc_sum"] = csc_sum(args.n);
  bool pass = true;
  if (args.n >= 4) {
    const MassSolution spectral = solve_masses_circulant(args.n, args.omega_squared, args.center);
    double worst = 0.0;
    for (double m : spectral.masses) worst = std::max(worst, std::abs(m - theorem) / theorem);
    report.results["circulant_mass"] = spectral.masses.front();
    report.results["relative_difference"] = worst;
    report.results["branch"] = std::string(to_string(spectral.branch));
    pass = worst < args.tol;
  } else {
    report.results["circulant_mass"] = nullptr;
    report.results["relative_difference"] = nullptr;
  }
  if (!args.write_config.empty()) {
    ConfigDocument doc;
    doc.n = args.n;
    doc.masses.assign(static_cast<std::size_t>(args.n), theorem);
    if (args.center > 0.0) doc.center_mass = args.center;
    doc.omega_squared = args.omega_squared;
    std::ofstream file(args.write_config);
    if (!file) throw DomainError("cannot write config file '" + args.write_config + "'");
    file << doc.to_json().dump(2) << '\n';
    report.results["config_written"] = args.write_config;
  }
  report.pass = pass;
  report.exit_code = pass ? kPass : kCheckFailed;
  return report;
}

struct VerifyArgs {
  std::string config;
  std::optional<double> omega_squared;
  double tol = 1e-10;
};

double require_omega_squared(const ConfigDocument& doc, const std::optional<double>& override_value) {
  if (override_value) return *override_value;
  if (doc.omega_squared) return *doc.omega_squared;
  throw DomainError("omega^2 missing: pass --omega2 or set \"omega_squared\" in the config");
}

Report cmd_verify(const VerifyArgs& args) {
  const ConfigDocument doc = load_config(args.config);
  const double omega_squared = require_omega_squared(doc, args.omega_squared);
  const Configuration config = doc.configuration();
  const ResidualReport residual = cc_residual(config, omega_squared);
  const ConfigurationMetrics mx = metrics(config);

  Report report;
  report.command = "verify";
  report.inputs = {{"config", doc.to_json()}, {"omega_squared", omega_squared}, {"tol_residual", args.tol}};
  json bodies = json::array();
  for (std::size_t k = 0; k < residual.per_body.size(); ++k) {
    bodies.push_back({{"body", k + 1},
                      {"residual", point_json(residual.per_body[k])},
                      {"norm", std::abs(residual.per_body[k])}});
  }
  report.results["per_body"] = std::move(bodies);
  report.results["sup_norm"] = residual.sup_norm;
  report.results["mass_center"] = point_json(mx.mass_center);
  report.results["potential_U"] = mx.potential_U;
  report.results["inertia_I"] = mx.inertia_I;
  report.results["u_over_i"] = mx.potential_U / mx.inertia_I;
  report.results["omega_squared_gap"] = std::abs(omega_squared - mx.potential_U / mx.inertia_I);
  report.pass = residual.sup_norm < args.tol;
  report.exit_code = report.pass ? kPass : kCheckFailed;
  return report;
}

struct SolveArgs {
  int n = 0;
  double omega_squared = 0.0;
  double center = 0.0;
  int seeds = 20;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

Report cmd_solve(const SolveArgs& args) {
  if (args.seeds < 1) throw DomainError("--seeds must be positive");
  // surface infeasibility before spending any Newton runs
  const double expected = theorem_masses(args.n, args.omega_squared, args.center);

  Report report;
  report.command = "solve";
  report.inputs = {{"n", args.n},         {"omega_squared", args.omega_squared},
                   {"center_mass", args.center}, {"seeds", args.seeds},
                   {"seed", args.seed},   {"tol_equal", args.tol}};

  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> log_mass(std::log(0.1), std::log(10.0));
  json runs = json::array();
  int converged = 0;
  bool all_equal = true;
  for (int run = 1; run <= args.seeds; ++run) {
    std::vector<double> initial(static_cast<std::size_t>(args.n));
    for (double& m : initial) m = std::exp(log_mass(rng));
    json row = {{"run", run}};
    try {
      const MassSolution solution = solve_masses_newton(args.n, args.omega_squared, args.center, initial);
      ++converged;
      const bool equal = solution.max_deviation_from_equal < args.tol;
      all_equal = all_equal && equal;
      row["status"] = "converged";
      row["mean_mass"] = std::accumulate(solution.masses.begin(), solution.masses.end(), 0.0) / args.n;
      row["max_deviation"] = solution.max_deviation_from_equal;
      row["branch"] = std::string(to_string(solution.branch));
      row["iterations"] = solution.iterations;
      row["residual"] = solution.final_residual;
      row["masses"] = solution.masses;
    } catch (const InfeasibleError& e) {
      row["status"] = "infeasible";
    } catch (const ConvergenceError& e) {
      row["status"] = "diverged";
      row["residual"] = e.final_residual();
    }
    row["initial"] = initial;
    runs.push_back(std::move(row));
  }
  report.results["theorem_mass"] = expected;
  report.results["converged"] = converged;
  report.results["runs"] = std::move(runs);
  report.pass = converged > 0 && all_equal;
  report.exit_code = converged == 0 ? kNoConvergence : (all_equal ? kPass : kCheckFailed);
  return report;
}

struct EulerArgs {
  std::vector<double> masses;
  double tol = 1e-13;
};

Report cmd_euler(const EulerArgs& args) {
  if (args.masses.size() != 3) throw DomainError("euler needs exactly three masses");
  const EulerProblem problem{args.masses[0], args.masses[1], args.masses[2]};
  validate(problem);
  const double q = solve_Q(problem);
  const double residual = euler_residual(problem, q);

  Report report;
  report.command = "euler";
  report.inputs = {{"m1", problem.m1}, {"m2", problem.m2}, {"m3", problem.m3}, {"tol_residual", args.tol}};
  report.results["Q"] = q;
  report.results["residual"] = residual;
  report.results["midpoint_check"] = midpoint_mass_equality_check(problem.m1, problem.m2, problem.m3);
  report.pass = std::abs(residual) < args.tol;
  report.exit_code = report.pass ? kPass : kCheckFailed;
  return report;
}

struct SimulateArgs {
  std::string config;
  std::optional<double> omega;
  std::optional<double> step;
  std::optional<std::size_t> n_steps;
  std::string method = "rk4";
  std::string output;
  double tol = 1e-5;
};

Report cmd_simulate(const SimulateArgs& args) {
  const ConfigDocument doc = load_config(args.config);
  const Configuration config = doc.configuration();
  const Method method = parse_method(args.method);

  double omega = 0.0;
  if (args.omega) {
    omega = *args.omega;
  } else if (doc.omega_squared && *doc.omega_squared > 0.0) {
    omega = std::sqrt(*doc.omega_squared);
  } else {
    throw DomainError("omega missing: pass --omega or set \"omega_squared\" in the config");
  }
  if (!std::isfinite(omega)) throw DomainError("omega must be finite");

  double step = 0.0;
  std::size_t n_steps = 0;
  if (omega != 0.0) {
    const double period = 2.0 * std::numbers::pi / std::abs(omega);
    step = args.step.value_or(period / 4000.0);
    if (!(step > 0.0)) throw DomainError("--step must be positive");
    n_steps = args.n_steps.value_or(static_cast<std::size_t>(std::llround(period / step)));
  } else {
    if (!args.step || !args.n_steps) throw DomainError("omega = 0 needs explicit --step and --n-steps");
    step = *args.step;
    n_steps = *args.n_steps;
  }
  if (!(step > 0.0)) throw DomainError("--step must be positive");
  if (n_steps == 0) throw DomainError("--n-steps must be positive");

  const Snapshot initial = relative_equilibrium_state(config, omega);
  const Trajectory traj = integrate(initial, config.masses(), step, n_steps, method);

  if (!args.output.empty()) {
    std::ofstream file(args.output);
    if (!file) throw DomainError("cannot write trajectory file '" + args.output + "'");
    write_csv(file, traj);
  }

  Report report;
  report.command = "simulate";
  report.inputs = {{"config", doc.to_json()}, {"omega", omega},      {"step", step},
                   {"n_steps", n_steps},      {"method", args.method}, {"tol_rigid", args.tol}};
  if (!args.output.empty()) report.inputs["output"] = args.output;
  report.results["rigid_rotation_error"] = rigid_rotation_error(traj, config, omega);
  report.results["relative_energy_drift"] = traj.relative_energy_drift();
  report.results["angular_momentum_drift"] = traj.angular_momentum_drift();
  report.results["linear_momentum_drift"] = traj.linear_momentum_drift();
  report.results["snapshots"] = traj.times.size();
  if (traj.close_approach) {
    const auto& e = *traj.close_approach;
    report.results["close_approach"] = {{"time", e.time},   {"step", e.step},         {"first", e.first},
                                        {"second", e.second}, {"distance", e.distance}};
    report.pass = false;
    report.exit_code = kCloseApproach;
    return report;
  }
  report.pass = report.results["rigid_rotation_error"].get<double>() < args.tol;
  report.exit_code = report.pass ? kPass : kCheckFailed;
  return report;
}

struct SpectrumArgs {
  int n = 0;
  double tol_zero = kEigenvalueZeroTolerance;
  double tol_nonzero = kEigenvalueNonzeroTolerance;
};

Report cmd_spectrum(const SpectrumArgs& args) {
  const CirculantMatrix a = build_A(args.n);
  Report report;
  report.command = "spectrum";
  report.inputs = {{"n", args.n}, {"tol_zero", args.tol_zero}, {"tol_nonzero", args.tol_nonzero}};
  json rows = json::array();
  const auto lambdas = eigenvalues(a);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    rows.push_back({{"k", k + 1},
                    {"re", lambdas[k].real()},
                    {"im", lambdas[k].imag()},
                    {"abs", std::abs(lambdas[k])}});
  }
  report.results["eigenvalues"] = std::move(rows);
  report.results["csc_sum"] = csc_sum(args.n);
  report.pass = true;
  if (args.n >= 4) {
    const EigenvalueCheckReport check = nonzero_eigenvalue_check(args.n, args.tol_zero, args.tol_nonzero);
    json checks = json::array();
    for (const auto& row : check.rows) {
      checks.push_back({{"k", row.k}, {"abs", row.magnitude}, {"expected_zero", row.expected_zero},
                        {"pass", row.pass}});
    }
    report.results["vanishing_check"] = std::move(checks);
    report.pass = check.pass;
  } else {
    report.results["vanishing_check"] = nullptr;
  }
  report.exit_code = report.pass ? kPass : kCheckFailed;
  return report;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dispatch

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Central configurations of a regular polygon with a central body (G = 1)"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"table", "json"}));

  IdentitiesArgs identities;
  auto* sub_identities = app.add_subcommand("identities", "Check the cosecant and pair-potential sums");
  sub_identities->add_option("--n", identities.range, "N or range a..b within 2..1024")->required();
  sub_identities->add_option("--tol-identity", identities.tol, "Allowed |lhs - rhs|");

  MassesArgs masses;
  auto* sub_masses = app.add_subcommand("masses", "Polygon mass from the closed form and the circulant solve");
  sub_masses->add_option("--n", masses.n, "Polygon size N >= 2")->required();
  sub_masses->add_option("--omega2", masses.omega_squared, "omega^2")->required();
  sub_masses->add_option("--center", masses.center, "Central mass")->required();
  sub_masses->add_option("--tol-agreement", masses.tol, "Allowed relative difference");
  sub_masses->add_option("--write-config", masses.write_config, "Write the configuration as JSON");

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand("verify", "Residual of the central-configuration equations");
  sub_verify->add_option("--config", verify.config, "Config JSON file")->required();
  sub_verify->add_option("--omega2", verify.omega_squared, "Override omega^2");
  sub_verify->add_option("--tol-residual", verify.tol, "Pass threshold on the sup norm");

  SolveArgs solve;
  auto* sub_solve = app.add_subcommand("solve", "Newton solves for the polygon masses from random starts");
  sub_solve->add_option("--n", solve.n, "Polygon size N >= 2")->required();
  sub_solve->add_option("--omega2", solve.omega_squared, "omega^2")->required();
  sub_solve->add_option("--center", solve.center, "Central mass")->required();
  sub_solve->add_option("--seeds", solve.seeds, "Number of random starts");
  sub_solve->add_option("--seed", solve.seed, "Generator seed");
  sub_solve->add_option("--tol-equal", solve.tol, "Allowed deviation from equal masses");

  EulerArgs euler;
  auto* sub_euler = app.add_subcommand("euler", "Collinear three-body position parameter Q");
  sub_euler->add_option("masses", euler.masses, "m1 m2 m3")->required()->expected(3);
  sub_euler->add_option("--tol-residual", euler.tol, "Pass threshold on |residual|");

  SimulateArgs simulate;
  auto* sub_simulate = app.add_subcommand("simulate", "Integrate the rigid-rotation initial data");
  sub_simulate->add_option("--config", simulate.config, "Config JSON file")->required();
  sub_simulate->add_option("--omega", simulate.omega, "Angular velocity (default sqrt(omega_squared))");
  sub_simulate->add_option("--step", simulate.step, "Time step (default period/4000)");
  sub_simulate->add_option("--n-steps", simulate.n_steps, "Number of steps (default one period)");
  sub_simulate->add_option("--method", simulate.method, "rk4 or leapfrog")
      ->check(CLI::IsMember({"rk4", "leapfrog"}));
  sub_simulate->add_option("--output", simulate.output, "Trajectory CSV path");
  sub_simulate->add_option("--tol-rigid", simulate.tol, "Pass threshold on the rigid-rotation error");

  SpectrumArgs spectrum;
  auto* sub_spectrum = app.add_subcommand("spectrum", "Eigenvalues of the polygon interaction matrix");
  sub_spectrum->add_option("--n", spectrum.n, "Polygon size N >= 2")->required();
  sub_spectrum->add_option("--tol-zero", spectrum.tol_zero, "Threshold for a vanishing eigenvalue");
  sub_spectrum->add_option("--tol-nonzero", spectrum.tol_nonzero, "Threshold for a nonzero eigenvalue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Report report;
    if (*sub_identities) report = cmd_identities(identities);
    else if (*sub_masses) report = cmd_masses(masses);
    else if (*sub_verify) report = cmd_verify(verify);
    else if (*sub_solve) report = cmd_solve(solve);
    else if (*sub_euler) report = cmd_euler(euler);
    else if (*sub_simulate) report = cmd_simulate(simulate);
    else if (*sub_spectrum) report = cmd_spectrum(spectrum);
    render(out, report, format == "json");
    return report.exit_code;
  } catch (const CoincidentBodiesError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidGeometry;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (residual " << e.final_residual() << ")\n";
    return kNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("polycc");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace polycc::cli
