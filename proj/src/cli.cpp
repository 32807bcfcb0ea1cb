#include "rsv/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rsv/proto.hpp"
#include "rsv/report.hpp"

namespace rsv {

namespace {

const std::vector<std::string> kCommands = {"validate", "proto", "solve", "laplace", "level1", "verify-all"};

Complex parse_coefficient(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail(ErrorCode::ConfigError, "coefficients must be numbers or [re, im] pairs");
}

std::vector<Complex> parse_coefficients(const Json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) fail(ErrorCode::ConfigError, std::string("problem is missing \"") + key + "\"");
    return {};
  }
  const Json& arr = doc.at(key);
  if (!arr.is_array()) fail(ErrorCode::ConfigError, std::string("\"") + key + "\" must be an array");
  std::vector<Complex> out;
  for (const auto& v : arr) out.push_back(parse_coefficient(v));
  return out;
}

template <class T>
void read_opt(const Json& obj, const char* key, T& target) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad value for \"") + key + "\": " + e.what());
  }
}

Json coefficients_json(const std::vector<Complex>& c) {
  Json arr = Json::array();
  for (const auto& v : c) arr.push_back(to_json(v));
  return arr;
}

Json config_echo(const RunConfig& run, const LoadedProblem& lp) {
  const Level1Config& c = lp.config;
  Json j;
  j["command"] = run.command;
  j["problem_file"] = std::filesystem::path(run.problem).filename().string();
  j["seed"] = run.seed;
  j["P"] = coefficients_json(lp.problem.P);
  j["Q"] = coefficients_json(lp.problem.Q);
  j["R"] = coefficients_json(lp.problem.R);
  j["A"] = lp.problem.A;
  j["alpha_index"] = lp.alpha_index ? Json(*lp.alpha_index) : Json(nullptr);
  j["theta"] = lp.theta ? Json(*lp.theta) : Json(nullptr);
  j["grid"] = {{"T", c.T},
               {"t_min_factor", c.t_min_factor},
               {"ratio", c.ratio},
               {"nodes_per_panel", c.nodes_per_panel},
               {"panels", lp.grid_panels ? Json(*lp.grid_panels) : Json(nullptr)}};
  j["solver"] = {{"rho", c.solver.rho},
                 {"lambda", c.solver.lambda},
                 {"kappa_target", c.solver.kappa_target},
                 {"tol", c.solver.tol},
                 {"max_iter", c.solver.max_iter},
                 {"trials", c.solver.contraction.trials}};
  j["quadrature"] = {{"order", c.quadrature.order}, {"rule", to_string(c.quadrature.rule)}};
  j["laplace"] = {{"margin", c.laplace.margin}, {"accuracy", c.laplace.accuracy}};
  j["accuracy"] = c.accuracy;
  j["z_samples"] = coefficients_json(lp.z);
  return j;
}

std::string out_path(const RunConfig& run, const std::string& name) {
  return (std::filesystem::path(run.out_dir) / name).string();
}

// Admissible singular points selected by the problem.
std::vector<std::pair<int, SingularPoint>> targets(const LoadedProblem& lp, const std::vector<SingularPoint>& pts) {
  std::vector<std::pair<int, SingularPoint>> out;
  if (lp.alpha_index) {
    const int k = *lp.alpha_index;
    if (k < 0 || k >= static_cast<int>(pts.size())) fail(ErrorCode::ConfigError, "alpha_index out of range");
    require(pts[k].admissible, ErrorCode::PreconditionViolated, "selected singular point is not admissible");
    out.emplace_back(k, pts[k]);
    return out;
  }
  for (int k = 0; k < static_cast<int>(pts.size()); ++k)
    if (pts[k].admissible) out.emplace_back(k, pts[k]);
  require(!out.empty(), ErrorCode::PreconditionViolated, "no admissible singular point");
  return out;
}

struct Context {
  const RunConfig& run;
  const LoadedProblem& lp;
  int index;
  SingularPoint point;
  double theta;
  std::vector<Complex> z;
  Level1Config config;
};

Context make_context(const RunConfig& run, const LoadedProblem& lp, int index, const SingularPoint& sp) {
  const double theta = choose_ray(lp.problem, sp.alpha, lp.theta, lp.config.margin_deg);
  std::vector<Complex> z = lp.z.empty() ? default_z_samples(theta) : lp.z;
  Level1Config cfg = lp.config;
  if (cfg.T <= 0.0) cfg.T = choose_length(z, theta, cfg.accuracy);
  if (lp.grid_panels) cfg.t_min_factor = std::pow(cfg.ratio, -static_cast<double>(*lp.grid_panels));
  return {run, lp, index, sp, theta, std::move(z), cfg};
}

Json point_header(const Context& c) {
  return {{"index", c.index}, {"alpha", to_json(c.point.alpha)}, {"tau", c.point.tau}, {"theta", c.theta}, {"T", c.config.T}};
}

Json run_proto(const Context& c) {
  const GridPtr grid = build_ray_grid({c.point.alpha, c.theta, c.config.T}, c.config.t_min_factor * c.config.T,
                                      c.config.ratio, c.config.nodes_per_panel);
  const KernelPair kernel = build_kernels(c.lp.problem, c.point.alpha, c.config.T);
  const double rho = c.config.solver.rho > 0.0 ? c.config.solver.rho : c.point.tau + 1.0;
  const ConditionReport sing =
      verify_sing(kernel.k0, c.point.tau, 0.5 * (c.point.tau + rho), {grid->ray().theta, grid->T(), grid->t_min()});
  const double base_t = 0.5 * sing.constants.at("delta");
  const PrototypeSolution proto = compute_prototype(kernel.k0, c.point.tau, grid, base_t, c.config.quadrature);
  const OperatorHandle op{kernel, c.config.quadrature, grid};
  Json j = point_header(c);
  j["sing"] = to_json(sing);
  j["base_t"] = base_t;
  j["M"] = proto.M ? to_json(*proto.M) : Json(nullptr);
  j["fixed_point_residual"] = verify_fixed_point(proto, op, proto.f0.lambda_hint);
  if (!c.run.out_dir.empty()) write_csv(out_path(c.run, "f0_" + std::to_string(c.index) + ".csv"), proto.f0);
  return j;
}

Json series_json(const Context& c, const PositionSolution& pos) {
  const auto oracle = series_oracle(series_data(c.lp.problem, c.point.alpha), c.point.tau, 3);
  const auto fitted = fit_series_coefficients(pos.psi.f, 3, std::min(1.0, 0.5 * c.config.T));
  Json j = Json::array();
  for (int n = 1; n <= 3; ++n) j.push_back({{"n", n}, {"oracle", to_json(oracle[n])}, {"fitted", to_json(fitted[n - 1])}});
  return j;
}

Json position_json(const Context& c, const PositionSolution& pos) {
  Json j = point_header(c);
  Json conds = Json::array();
  for (const auto& r : pos.conditions) conds.push_back(to_json(r));
  j["conditions"] = conds;
  j["solution"] = to_json(pos.psi);
  j["series"] = series_json(c, pos);
  if (!c.run.out_dir.empty()) write_csv(out_path(c.run, "psi_" + std::to_string(c.index) + ".csv"), pos.psi.f);
  return j;
}

Json run_solve(const Context& c) {
  return position_json(c, solve_at(c.lp.problem, c.point, c.theta, c.z, c.config));
}

Json run_laplace(const Context& c) {
  const PositionSolution pos = solve_at(c.lp.problem, c.point, c.theta, c.z, c.config);
  Json j = position_json(c, pos);
  const LaplaceResult res = laplace_transform(pos.psi.f, c.z, c.config.laplace);
  j["laplace"] = to_json(res);
  if (!c.run.out_dir.empty()) write_laplace_csv(out_path(c.run, "Psi_" + std::to_string(c.index) + ".csv"), res);
  return j;
}

Json run_level1(const Context& c) {
  PositionSolution pos = solve_at(c.lp.problem, c.point, c.theta, c.z, c.config);
  Json j = position_json(c, pos);
  const ResummedSolution res = borel_sum(c.lp.problem, std::move(pos), c.z, c.config);
  j["laplace"] = to_json(res.Psi);
  j["ode_residual"] = res.ode_residual;
  j["volterra_residual"] = res.volterra_residual;
  if (!c.run.out_dir.empty()) write_laplace_csv(out_path(c.run, "Psi_" + std::to_string(c.index) + ".csv"), res.Psi);
  return j;
}

enum class Verdict { Pass, Fail, NotApplicable };

struct CheckRow {
  std::string name;
  int index;
  Verdict verdict;
  std::string detail;
};

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "N/A";
  }
  return "?";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

std::vector<CheckRow> verify_point(const Context& c) {
  std::vector<CheckRow> rows;
  auto check = [&](const std::string& name, const std::function<std::pair<Verdict, std::string>()>& body) {
    try {
      auto [v, d] = body();
      rows.push_back({name, c.index, v, d});
    } catch (const Error& e) {
      rows.push_back({name, c.index, Verdict::Fail, e.what()});
    }
  };
  auto pass_if = [](bool ok, std::string detail) {
    return std::make_pair(ok ? Verdict::Pass : Verdict::Fail, std::move(detail));
  };

  const double tau = c.point.tau;
  const GridPtr grid = build_ray_grid({c.point.alpha, c.theta, c.config.T}, c.config.t_min_factor * c.config.T,
                                      c.config.ratio, c.config.nodes_per_panel);
  const KernelPair kernel = build_kernels(c.lp.problem, c.point.alpha, c.config.T);
  const OperatorHandle op{kernel, c.config.quadrature, grid};
  const double theta = grid->ray().theta;
  const double lambda_delta = default_lambda_delta(c.lp.problem);
  const bool has_star = kernel.star.has_value();

  double eps = 1.0;
  check("tau", [&] {
    const double est = estimate_tau(kernel.k0, theta);
    return pass_if(std::abs(est - tau) <= 1e-8 * std::max(1.0, tau), "estimate " + num(est));
  });
  check("reg_p", [&] {
    const auto rep = verify_reg_p(kernel.k0.p, c.point.alpha, theta);
    eps = rep.constants.at("epsilon");
    return pass_if(rep.verified, "epsilon " + num(eps));
  });
  const double rho = c.config.solver.rho > 0.0 ? c.config.solver.rho : tau + std::min(eps, 1.0);
  const double sigma = 0.5 * (tau + rho);
  double delta = 0.5 * c.config.T;
  check("sing", [&] {
    const auto rep = verify_sing(kernel.k0, tau, sigma, {theta, grid->T(), grid->t_min()});
    delta = rep.constants.at("delta");
    return pass_if(rep.verified, "delta " + num(delta));
  });
  check("diag0", [&] {
    const auto rep = verify_diag(kernel.k0, lambda_delta, *grid);
    return pass_if(rep.verified, "C " + num(rep.constants.at("C")));
  });
  check("diag_star", [&] {
    if (!has_star) return std::make_pair(Verdict::NotApplicable, std::string("no perturbation"));
    const auto rep = verify_diag(*kernel.star, lambda_delta, *grid);
    return pass_if(rep.verified, "C " + num(rep.constants.at("C")));
  });
  check("gamma", [&] {
    if (!has_star) return std::make_pair(Verdict::NotApplicable, std::string("no perturbation"));
    const double g = estimate_gamma(kernel.star->k_star, theta, std::min(1.0, grid->T()));
    return pass_if(std::abs(g - 1.0) <= 0.05, "fitted " + num(g));
  });

  std::optional<PrototypeSolution> proto;
  check("base_point", [&] {
    const auto rep = base_point_invariance(kernel.k0, tau, grid, 0.5 * delta, delta, c.config.quadrature);
    return pass_if(rep.relative_deviation <= 1e-8, "deviation " + num(rep.relative_deviation));
  });
  check("fixed_point", [&] {
    proto = compute_prototype(kernel.k0, tau, grid, 0.5 * delta, c.config.quadrature);
    const double r = verify_fixed_point(*proto, op, proto->f0.lambda_hint);
    return pass_if(r <= 1e-8, "residual " + num(r));
  });
  check("smoothing", [&] {
    if (!has_star || !proto || !proto->M) return std::make_pair(Verdict::NotApplicable, std::string("no perturbation"));
    const auto slope = smoothing_order(op, proto->normalized());
    if (!slope) return std::make_pair(Verdict::NotApplicable, std::string("zero output"));
    return pass_if(*slope >= tau - 1.0 + 1.0 - 0.05, "slope " + num(*slope));
  });

  std::optional<PositionSolution> pos;
  check("solve", [&] {
    pos = solve_at(c.lp.problem, c.point, c.theta, c.z, c.config);
    return pass_if(pos->psi.volterra_residual <= 1e-8, "volterra residual " + num(pos->psi.volterra_residual));
  });
  check("contraction", [&] {
    if (!pos) return std::make_pair(Verdict::Fail, std::string("no solution"));
    const auto est = contraction_estimate(op, pos->psi.rho, pos->psi.lambda, pos->psi.delta, c.config.solver.contraction);
    const double bound = 0.5 * (tau + pos->psi.rho) / pos->psi.rho + 0.02;
    return pass_if(est.near_factor <= bound && est.overall < 1.0,
                   "near " + num(est.near_factor) + " far " + num(est.far_factor));
  });
  check("semigroup", [&] {
    if (!pos) return std::make_pair(Verdict::Fail, std::string("no solution"));
    const auto& psi = pos->psi.f;
    const auto twice = fractional_integral(0.5, fractional_integral(0.5, psi, c.config.quadrature), c.config.quadrature);
    const auto once = fractional_integral(1.0, psi, c.config.quadrature);
    const NormParams np{tau, pos->psi.lambda};
    const double rel = weighted_norm(combine(1.0, twice, -1.0, once), np) / weighted_norm(psi, {tau - 1.0, pos->psi.lambda});
    return pass_if(rel <= 1e-8, "relative " + num(rel));
  });
  check("dictionary", [&] {
    if (!pos) return std::make_pair(Verdict::Fail, std::string("no solution"));
    const auto rep = verify_dictionary(pos->psi.f, 0.5, 1, c.z, c.config.laplace);
    const double worst = std::max(rep.fractional_mismatch, rep.multiplication_mismatch);
    return pass_if(worst <= 1e-6 + rep.tail, "mismatch " + num(worst));
  });
  check("ode", [&] {
    if (!pos) return std::make_pair(Verdict::Fail, std::string("no solution"));
    const auto res = borel_sum(c.lp.problem, *pos, c.z, c.config);
    double tail = 0.0;
    for (std::size_t k = 0; k < res.Psi.z.size(); ++k) tail = std::max(tail, res.Psi.tail_bound[k] / std::abs(res.Psi.phi[k]));
    return pass_if(res.ode_residual <= 1e-6 + tail, "residual " + num(res.ode_residual));
  });
  return rows;
}

int run_verify_all(const RunConfig& run, const LoadedProblem& lp, const ConditionReport& validation,
                   const std::vector<SingularPoint>& pts, Json& report, std::ostream& out) {
  std::vector<CheckRow> rows;
  rows.push_back({"validate", -1, validation.verified ? Verdict::Pass : Verdict::Fail,
                  validation.reasons.empty() ? std::string("ok") : validation.reasons.front()});
  if (validation.verified) {
    for (const auto& [k, sp] : targets(lp, pts)) {
      auto more = verify_point(make_context(run, lp, k, sp));
      rows.insert(rows.end(), more.begin(), more.end());
    }
  }
  bool all = true;
  Json matrix = Json::array();
  for (const auto& r : rows) {
    all = all && r.verdict != Verdict::Fail;
    out << std::left << std::setw(14) << r.name << std::setw(7) << (r.index < 0 ? std::string("-") : std::to_string(r.index))
        << std::setw(6) << verdict_name(r.verdict) << r.detail << "\n";
    matrix.push_back({{"check", r.name}, {"alpha_index", r.index}, {"verdict", verdict_name(r.verdict)}, {"detail", r.detail}});
  }
  report["checks"] = matrix;
  report["status"] = all ? "ok" : "failed";
  return all ? 0 : 1;
}

void emit(const RunConfig& run, const Json& report, std::ostream& out, bool to_stdout) {
  if (to_stdout) out << report.dump(2) << "\n";
  if (!run.out_dir.empty()) {
    std::ofstream os(out_path(run, "report.json"));
    require(static_cast<bool>(os), ErrorCode::ConfigError, "cannot write the report");
    os << report.dump(2) << "\n";
  }
}

}  // namespace

std::vector<Complex> parse_z_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = item.find(',');
    try {
      std::size_t used = 0;
      const double re = std::stod(item.substr(0, comma), &used);
      const double im = comma == std::string::npos ? 0.0 : std::stod(item.substr(comma + 1));
      out.emplace_back(re, im);
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigError, "cannot parse z sample \"" + item + "\"");
    }
  }
  if (out.empty()) fail(ErrorCode::ConfigError, "empty z sample list");
  return out;
}

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Regular singular Volterra solver and level-1 Borel-Laplace resummation", "rsv"};
  double tol = 0, rho = 0, lambda = 0, theta = 0;
  int panels = 0, npp = 0;
  std::string z;
  app.add_option("command", cfg.command, "validate | proto | solve | laplace | level1 | verify-all")->required();
  app.add_option("--problem", cfg.problem, "problem JSON file")->required();
  app.add_option("--out", cfg.out_dir, "directory for report.json and CSV dumps");
  app.add_option("--seed", cfg.seed, "seed for contraction trials");
  auto* o_tol = app.add_option("--tol", tol, "solver tolerance");
  auto* o_rho = app.add_option("--rho", rho, "solution space exponent rho");
  auto* o_lambda = app.add_option("--lambda", lambda, "exponential weight (0 = search)");
  auto* o_theta = app.add_option("--theta", theta, "ray direction in radians");
  auto* o_panels = app.add_option("--grid-panels", panels, "number of graded panels");
  auto* o_npp = app.add_option("--nodes-per-panel", npp, "Chebyshev nodes per panel");
  auto* o_z = app.add_option("--z", z, "frequency samples \"re,im;re,im;...\"");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    fail(ErrorCode::ConfigError, os.str().empty() ? std::string(e.what()) : os.str());
  }
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
    fail(ErrorCode::ConfigError, "unknown command \"" + cfg.command + "\"");
  if (o_tol->count()) cfg.tol = tol;
  if (o_rho->count()) cfg.rho = rho;
  if (o_lambda->count()) cfg.lambda = lambda;
  if (o_theta->count()) cfg.theta = theta;
  if (o_panels->count()) cfg.grid_panels = panels;
  if (o_npp->count()) cfg.nodes_per_panel = npp;
  if (o_z->count()) cfg.z = z;
  return cfg;
}

LoadedProblem load_problem(const RunConfig& run) {
  std::ifstream is(run.problem);
  if (!is) fail(ErrorCode::ConfigError, "cannot open problem file " + run.problem);
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed problem file: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ConfigError, "problem file must hold a JSON object");

  LoadedProblem lp;
  lp.problem.P = parse_coefficients(doc, "P", true);
  lp.problem.Q = parse_coefficients(doc, "Q", true);
  lp.problem.R = parse_coefficients(doc, "R", false);
  read_opt(doc, "A", lp.problem.A);
  if (doc.contains("alpha_index")) lp.alpha_index = doc.at("alpha_index").get<int>();
  if (doc.contains("theta")) lp.theta = doc.at("theta").get<double>();
  Level1Config& c = lp.config;
  c.solver.contraction.seed = run.seed;
  read_opt(doc, "accuracy", c.accuracy);
  if (doc.contains("grid")) {
    const Json& g = doc.at("grid");
    read_opt(g, "T", c.T);
    read_opt(g, "t_min_factor", c.t_min_factor);
    read_opt(g, "ratio", c.ratio);
    read_opt(g, "nodes_per_panel", c.nodes_per_panel);
    if (g.contains("panels")) lp.grid_panels = g.at("panels").get<int>();
  }
  if (doc.contains("solver")) {
    const Json& s = doc.at("solver");
    read_opt(s, "rho", c.solver.rho);
    read_opt(s, "lambda", c.solver.lambda);
    read_opt(s, "kappa_target", c.solver.kappa_target);
    read_opt(s, "tol", c.solver.tol);
    read_opt(s, "max_iter", c.solver.max_iter);
    read_opt(s, "trials", c.solver.contraction.trials);
  }
  if (doc.contains("quadrature")) {
    const Json& q = doc.at("quadrature");
    read_opt(q, "order", c.quadrature.order);
    if (q.contains("rule")) c.quadrature.rule = parse_endpoint_rule(q.at("rule").get<std::string>());
    c.laplace.quadrature = c.quadrature;
  }
  if (doc.contains("laplace")) {
    read_opt(doc.at("laplace"), "margin", c.laplace.margin);
    read_opt(doc.at("laplace"), "accuracy", c.laplace.accuracy);
  }
  if (doc.contains("z_samples")) lp.z = parse_coefficients(doc, "z_samples", true);

  if (run.tol) c.solver.tol = *run.tol;
  if (run.rho) c.solver.rho = *run.rho;
  if (run.lambda) c.solver.lambda = *run.lambda;
  if (run.theta) lp.theta = *run.theta;
  if (run.grid_panels) lp.grid_panels = *run.grid_panels;
  if (run.nodes_per_panel) c.nodes_per_panel = *run.nodes_per_panel;
  if (run.z) lp.z = parse_z_list(*run.z);

  if (c.solver.tol <= 0.0) fail(ErrorCode::ConfigError, "tol must be positive");
  if (!(c.solver.kappa_target > 0.0 && c.solver.kappa_target < 1.0))
    fail(ErrorCode::ConfigError, "kappa_target must lie in (0, 1)");
  if (c.nodes_per_panel < 2) fail(ErrorCode::ConfigError, "nodes_per_panel must be at least 2");
  if (lp.grid_panels && *lp.grid_panels < 1) fail(ErrorCode::ConfigError, "grid panels must be positive");
  if (c.solver.max_iter < 1) fail(ErrorCode::ConfigError, "max_iter must be positive");
  return lp;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidGrading:
      return 3;
    case ErrorCode::NotRegularSingular:
    case ErrorCode::ConditionFailed:
    case ErrorCode::NoVanishing:
    case ErrorCode::DegenerateRoot:
    case ErrorCode::IllegalInclusion:
    case ErrorCode::NoAdmissibleRay:
    case ErrorCode::PreconditionViolated:
    case ErrorCode::HalfPlaneViolation:
      return 1;
    default:
      return 2;
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json report;
  report["command"] = cfg.command;
  const bool matrix_mode = cfg.command == "verify-all";
  try {
    if (!cfg.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(cfg.out_dir, ec);
      if (ec) fail(ErrorCode::ConfigError, "cannot create output directory " + cfg.out_dir);
    }
    const LoadedProblem lp = load_problem(cfg);
    report["config"] = config_echo(cfg, lp);
    const ConditionReport validation = validate_problem(lp.problem);
    report["validation"] = to_json(validation);

    if (matrix_mode) {
      const auto pts = validation.verified ? singular_points(lp.problem) : std::vector<SingularPoint>{};
      Json sp = Json::array();
      for (const auto& p : pts) sp.push_back(to_json(p));
      report["singular_points"] = sp;
      const int code = run_verify_all(cfg, lp, validation, pts, report, out);
      emit(cfg, report, out, false);
      return code;
    }
    if (!validation.verified) {
      report["status"] = "invalid";
      emit(cfg, report, out, true);
      return 1;
    }
    const auto pts = singular_points(lp.problem);
    Json sp = Json::array();
    for (const auto& p : pts) sp.push_back(to_json(p));
    report["singular_points"] = sp;
    if (cfg.command == "validate") {
      report["status"] = "ok";
      emit(cfg, report, out, true);
      return 0;
    }
    Json results = Json::array();
    for (const auto& [k, p] : targets(lp, pts)) {
      const Context c = make_context(cfg, lp, k, p);
      if (cfg.command == "proto") results.push_back(run_proto(c));
      else if (cfg.command == "solve") results.push_back(run_solve(c));
      else if (cfg.command == "laplace") results.push_back(run_laplace(c));
      else results.push_back(run_level1(c));
    }
    report["results"] = results;
    report["status"] = "ok";
    emit(cfg, report, out, true);
    return 0;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "rsv: " << e.what() << "\n";
    try {
      emit(cfg, report, out, !matrix_mode);
    } catch (const Error&) {
    }
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "rsv: " << e.what() << "\n";
    return 2;
  }
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const Error& e) {
    std::cerr << "rsv: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace rsv
