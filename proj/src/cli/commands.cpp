#include "bcwp/cli/commands.hpp"

#include "bcwp/cli/builders.hpp"
#include "bcwp/errors.hpp"
#include "bcwp/metrics/oracle.hpp"
#include "bcwp/metrics/schwarzschild.hpp"

#include <chrono>
#include <cmath>

namespace bcwp::cli {

namespace {

using exponents::Rational;

RunReport make_report(const Json& config, const std::string& status, int exit_code, Json results) {
  RunReport r;
  r.exit_code = exit_code;
  r.document["artifact"] = Json{{"name", "bcwp"}, {"version", kArtifactVersion}};
  r.document["command"] = config["command"];
  r.document["status"] = status;
  r.document["exit_code"] = exit_code;
  r.document["results"] = std::move(results);
  r.document["config"] = config;
  return r;
}

Json problem_json(const elliptic::PdeProblem& pb) {
  return Json{{"beta", pb.beta}, {"p", pb.p},           {"q", pb.q},
              {"S_F", pb.S_F},   {"lambda", pb.lambda}, {"S_B_min", pb.S_B.min()},
              {"S_B_max", pb.S_B.max()}, {"grid_points", pb.size()}};
}

std::string sign_cell(const Rational& x) { return exponents::to_string(x); }

}  // namespace

RunReport run_verify(const Json& config) {
  const std::vector<int> ladder = get_integer_list(config, "verify.ladder");
  const bool refine_fiber = get_string(config, "verify.refine") == "fiber";
  const Rational mu = config_rational(config, "mu");
  const geometry::FiberModel fiber = build_fiber(config);
  // validate psi once up front so a bad sample is reported before any curvature work
  build_psi(config, build_base(config, refine_fiber ? std::nullopt : std::optional<int>(ladder.front())));

  const metrics::OracleLadder result = metrics::scalar_oracle_ladder(
      [&](int n) {
        metrics::OracleCase c;
        c.spec.base = build_base(config, refine_fiber ? std::nullopt : std::optional<int>(n));
        c.spec.fiber = fiber;
        c.spec.psi = build_psi(config, c.spec.base);
        c.spec.mu = mu;
        c.fiber = fiber.realize(fiber_points(config, refine_fiber ? std::optional<int>(n) : std::nullopt));
        return c;
      },
      ladder);

  const double analytic_tol = get_number(config, "verify.analytic_tolerance");
  const double trivial_tol = get_number(config, "verify.trivial_tolerance");
  const double order_min = get_number(config, "verify.order_min"), order_max = get_number(config, "verify.order_max");

  bool analytic_ok = true, trivial = true;
  Json levels = Json::array();
  for (const auto& l : result.levels) {
    analytic_ok = analytic_ok && l.reduced_vs_closed <= analytic_tol;
    trivial = trivial && l.brute_force_error <= trivial_tol;
    levels.push_back(Json{{"n", l.n},
                          {"reduced_vs_closed", l.reduced_vs_closed},
                          {"brute_force_error", l.brute_force_error},
                          {"scale", l.scale}});
  }
  bool brute_ok = true;
  Json orders = Json::array();
  for (double o : result.orders) {
    if (trivial) {
      orders.push_back("n/a");
    } else {
      orders.push_back(o);
      brute_ok = brute_ok && o >= order_min && o <= order_max;
    }
  }
  if (result.orders.empty() && !trivial) brute_ok = false;  // one level gives no order

  CsvSeries csv;
  csv.name = "ladder";
  csv.header = {"n", "reduced_vs_closed", "brute_force_error", "order"};
  for (std::size_t i = 0; i < result.levels.size(); ++i) {
    const auto& l = result.levels[i];
    std::string order = i == 0 ? "" : (trivial ? "n/a" : format_number(result.orders[i - 1]));
    csv.rows.push_back({std::to_string(l.n), format_number(l.reduced_vs_closed), format_number(l.brute_force_error),
                        order});
  }

  Json results;
  results["levels"] = levels;
  results["orders"] = orders;
  results["trivial"] = trivial;
  results["checks"] = Json{{"analytic_agreement", analytic_ok}, {"brute_force", brute_ok}};
  const bool ok = analytic_ok && brute_ok;
  RunReport r = make_report(config, ok ? "verified" : "failed", ok ? 0 : kErrorExit, std::move(results));
  r.series.push_back(std::move(csv));
  return r;
}

RunReport run_classify(const Json& config) {
  const exponents::RegimeReport rr =
      exponents::classify(static_cast<int>(get_integer(config, "classify.m")),
                          static_cast<int>(get_integer(config, "classify.k")), config_rational(config, "classify.mu"),
                          config_fiber_sign(config, "classify.fiber_sign"));
  return make_report(config, "classified", 0, to_json(rr));
}

RunReport run_regime_series(const Json& config) {
  const int m = static_cast<int>(get_integer(config, "series.m"));
  const int k = static_cast<int>(get_integer(config, "series.k"));
  const Rational from = config_rational(config, "series.mu_from"), to = config_rational(config, "series.mu_to");
  const long points = get_integer(config, "series.points");
  const int sign = config_fiber_sign(config, "series.fiber_sign");
  if (to <= from) throw ConfigError("series.mu_to: must exceed series.mu_from");

  CsvSeries csv;
  csv.name = "regime_series";
  csv.header = {"mu", "mu_exact", "p", "q", "varrho", "eta", "regime"};
  Json brackets = Json::array();
  std::optional<Rational> prev_mu, prev_varrho;
  for (long i = 0; i < points; ++i) {
    const Rational mu = from + (to - from) * Rational(i, points - 1);
    const exponents::Quadratics qd = exponents::quadratics(m, k, mu);
    const exponents::RegimeReport rr = exponents::classify(m, k, mu, sign);
    const bool has_eta = qd.eta != 0;
    csv.rows.push_back({format_number(exponents::to_double(mu)), sign_cell(mu),
                        has_eta ? format_number(exponents::to_double(qd.varpi / qd.eta)) : "",
                        has_eta ? format_number(exponents::to_double(qd.varrho / qd.eta)) : "",
                        format_number(exponents::to_double(qd.varrho)), format_number(exponents::to_double(qd.eta)),
                        exponents::to_string(rr.regime)});
    // q = varrho/eta changes sign where varrho does; eta only vanishes at mu_sc
    if (qd.varrho == 0) {
      brackets.push_back(Json{{"lo", exponents::to_double(mu)}, {"hi", exponents::to_double(mu)}});
    } else if (prev_varrho && *prev_varrho != 0 && (*prev_varrho > 0) != (qd.varrho > 0)) {
      brackets.push_back(Json{{"lo", exponents::to_double(*prev_mu)}, {"hi", exponents::to_double(mu)}});
    }
    prev_mu = mu;
    prev_varrho = qd.varrho;
  }

  const exponents::DomainD d = exponents::domain_D(m, k);
  Json roots = Json::array();
  for (const auto& root : {d.mu_minus, d.mu_plus}) {
    if (!root) continue;
    const bool inside = exponents::compare(from, *root) <= 0 && exponents::compare(to, *root) >= 0;
    if (inside) roots.push_back(Json{{"exact", root->to_string()}, {"value", root->to_double()}});
    if (d.double_root) break;
  }
  Json results{{"m", m}, {"k", k}, {"in_D", d.in_D}, {"q_zero_crossings", roots}, {"grid_brackets", brackets}};
  RunReport r = make_report(config, "series", 0, std::move(results));
  r.series.push_back(std::move(csv));
  return r;
}

RunReport run_eigen(const Json& config) {
  const metrics::BaseManifold base = build_base(config);
  const elliptic::PdeProblem pb = build_problem(config, base, get_number(config, "solver.lambda"));
  const elliptic::EigenResult e = elliptic::principal_eigenpair(pb, build_solve_options(config).eigen);
  Json results{{"problem", problem_json(pb)},
               {"lambda1", e.lambda1},
               {"residual", e.residual},
               {"iterations", e.iterations}};
  RunReport r = make_report(config, "converged", 0, std::move(results));
  r.series.push_back(field_series("u1", {{"u1", &e.u1}}));
  return r;
}

RunReport run_kappa(const Json& config) {
  const metrics::BaseManifold base = build_base(config);
  const elliptic::PdeProblem pb = build_problem(config, base, get_number(config, "solver.lambda"));
  const elliptic::KappaResult kr =
      elliptic::kappa_p(elliptic::EllipticOperator(pb), pb.p, build_solve_options(config).kappa);
  Json results{{"problem", problem_json(pb)},
               {"kappa", kr.kappa},
               {"beta_kappa", pb.beta * kr.kappa},
               {"residual", kr.residual},
               {"iterations", kr.iterations}};
  const int m = base.dim();
  if (m >= 3 && std::abs(pb.p - (m + 2.0) / (m - 2.0)) <= 1e-12) {
    const elliptic::SharpConstant sc = elliptic::sharp_constant(m);
    results["sharp_threshold"] = sc.threshold;
    results["critical_condition"] = elliptic::critical_condition(sc, kr.kappa);
  }
  RunReport r = make_report(config, "converged", 0, std::move(results));
  r.series.push_back(field_series("minimizer", {{"v", &kr.minimizer}}));
  return r;
}

RunReport run_solve(const Json& config) {
  const metrics::BaseManifold base = build_base(config);
  const double lambda = get_number(config, "solver.lambda");
  const elliptic::SolveOptions opts = build_solve_options(config);
  Json results;
  if (get_bool(config, "pde.enabled")) {
    const elliptic::PdeProblem pb = build_problem(config, base, lambda);
    const elliptic::SolveOutcome o = elliptic::solve_problem(pb, opts);
    results["problem"] = problem_json(pb);
    results["solve"] = to_json(o);
    RunReport r = make_report(config, elliptic::to_string(o.status), elliptic::exit_code(o.status), std::move(results));
    if (o.status == elliptic::SolveStatus::converged) r.series.push_back(field_series("solution", {{"u", &o.u}}));
    return r;
  }
  const geometry::FiberModel fiber = build_fiber(config);
  const Rational mu = config_rational(config, "mu");
  const elliptic::PbscOutcome o = elliptic::solve_pbsc(base, fiber, mu, lambda, opts);
  results["regime"] = to_json(o.regime);
  if (o.regime.regime != exponents::Regime::deferred && fiber.scalar_curvature() <= 0.0)
    results["problem"] = problem_json(elliptic::pbsc_problem(base, fiber, mu, lambda));
  results["solve"] = to_json(o.solve);
  results["alpha"] = o.alpha;
  results["scalar_check"] = o.scalar_check ? Json(*o.scalar_check) : Json(nullptr);
  RunReport r =
      make_report(config, elliptic::to_string(o.solve.status), elliptic::exit_code(o.solve.status), std::move(results));
  if (o.solve.status == elliptic::SolveStatus::converged)
    r.series.push_back(field_series("solution", {{"u", &o.solve.u}, {"psi", &o.psi}}));
  return r;
}

RunReport run_sweep(const Json& config) {
  const metrics::BaseManifold base = build_base(config);
  const std::vector<double> grid = sweep_grid(config);
  const elliptic::PdeProblem pb = build_problem(config, base, grid.empty() ? 0.0 : grid.front());
  const elliptic::SweepReport sr = elliptic::lambda_sweep(pb, grid, build_sweep_options(config));

  CsvSeries csv;
  csv.name = "sweep";
  csv.header = {"lambda", "success", "status", "route", "residual", "u_max", "refinement"};
  for (const auto& p : sr.points)
    csv.rows.push_back({format_number(p.lambda), p.status == elliptic::SolveStatus::converged ? "1" : "0",
                        elliptic::to_string(p.status), p.route, format_number(p.residual), format_number(p.u_max),
                        p.refinement ? "1" : "0"});
  Json results{{"problem", problem_json(pb)}, {"sweep", to_json(sr)}};
  RunReport r = make_report(config, "swept", 0, std::move(results));
  r.series.push_back(std::move(csv));
  return r;
}

RunReport run_schwarzschild(const Json& config) {
  metrics::SchwarzschildOptions opt;
  opt.s_lo = get_number(config, "schwarzschild.s_lo");
  opt.s_hi = get_number(config, "schwarzschild.s_hi");
  opt.n_s = static_cast<int>(get_integer(config, "schwarzschild.n_s"));
  opt.n_y = static_cast<int>(get_integer(config, "schwarzschild.n_y"));
  opt.y_period = get_number(config, "schwarzschild.y_period");
  opt.time_sign = static_cast<int>(get_integer(config, "schwarzschild.time_sign"));
  opt.fiber = build_fiber(config);
  opt.fiber_points = fiber_points(config);
  if (opt.time_sign != 1 && opt.time_sign != -1) throw ConfigError("schwarzschild.time_sign: must be 1 or -1");
  if (!(opt.s_hi > opt.s_lo)) throw ConfigError("schwarzschild.s_hi: must exceed schwarzschild.s_lo");
  const double mass = get_number(config, "schwarzschild.mass");
  if (!(std::sqrt(opt.s_lo) > 2.0 * mass)) throw ConfigError("schwarzschild.mass: needs r > 2 mass on the whole grid");
  const metrics::SchwarzschildNested nested =
      metrics::schwarzschild_nested([mass](double r) { return std::sqrt(1.0 - 2.0 * mass / r); }, opt);
  const double tol = get_number(config, "schwarzschild.tolerance");
  const bool ok = nested.max_mismatch <= tol;
  Json results{{"max_mismatch", nested.max_mismatch},
               {"inner_mu", exponents::to_string(nested.inner.mu)},
               {"outer_mu", exponents::to_string(nested.outer.mu)},
               {"assembled_dim", nested.assembled.dim()},
               {"grid_points", nested.assembled.grid().size()},
               {"pass", ok}};
  return make_report(config, ok ? "verified" : "failed", ok ? 0 : kErrorExit, std::move(results));
}

RunReport run_experiment(const Json& config) {
  const std::string command = get_string(config, "command");
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  if (command == "verify") r = run_verify(config);
  else if (command == "classify") r = run_classify(config);
  else if (command == "regime-series") r = run_regime_series(config);
  else if (command == "eigen") r = run_eigen(config);
  else if (command == "kappa") r = run_kappa(config);
  else if (command == "solve-sc") r = run_solve(config);
  else if (command == "sweep") r = run_sweep(config);
  else if (command == "schwarzschild") r = run_schwarzschild(config);
  else throw ConfigError("command: unknown '" + command + "'");
  if (get_bool(config, "report_timing")) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    r.document["timing"] = Json{{"wall_clock_seconds", elapsed.count()}};
  }
  return r;
}

}  // namespace bcwp::cli
