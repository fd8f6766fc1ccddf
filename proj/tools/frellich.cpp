// frellich: constants, sweeps, verification runs and norm dumps for
// constant-coefficient elliptic symbols in the plane.
//
// Exit codes: 0 success, 1 command-line usage, 2 invalid input (parse
// errors, bad domains or boxes), 3 non-elliptic symbol, 4 convergence
// failure, 5 a verification reported FAIL.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frellich/frellich.hpp"

namespace {

using namespace frellich;

enum exit_code : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_input = 2,
  exit_not_elliptic = 3,
  exit_convergence = 4,
  exit_verify_fail = 5,
};

/// Malformed flag values detected by the tool itself.
struct cli_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct run_config {
  std::string symbol;
  std::string family;
  std::vector<std::string> params;
  std::string domain;
  std::string halfspace;
  std::string box;
  std::string multiplier;
  int order = 0;  // 0: the symbol's half-order m
  double tol = default_quadrature_tol;
  double opt_tol = 1e-10;
  double grid_tol = 1e-8;
  std::size_t grid = 4096;
  std::size_t max_grid = std::size_t{1} << 20;
  std::size_t samples = 100000;
  std::uint64_t seed = default_seed;
  std::string out;
  std::string svg;
  std::string format;  // empty: subcommand default (CSV for sweep and dual)
  std::size_t points = 0;  // 0: subcommand default
  double beta_min = -0.99;
  double beta_max = 100.0;
  std::vector<double> betas;
  std::string sweep_param = "b";
  bool duality = false;
  bool sandwich = false;
  int m = 2;
  double eps = 0.01;
  double delta = 1e-3;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_doubles(const std::string& s, std::size_t expected, const std::string& what) {
  std::vector<double> v;
  for (const auto& item : split(s, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw cli_error(what + ": not a number: '" + item + "'");
    }
    if (used != item.size()) throw cli_error(what + ": not a number: '" + item + "'");
    v.push_back(x);
  }
  if (expected && v.size() != expected)
    throw cli_error(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
  return v;
}

bindings parse_params(const std::vector<std::string>& params) {
  bindings b;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw cli_error("--param expects name=value, got '" + p + "'");
    const auto v = parse_rational(p.substr(eq + 1));
    if (!v) throw cli_error("--param " + p.substr(0, eq) + ": not a rational number");
    b[p.substr(0, eq)] = *v;
  }
  return b;
}

std::string symbol_text(const run_config& cfg) {
  if (!cfg.symbol.empty()) return cfg.symbol;
  if (cfg.family.empty()) throw cli_error("give --symbol or --family");
  const auto f = family_from_string(cfg.family);
  if (!f) throw cli_error("unknown family '" + cfg.family + "'");
  if (*f == family::custom) throw cli_error("--family custom needs --symbol");
  return family_template(*f);
}

symbol_polynomial resolve_symbol(const run_config& cfg) {
  return parse(symbol_text(cfg), parse_params(cfg.params), 2);
}

direction_grid table_grid(const run_config& cfg) {
  direction_grid g;
  g.points = cfg.grid;
  g.max_points = std::max(cfg.max_grid, cfg.grid);
  g.tol = cfg.grid_tol;
  return g;
}

void emit(const run_config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw cli_error("cannot write " + cfg.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json symbol_json(const symbol_polynomial& P) {
  return {{"text", to_string(P)}, {"m", P.half_order()}, {"dimension", P.dimension()}};
}

// ---------------------------------------------------------------------------

int cmd_constants(const run_config& cfg) {
  const symbol_polynomial P = resolve_symbol(cfg);
  require_elliptic(P);
  const norm_table table = build_norm_table(P, table_grid(cfg));
  const constants_report r = compute_constants(P, table, cfg.opt_tol);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_constants_csv(os, r);
    emit(cfg, os.str());
  } else {
    json j;
    j["symbol"] = symbol_json(P);
    j["constants"] = constants_to_json(r);
    emit(cfg, dump(j));
  }
  return exit_ok;
}

int failure_exit(row_failure f) {
  switch (f) {
    case row_failure::ellipticity: return exit_not_elliptic;
    case row_failure::convergence: return exit_convergence;
    default: return exit_input;
  }
}

int cmd_sweep(const run_config& cfg) {
  if (cfg.family.empty()) throw cli_error("sweep needs --family example1|example2|custom");
  const auto f = family_from_string(cfg.family);
  if (!f) throw cli_error("unknown family '" + cfg.family + "'");
  if (*f == family::custom && cfg.symbol.empty()) throw cli_error("--family custom needs --symbol");
  if (*f != family::custom && !cfg.symbol.empty()) throw cli_error("--symbol is only used with --family custom");
  if (!cfg.params.empty()) throw cli_error("sweep varies the family parameter itself; drop --param");

  std::vector<double> betas = cfg.betas;
  if (betas.empty()) {
    std::vector<double> include;
    const double collapse = *f == family::example1 ? 1.0 : *f == family::example2 ? 3.0 : cfg.beta_min;
    if (*f != family::custom && collapse > cfg.beta_min && collapse < cfg.beta_max) include.push_back(collapse);
    betas = log_beta_grid(cfg.points ? cfg.points : 50, cfg.beta_min, cfg.beta_max, include);
  }
  const auto rows = sweep_family(*f, betas, table_grid(cfg), cfg.opt_tol, cfg.symbol, cfg.sweep_param);

  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.ok()) {
      ++failed;
      std::cerr << "warning: beta = " << format_number(r.beta) << ": " << r.error << '\n';
    }

  std::ostringstream os;
  if (cfg.format == "json")
    os << dump(sweep_to_json(rows));
  else
    write_sweep_csv(os, rows);
  emit(cfg, os.str());

  if (!cfg.svg.empty()) {
    std::ofstream s(cfg.svg, std::ios::binary);
    if (!s) throw cli_error("cannot write " + cfg.svg);
    const bool hat = *f == family::example2;
    write_sweep_svg(s, rows, hat ? "example2: s-hat and c-hat"
                        : *f == family::example1 ? "example1: s and c" : "Custom family: s and c",
                    hat ? "s-hat(beta)" : "s(beta)", hat ? "c-hat(beta)" : "c(beta)");
  }
  if (!rows.empty() && failed == rows.size()) return failure_exit(rows.front().failure);
  return exit_ok;
}

domain resolve_domain(const run_config& cfg) {
  if (!cfg.halfspace.empty() && !cfg.domain.empty()) throw cli_error("give either --halfspace or --domain");
  std::string spec = cfg.domain.empty() ? "unit-square" : cfg.domain;
  if (!cfg.halfspace.empty()) spec = "halfspace:" + cfg.halfspace;
  if (spec == "unit-square") return convex_polytope::unit_square();
  if (spec.rfind("halfspace:", 0) == 0)
    return half_space::from_direction(parse_doubles(spec.substr(10), 2, "--halfspace"));
  return read_polytope_json(spec);
}

std::vector<interval> resolve_box(const run_config& cfg, const domain& dom) {
  if (!cfg.box.empty()) {
    const auto parts = split(cfg.box, ',');
    if (parts.size() != 4) throw cli_error("--box expects a1,b1,a2,b2");
    std::vector<rational> v;
    for (const auto& p : parts) {
      const auto r = parse_rational(p);
      if (!r) throw cli_error("--box: not a rational number: '" + p + "'");
      v.push_back(*r);
    }
    return {{v[0], v[1]}, {v[2], v[3]}};
  }
  if (const auto* h = std::get_if<half_space>(&dom)) {
    // the unit box on the inner side of every axis: ν·x ≥ 0 at each corner
    std::vector<interval> b;
    for (double c : h->normal()) b.push_back(c >= 0.0 ? interval{0, 1} : interval{-1, 0});
    return b;
  }
  const auto& p = std::get<convex_polytope>(dom);
  const std::vector<double> corner_lo{0.0, 0.0}, corner_hi{1.0, 1.0}, c01{0.0, 1.0}, c10{1.0, 0.0};
  if (p.slack(corner_lo) >= 0 && p.slack(corner_hi) >= 0 && p.slack(c01) >= 0 && p.slack(c10) >= 0)
    return {{0, 1}, {0, 1}};
  // square inscribed in the Chebyshev ball
  const double r = p.inradius() / std::sqrt(2.0);
  const auto& c = p.interior_point();
  return {{from_double(c[0] - r), from_double(c[0] + r)}, {from_double(c[1] - r), from_double(c[1] + r)}};
}

json box_json(const std::vector<interval>& box) {
  json a = json::array();
  for (const auto& iv : box) a.push_back({to_string(iv.lo), to_string(iv.hi)});
  return a;
}

int cmd_verify(const run_config& cfg) {
  const symbol_polynomial P = resolve_symbol(cfg);
  require_elliptic(P);
  json j;
  j["symbol"] = symbol_json(P);
  bool pass = false;

  if (cfg.duality) {
    const finsler_norm norm(P);
    const duality_report r = symbol_duality_check(norm, cfg.samples, cfg.seed);
    j["check"] = "duality";
    j["report"] = duality_to_json(r);
    pass = r.pass;
  } else if (cfg.sandwich) {
    const auto f = family_from_string(cfg.family);
    if (!f || *f == family::custom) throw cli_error("--sandwich needs --family example1|example2");
    const bindings b = parse_params(cfg.params);
    const auto it = b.find("b");
    if (it == b.end()) throw cli_error("--sandwich needs --param b=<beta>");
    const norm_table table = build_norm_table(P, table_grid(cfg));
    const sandwich_report r = sandwich_bounds_check(*f, to_double(it->second), table, cfg.points ? cfg.points : 4096);
    j["check"] = "sandwich";
    j["report"] = sandwich_to_json(r);
    pass = r.pass;
  } else {
    const domain dom = resolve_domain(cfg);
    const auto box = resolve_box(cfg, dom);
    std::optional<polynomial> q;
    if (!cfg.multiplier.empty()) q = parse_polynomial(cfg.multiplier, parse_params(cfg.params), 2);
    const test_function u(box, cfg.order ? cfg.order : P.half_order(), q);
    const norm_table table = build_norm_table(P, table_grid(cfg));
    quotient_report r;
    if (const auto* h = std::get_if<half_space>(&dom)) {
      r = verify_halfspace(P, table, *h, u, cfg.tol);
    } else {
      const constants_report k = compute_constants(P, table, cfg.opt_tol);
      r = verify_convex(P, table, std::get<convex_polytope>(dom), u, k, cfg.tol);
      j["constants"] = constants_to_json(k);
    }
    j["check"] = r.inequality;
    j["domain"] = domain_to_json(dom);
    j["box"] = box_json(box);
    j["vanishing_order"] = u.vanishing_order();
    j["report"] = report_to_json(r);
    pass = r.pass;
  }
  j["tolerances"] = {{"quadrature", cfg.tol}, {"optimization", cfg.opt_tol}, {"grid", cfg.grid_tol}};
  j["grid"] = cfg.grid;
  j["seed"] = cfg.seed;
  j["result"] = pass ? "PASS" : "FAIL";
  emit(cfg, dump(j));
  if (!pass) {
    std::cerr << "verification FAILED";
    if (!cfg.out.empty()) std::cerr << "; report written to " << cfg.out;
    std::cerr << '\n';
    return exit_verify_fail;
  }
  return exit_ok;
}

int cmd_dual(const run_config& cfg) {
  const symbol_polynomial P = resolve_symbol(cfg);
  require_elliptic(P);
  const norm_table table = build_norm_table(P, table_grid(cfg));
  const std::size_t n = cfg.points ? cfg.points : 360;
  if (cfg.format == "json") {
    json j;
    j["symbol"] = symbol_json(P);
    json meta = table_to_json(table);
    meta.erase("fstar");
    j["table"] = meta;
    std::vector<double> a, fs, fss, f;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = two_pi * static_cast<double>(i) / static_cast<double>(n);
      a.push_back(t);
      fs.push_back(table.norm().dual_angle(t));
      fss.push_back(table.biconjugate_angle(t).value);
      f.push_back(table.norm().F_angle(t));
    }
    j["angle"] = a;
    j["fstar"] = fs;
    j["fstarstar"] = fss;
    j["f"] = f;
    emit(cfg, dump(j));
  } else {
    std::ostringstream os;
    write_dual_csv(os, table, n);
    emit(cfg, os.str());
  }
  return exit_ok;
}

int cmd_quotient1d(const run_config& cfg) {
  const minimizer_family g{cfg.m, cfg.eps};
  const double closed = quotient_closed_form(cfg.m, cfg.eps);
  const double numeric = quotient_numeric(cfg.m, cfg.eps, cfg.delta);
  const rational A = rellich_constant(cfg.m);
  if (cfg.format == "csv") {
    emit(cfg, "m,eps,exponent,closed_form,numeric,A\n" + std::to_string(cfg.m) + ',' + format_number(cfg.eps) +
                  ',' + format_number(g.exponent()) + ',' + format_number(closed) + ',' + format_number(numeric) +
                  ',' + to_string(A) + '\n');
  } else {
    json j;
    j["m"] = cfg.m;
    j["eps"] = cfg.eps;
    j["exponent"] = g.exponent();
    j["closed_form"] = closed;
    j["numeric"] = numeric;
    j["delta"] = cfg.delta;
    j["A"] = to_string(A);
    j["A_value"] = to_double(A);
    emit(cfg, dump(j));
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// Config file: a JSON object whose keys are long flag names. Values are
// turned into extra arguments for every flag not given on the command line.

std::vector<std::string> config_args(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw cli_error("cannot open config file " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw cli_error("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw cli_error("config file must hold a JSON object");

  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));

  auto scalar = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>(), 17);
    throw cli_error("config values must be strings, numbers, booleans or arrays of those");
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config" || given.count(key)) continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(scalar(v));
      }
    } else {
      extra.push_back(flag);
      extra.push_back(scalar(value));
    }
  }
  return extra;
}

void add_symbol_options(CLI::App* sub, run_config& cfg) {
  sub->add_option("--symbol", cfg.symbol, "Symbol polynomial in x1, x2, e.g. \"x1^4 + 2*x1^2*x2^2 + x2^4\"");
  sub->add_option("--family", cfg.family, "example1 | example2 | custom")
      ->check(CLI::IsMember({"example1", "example2", "custom"}));
  sub->add_option("--param", cfg.params, "Parameter binding name=value (repeatable)");
}

void add_common_options(CLI::App* sub, run_config& cfg) {
  sub->add_option("--config", "JSON config file; command-line flags take precedence");
  sub->add_option("--grid", cfg.grid, "Initial norm-table size (power of two)")->check(CLI::PositiveNumber);
  sub->add_option("--max-grid", cfg.max_grid, "Norm-table doubling cap")->check(CLI::PositiveNumber);
  sub->add_option("--grid-tol", cfg.grid_tol, "Agreement required between successive tables")
      ->check(CLI::PositiveNumber);
  sub->add_option("--opt-tol", cfg.opt_tol, "Tolerance of the sphere optimizations")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "Write the output here instead of stdout");
  sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  run_config cfg;
  CLI::App app{"Finsler–Rellich constants and inequality checks for elliptic symbols", "frellich"};
  app.require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "lambda, Lambda, mu_H, M_H, A(m), s and c for one symbol");
  add_symbol_options(constants, cfg);
  add_common_options(constants, cfg);

  auto* sweep = app.add_subcommand("sweep", "s(beta) and c(beta) over a beta grid (CSV, optional SVG)");
  add_symbol_options(sweep, cfg);
  add_common_options(sweep, cfg);
  sweep->add_option("--points", cfg.points, "Log-spaced grid size (default 50)");
  sweep->add_option("--beta-min", cfg.beta_min, "Smallest beta (> -1)");
  sweep->add_option("--beta-max", cfg.beta_max, "Largest beta");
  sweep->add_option("--betas", cfg.betas, "Explicit beta values (overrides the log grid)")->delimiter(',');
  sweep->add_option("--sweep-param", cfg.sweep_param, "Parameter varied in a custom family (default b)");
  sweep->add_option("--svg", cfg.svg, "Write an SVG plot of s (solid) and c (dashed)");

  auto* verify = app.add_subcommand("verify", "Check a Rellich inequality, the duality inequality or the sandwich bounds");
  add_symbol_options(verify, cfg);
  add_common_options(verify, cfg);
  verify->add_option("--domain", cfg.domain, "unit-square | halfspace:nx,ny | path to polytope JSON");
  verify->add_option("--halfspace", cfg.halfspace, "Inward normal nx,ny of a half-space through 0");
  verify->add_option("--box", cfg.box, "Test-function support a1,b1,a2,b2 (rationals)");
  verify->add_option("--order", cfg.order, "Vanishing order of the bump (default m)")->check(CLI::PositiveNumber);
  verify->add_option("--multiplier", cfg.multiplier, "Polynomial multiplying the bump");
  verify->add_option("--tol", cfg.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  verify->add_flag("--duality", cfg.duality, "Sample H(xi) F*(w)^2m >= (w.xi)^2m instead");
  verify->add_flag("--sandwich", cfg.sandwich, "Check the F*^2m sandwich bounds of the example families instead");
  verify->add_option("--samples", cfg.samples, "Random pairs for --duality")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Random seed for --duality");
  verify->add_option("--points", cfg.points, "Circle grid for --sandwich (default 4096)");

  auto* dual = app.add_subcommand("dual", "Dump F*, F** and F at equally spaced angles");
  add_symbol_options(dual, cfg);
  add_common_options(dual, cfg);
  dual->add_option("--points", cfg.points, "Number of angles (default 360)");

  auto* q1d = app.add_subcommand("quotient1d", "One-dimensional quotient of t^((2m-1)/2+eps)");
  q1d->add_option("--config", "JSON config file; command-line flags take precedence");
  q1d->add_option("--m", cfg.m, "Half-order m")->check(CLI::PositiveNumber);
  q1d->add_option("--eps", cfg.eps, "eps > 0");
  q1d->add_option("--delta", cfg.delta, "Lower cutoff of the numeric quadrature");
  q1d->add_option("--out", cfg.out, "Write the output here instead of stdout");
  q1d->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto extra = config_args(args);
    args.insert(args.end(), extra.begin(), extra.end());
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*constants) return cmd_constants(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*dual) return cmd_dual(cfg);
    if (*q1d) return cmd_quotient1d(cfg);
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_input;
  } catch (const ellipticity_error& e) {
    std::cerr << "not elliptic: " << e.what() << '\n';
    return exit_not_elliptic;
  } catch (const convergence_error& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return exit_convergence;
  } catch (const frellich::error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_input;
  }
  return exit_usage;
}
