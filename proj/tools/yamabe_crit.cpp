#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yamabe/bubble.hpp"
#include "yamabe/criterion.hpp"
#include "yamabe/energy.hpp"
#include "yamabe/error.hpp"
#include "yamabe/group.hpp"
#include "yamabe/kernels.hpp"
#include "yamabe/quadrature.hpp"
#include "yamabe/report.hpp"
#include "yamabe/sphere.hpp"

namespace {

using namespace yamabe;

constexpr double kPi = 3.14159265358979323846;

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

SpherePoint base_point(int n) {
  std::vector<double> e0(n + 1, 0.0);
  e0[0] = 1.0;
  return SpherePoint{e0};
}

int resolved_resolution(const RunConfig& cfg, int command_default) {
  if (cfg.resolution == 0) return command_default;
  if (cfg.resolution < 0) fail(errc::domain, "resolution must be positive");
  return cfg.resolution;
}

void emit(const RunConfig& cfg, const Table& table, const std::string& default_format) {
  const std::string fmt = cfg.format.empty() ? default_format : cfg.format;
  if (fmt == "csv") {
    write_output(cfg.out, render_csv(table));
  } else if (fmt == "json") {
    write_output(cfg.out, render_json(table));
  } else {
    fail(errc::domain, "unsupported format '" + fmt + "' for this command");
  }
}

// ---------------------------------------------------------------------------

int cmd_criterion(const RunConfig& cfg) {
  if (cfg.n_values.empty()) fail(errc::domain, "criterion needs --n");
  if (cfg.m_values.empty()) fail(errc::domain, "criterion needs --m");
  Table t;
  t.meta = {{"command", std::string("criterion")},
            {"n", join_ints(cfg.n_values)},
            {"m", join_ints(cfg.m_values)}};
  t.columns = {"n", "m", "mu", "mu_hat", "a_nm", "positive"};
  for (int n : cfg.n_values) {
    for (int m : cfg.m_values) {
      const CriterionResult c = evaluate_criterion(n, m);
      t.rows.push_back({std::int64_t(c.n), std::int64_t(c.m), c.mu, c.mu_hat, c.a_nm,
                        c.positive});
    }
  }
  emit(cfg, t, "csv");
  return 0;
}

int cmd_mn_table(const RunConfig& cfg) {
  std::vector<int> ns = cfg.n_values;
  if (ns.empty()) {
    for (int n = 3; n <= 30; ++n) ns.push_back(n);
  }
  Table t;
  t.meta = {{"command", std::string("mn-table")}, {"n", join_ints(ns)}};
  t.columns = {"n", "minimal_m", "a_at_minimal", "a_below"};
  for (int n : ns) {
    const auto mm = minimal_m(n, 10000);
    if (!mm) fail(errc::numerical, "no positive interaction value up to the scan bound");
    t.rows.push_back({std::int64_t(n), std::int64_t(*mm), a_nm(n, *mm), a_nm(n, *mm - 1)});
  }
  emit(cfg, t, "csv");
  return 0;
}

int cmd_energy(const RunConfig& cfg) {
  if (cfg.n_values.empty()) fail(errc::domain, "energy needs --n");
  if (cfg.m_values.empty()) fail(errc::domain, "energy needs --m");
  const std::vector<double> betas =
      cfg.beta_grid.empty() ? default_beta_grid() : cfg.beta_grid;
  const int res = resolved_resolution(cfg, 48);
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::biplanar, res);

  Table t;
  t.meta = {{"command", std::string("energy")},
            {"n", join_ints(cfg.n_values)},
            {"m", join_ints(cfg.m_values)},
            {"beta_count", std::int64_t(betas.size())},
            {"resolution", std::int64_t(res)},
            {"mc_samples", std::int64_t(cfg.mc_samples)},
            {"seed", std::int64_t(cfg.seed)}};
  t.columns = {"n",      "m",        "beta",        "h1_norm_sq", "h1_norm_sq_direct",
               "lp_mass", "nehari_t", "quotient",    "energy",     "bound",
               "margin",  "certified", "agreement",  "any_certified", "best_beta",
               "best_margin", "deficit_slope"};
  const bool with_mc = cfg.mc_samples > 0;
  if (with_mc) {
    t.columns.push_back("mc_mass");
    t.columns.push_back("mc_mass_se");
  }

  for (int n : cfg.n_values) {
    for (int m : cfg.m_values) {
      const SweepResult sweep = certification_sweep(n, m, betas, rule);
      for (const EnergyReport& r : sweep.reports) {
        std::vector<Cell> row = {std::int64_t(r.n),
                                 std::int64_t(r.m),
                                 r.beta,
                                 r.h1_norm_sq,
                                 r.h1_norm_sq_direct,
                                 r.lp_mass,
                                 r.nehari_t,
                                 r.quotient,
                                 r.energy,
                                 r.bound,
                                 (r.bound - r.energy) / r.bound,
                                 r.certified,
                                 r.agreement,
                                 sweep.any_certified,
                                 sweep.best_beta,
                                 sweep.best_margin,
                                 sweep.deficit_slope};
        if (with_mc) {
          const SymmetryGroup G = build_gamma_m(n, m);
          const SignedOrbit orb = orbit(G, base_point(n));
          const NodalAnsatz w{n, r.beta, orb};
          const double ts = 2.0 * n / (n - 2.0);
          const QuadratureRule mc =
              make_rule(QuadratureRule::Kind::monte_carlo, cfg.mc_samples, cfg.seed);
          const McResult est = integrate_mc(
              n, [&](const SpherePoint& p) { return std::pow(std::abs(w.value(p)), ts); },
              mc);
          row.push_back(est.estimate);
          row.push_back(est.std_error);
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  emit(cfg, t, "csv");
  return 0;
}

int cmd_figure1(const RunConfig& cfg) {
  const int samples = resolved_resolution(cfg, 1000);
  const double x_max = 0.35;
  const std::string fmt = cfg.format.empty() ? "svg" : cfg.format;

  std::vector<std::pair<std::string, Cell>> meta = {
      {"command", std::string("figure1")},
      {"samples", std::int64_t(samples)},
      {"x_max", x_max}};

  if (fmt == "svg") {
    std::vector<SvgSeries> series;
    const int n0s[3] = {3, 4, 5};
    const char* colors[3] = {"#c03030", "#2060c0", "#309030"};
    for (int k = 0; k < 3; ++k) {
      SvgSeries s;
      s.label = "n0=" + std::to_string(n0s[k]);
      s.color = colors[k];
      for (int i = 1; i <= samples; ++i) {
        const double x = x_max * i / samples;
        s.points.emplace_back(x, f_n0(n0s[k], x));
      }
      series.push_back(std::move(s));
    }
    std::vector<SvgGuide> guides = {{1.0 / 7.0, "1/7"}, {1.0 / 6.0, "1/6"}, {1.0 / 5.0, "1/5"}};
    write_output(cfg.out, render_line_svg("f_n0(x) = (2x)^(1/n0) - sqrt(2) sin(pi x)", "x",
                                          "f_n0(x)", series, guides, meta));
    return 0;
  }

  Table t;
  t.meta = std::move(meta);
  t.columns = {"x", "f3", "f4", "f5"};
  for (int i = 1; i <= samples; ++i) {
    const double x = x_max * i / samples;
    t.rows.push_back({x, f_n0(3, x), f_n0(4, x), f_n0(5, x)});
  }
  emit(cfg, t, "csv");
  return 0;
}

// ---------------------------------------------------------------------------

struct Claim {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

Claim value_claim(std::string name, double measured, double expected, double tol,
                  std::string detail = "") {
  Claim c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = expected;
  c.tolerance = tol;
  c.pass = std::abs(measured - expected) <= tol;
  c.detail = std::move(detail);
  return c;
}

Claim positivity_claim(std::string name, double measured, std::string detail = "") {
  Claim c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = 0.0;
  c.tolerance = 0.0;
  c.pass = measured > 0.0;
  c.detail = std::move(detail);
  return c;
}

int cmd_check_claims(const RunConfig& cfg, double omega_scale) {
  const int res = resolved_resolution(cfg, 48);
  const QuadratureRule zonal = make_rule(QuadratureRule::Kind::zonal, res);
  const QuadratureRule grid_rule = make_rule(QuadratureRule::Kind::biplanar, res);
  std::vector<Claim> claims;

  claims.push_back(value_claim("interaction_constant_5_6", a_nm(5, 6), 1.09907, 1e-4));
  claims.push_back(value_claim("interaction_constant_5_5", a_nm(5, 5), -0.69601, 1e-4));
  claims.push_back(value_claim("interaction_constant_6_5", a_nm(6, 5), -0.2, 1e-10));

  {
    double maxdev = 0.0;
    for (int m = 2; m <= 100; ++m) {
      const double closed = (m * m - 1.0) / 6.0 - m;
      maxdev = std::max(maxdev, std::abs(a_nm(4, m) - closed));
    }
    claims.push_back(value_claim("interaction_closed_form_dim4", maxdev, 0.0, 1e-12,
                                 "max |a_{4,m} - ((m^2-1)/6 - m)| over m=2..100"));
  }
  {
    // tolerance is absolute for |a| <= 1 and relative beyond: a_{n,m} reaches ~3.5e5
    // at (10,20), where absolute 1e-10 would sit below double rounding of the sums
    double maxdev = 0.0, max_int_dev = 0.0;
    for (int n = 3; n <= 10; ++n) {
      for (int m = 2; m <= 20; ++m) {
        const CriterionResult c = evaluate_criterion(n, m);
        const double a = a_nm(n, m);
        maxdev = std::max(maxdev,
                          std::abs((c.mu - c.mu_hat) / m - a) / std::max(1.0, std::abs(a)));
        max_int_dev =
            std::max(max_int_dev, std::abs(c.mu_hat - double(m) * m) / (double(m) * m));
      }
    }
    claims.push_back(value_claim(
        "orbit_sum_consistency", maxdev, 0.0, 1e-10,
        "max scaled |(mu - mu_hat)/m - a_nm| over n=3..10, m=2..20; max rel mu_hat/m^2 dev " +
            format_double(max_int_dev)));
  }
  {
    static const int want[28] = {9, 7, 6, 6, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5,
                                 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5};
    int mismatches = 0;
    std::string got;
    for (int n = 3; n <= 30; ++n) {
      const auto mm = minimal_m(n, 100);
      const int v = mm ? *mm : -1;
      if (!got.empty()) got += ',';
      got += std::to_string(v);
      if (v != want[n - 3]) ++mismatches;
    }
    claims.push_back(
        value_claim("threshold_table", double(mismatches), 0.0, 0.0, "m_n for n=3..30: " + got));
  }
  {
    const SineGapConstants cc = sine_gap_constants();
    claims.push_back(value_claim("gap_constant_lower", cc.lower, 0.0593835935, 1e-6));
    claims.push_back(value_claim("gap_constant_limit", cc.limit, 0.111203105, 1e-6));
    double min_margin = 1e300;
    int argmin = -1;
    for (int m = 9; m <= 1000; ++m) {
      const double v = sine_gap_margin(m);
      if (v < min_margin) {
        min_margin = v;
        argmin = m;
      }
    }
    claims.push_back(positivity_claim("gap_margin_positive", min_margin,
                                      "min over m=9..1000 at m=" + std::to_string(argmin)));
  }
  {
    double min_val = 1e300;
    for (int n0 : {5, 4, 3}) {
      const double hi = 1.0 / (n0 == 5 ? 5 : (n0 == 4 ? 6 : 7));
      for (int i = 1; i <= 10000; ++i) {
        min_val = std::min(min_val, f_n0(n0, hi * i / 10000.0));
      }
    }
    claims.push_back(positivity_claim("figure_positivity", min_val,
                                      "min of f_5 on (0,1/5], f_4 on (0,1/6], f_3 on (0,1/7]"));
  }
  {
    int violations = 0;
    for (int m = 2; m <= 100; ++m) {
      if (!a3_recursion_check(m)) ++violations;
    }
    claims.push_back(value_claim("recursion_lower_bound_dim3", double(violations), 0.0, 0.0,
                                 "a_{3,m+1} >= a_{3,m} + sqrt(2)(1/2 - sqrt(2)/2 + "
                                 "csc(pi/(m+1)) - csc(pi/m)), m=2..100"));
  }
  {
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
      const SphereConstants k = make_constants(n);
      for (double beta : {1.5, 3.0, 10.0}) {
        const Bubble b{n, base_point(n), beta};
        const double mass = integrate_zonal(
            n, [&](double r) { return std::pow(bubble_value(b, r), k.two_star); }, zonal,
            std::clamp(0.5 * std::sqrt(beta - 1.0), 1e-7, 0.35));
        worst = std::max(worst, std::abs(mass / k.omega_n - 1.0) / 1e-6);
      }
      const Bubble b{n, base_point(n), 1.01};
      const double mass = integrate_zonal(
          n, [&](double r) { return std::pow(bubble_value(b, r), k.two_star); }, zonal, 0.05);
      worst = std::max(worst, std::abs(mass / k.omega_n - 1.0) / 1e-4);
    }
    Claim c;
    c.name = "mass_normalization";
    c.measured = worst;
    c.expected = 1.0;
    c.tolerance = 1.0;
    c.pass = worst <= 1.0;
    c.detail = "max |mass/vol - 1| over n=3,4,5 scaled by tolerance "
               "(1e-6 at beta in {1.5,3,10}, 1e-4 at beta=1.01)";
    claims.push_back(c);
  }
  {
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
      const SolutionIdentityReport rep = solution_identity_check(n, 2.0, zonal, omega_scale);
      worst = std::max(worst, std::abs(rep.mass / rep.mass_expected - 1.0));
      worst = std::max(worst, std::abs(rep.h1 / rep.h1_expected - 1.0));
    }
    claims.push_back(value_claim("solution_identity", worst, 0.0, 1e-7,
                                 "bubble mass = vol(S^n) and H1 norm = a_n vol(S^n), "
                                 "n=3,4,5 at beta=2"));
  }
  {
    double worst = 0.0, worst_var = 0.0;
    std::string detail;
    for (int n : {3, 4, 5}) {
      const double band = (n == 5) ? 0.03 : 0.02;
      const ConvergenceReport rep =
          ball_concentration_convergence(n, {1e-2, 1e-3, 1e-4}, 0.5, zonal);
      worst = std::max(worst, std::abs(rep.rows[1].ratio - 1.0) / band);
      worst_var = std::max(worst_var, rep.complement_variation);
      if (!detail.empty()) detail += "; ";
      detail += "n=" + std::to_string(n) + " ratio " + format_double(rep.rows[1].ratio);
    }
    Claim c;
    c.name = "ball_concentration";
    c.measured = worst;
    c.expected = 1.0;
    c.tolerance = 1.0;
    c.pass = worst <= 1.0 && worst_var < 2.0;
    c.detail = detail + "; complement scaling variation " + format_double(worst_var);
    claims.push_back(c);
  }
  for (auto [n, m] : {std::pair<int, int>{3, 9}, {4, 7}}) {
    const SlopeReport s = norm_expansion_slope(n, m, grid_rule);
    claims.push_back(value_claim(
        "norm_expansion_slope_" + std::to_string(n) + "_" + std::to_string(m), s.rel_error,
        0.0, 5e-2, "Richardson limit / predicted - 1, measured order " + format_double(s.qhat)));
  }
  for (auto [n, m] : {std::pair<int, int>{3, 9}, {4, 7}}) {
    const SweepResult sweep = certification_sweep(n, m, default_beta_grid(), grid_rule);
    Claim c;
    c.name = "certification_" + std::to_string(n) + "_" + std::to_string(m);
    c.measured = sweep.best_margin;
    c.expected = 0.0;
    c.tolerance = 0.0;
    c.pass = sweep.any_certified && sweep.best_margin > 0.0;
    c.detail = "best beta " + format_double(sweep.best_beta) + ", deficit slope " +
               format_double(sweep.deficit_slope);
    claims.push_back(c);
  }

  bool all_pass = true;
  for (const Claim& c : claims) all_pass = all_pass && c.pass;

  Table t;
  t.meta = {{"command", std::string("check-claims")},
            {"resolution", std::int64_t(res)},
            {"seed", std::int64_t(cfg.seed)},
            {"omega_scale", omega_scale},
            {"kernel_backend", kernels::backend_name(kernels::active_backend())},
            {"all_pass", all_pass}};
  t.columns = {"name", "pass", "measured", "expected", "tolerance", "detail"};
  for (const Claim& c : claims) {
    t.rows.push_back({c.name, c.pass, c.measured, c.expected, c.tolerance, c.detail});
  }
  emit(cfg, t, "json");
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int exit_code_for(errc code) {
  switch (code) {
    case errc::domain: return 2;
    case errc::io: return 4;
    default: return 3;
  }
}

int run(int argc, char** argv) {
  // the config file (flag or environment) seeds the defaults; flags then override
  std::string config_path;
  if (const char* env = std::getenv("YAMABE_CRIT_CONFIG")) config_path = env;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path, cfg);

  CLI::App app{"Symmetry criterion and energy certification for sign-changing "
               "conformal metrics on round spheres"};
  app.require_subcommand(1);

  std::string n_spec, m_spec, beta_spec, config_echo;
  app.add_option("--config", config_echo, "JSON config file (or set YAMABE_CRIT_CONFIG)");
  app.add_option("--n", n_spec, "dimension(s): '5', '3,4,5' or '3..30'");
  app.add_option("--m", m_spec, "rotation count(s): '9', '6,7' or '2..12'");
  app.add_option("--beta-grid", beta_spec, "comma list of concentration parameters > 1");
  app.add_option("--resolution", cfg.resolution, "quadrature/sampling density (0 = default)");
  app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo cross-check sample count");
  app.add_option("--seed", cfg.seed, "RNG seed for Monte Carlo paths");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv | json (figure1 also: svg)");

  CLI::App* sc_criterion =
      app.add_subcommand("criterion", "Interaction sums mu, mu_hat and a_{n,m} per orbit");
  CLI::App* sc_mn =
      app.add_subcommand("mn-table", "Smallest m with positive interaction, per dimension");
  CLI::App* sc_energy =
      app.add_subcommand("energy", "Nehari energy of the signed bubble superposition");
  CLI::App* sc_figure =
      app.add_subcommand("figure1", "Threshold gap functions f_n0 with guide lines");
  CLI::App* sc_check =
      app.add_subcommand("check-claims", "Run the pinned numerical claims and report pass/fail");
  double omega_scale = 1.0;
  sc_check->add_option("--self-test-omega-scale", omega_scale)->group("");
  for (CLI::App* sc : {sc_criterion, sc_mn, sc_energy, sc_figure, sc_check}) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!n_spec.empty()) cfg.n_values = parse_int_list(n_spec);
  if (!m_spec.empty()) cfg.m_values = parse_int_list(m_spec);
  if (!beta_spec.empty()) cfg.beta_grid = parse_double_list(beta_spec);
  for (double b : cfg.beta_grid) {
    if (!(b > 1.0)) fail(errc::domain, "beta grid values must exceed 1");
  }

  if (sc_criterion->parsed()) return cmd_criterion(cfg);
  if (sc_mn->parsed()) return cmd_mn_table(cfg);
  if (sc_energy->parsed()) return cmd_energy(cfg);
  if (sc_figure->parsed()) return cmd_figure1(cfg);
  return cmd_check_claims(cfg, omega_scale);
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const yamabe::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
