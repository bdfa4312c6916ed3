#include "fracbs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracbs/closed_form.hpp"
#include "fracbs/errors.hpp"
#include "fracbs/harness.hpp"
#include "fracbs/mc_oracle.hpp"
#include "fracbs/report.hpp"
#include "fracbs/stability.hpp"
#include "fracbs/theta_scheme.hpp"

namespace fracbs::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_exact(v[i]);
  return s;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw UsageError(key + ": " + what);
}

bool is_command(const std::string& c) {
  const auto& all = commands();
  return std::find(all.begin(), all.end(), c) != all.end();
}

std::vector<std::pair<int, int>> parse_grids(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    require(x != std::string::npos, "grids", "expected entries of the form <n>x<N>, got '" + item + "'");
    try {
      std::size_t used_n = 0, used_N = 0;
      const int n = std::stoi(item.substr(0, x), &used_n);
      const int N = std::stoi(item.substr(x + 1), &used_N);
      require(used_n == x && used_N == item.size() - x - 1, "grids", "malformed entry '" + item + "'");
      require(n >= 3 && N >= 1, "grids", "entries need n >= 3 and N >= 1");
      out.emplace_back(n, N);
    } catch (const std::logic_error&) {
      throw UsageError("grids: malformed entry '" + item + "'");
    }
  }
  require(!out.empty(), "grids", "no grid given");
  return out;
}

// Fills command-dependent defaults for keys the user did not set.
void apply_defaults(RunConfig& cfg, const CLI::App& app, const std::string& theta_text) {
  auto given = [&](const char* name) { return app.count(name) > 0; };
  const std::string& c = cfg.command;

  if (c == "converge") {
    const bool space = cfg.variable == "space";
    if (!given("--T")) cfg.market.T = 1.0;
    if (!given("--x_min")) cfg.grid.x_min = -1.0;
    if (!given("--x_max")) cfg.grid.x_max = space ? 10.0 : 1.0;
    if (!given("--n")) cfg.grid.n = space ? 200 : 10;
    if (!given("--N")) cfg.grid.N = space ? 20 : 0;
    if (cfg.alphas.empty())
      cfg.alphas = given("--alpha") ? std::vector<double>{cfg.market.alpha}
                                    : std::vector<double>{0.99, 0.7, 0.5, 0.3, 0.1};
  } else if (c == "mc-compare" || c == "alpha-sweep") {
    if (!given("--n")) cfg.grid.n = 1000;
    if (!given("--N")) cfg.grid.N = 140;
    if (c == "alpha-sweep" && !given("--alpha")) cfg.market.alpha = 0.5;
    if (cfg.alphas.empty())
      cfg.alphas = c == "alpha-sweep" && !given("--alpha") ? std::vector<double>{0.3, 0.5, 0.7, 0.9}
                                                           : std::vector<double>{cfg.market.alpha};
    if (c == "alpha-sweep" && cfg.maturities.empty()) cfg.maturities = {0.5, 1.0, 2.0, 4.0};
  } else if (c == "error-grid") {
    if (cfg.thetas.empty())
      cfg.thetas = given("--theta") && theta_text != "optimal"
                       ? std::vector<double>{std::stod(theta_text)}
                       : std::vector<double>{0.0, 0.25, 0.5, 0.6, 0.9};
    if (cfg.grids.empty()) cfg.grids = "5000x140,3000x100,500x50,100x20,200x200,50x1300";
  }

  if (theta_text.empty()) {
    cfg.theta_optimal = c == "mc-compare" || c == "alpha-sweep";
    if (!cfg.theta_optimal) cfg.theta = c == "converge" ? 0.0 : 0.5;
  } else if (theta_text == "optimal") {
    cfg.theta_optimal = true;
  } else {
    std::size_t used = 0;
    try {
      cfg.theta = std::stod(theta_text, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    require(used == theta_text.size() && used > 0, "theta",
            "expected a number in [0, 1] or 'optimal', got '" + theta_text + "'");
    cfg.theta_optimal = false;
  }
}

void validate(RunConfig& cfg) {
  const auto& m = cfg.market;
  require(is_command(cfg.command), "command", "unknown command '" + cfg.command + "'");
  require(m.sigma > 0.0, "sigma", "must be > 0");
  require(m.r >= 0.0, "r", "must be >= 0");
  require(m.K > 0.0, "K", "must be > 0");
  require(m.T > 0.0, "T", "must be > 0");
  require(m.Z0 > 0.0, "Z0", "must be > 0");
  require(m.alpha > 0.0 && m.alpha <= 1.0, "alpha", "must lie in (0, 1]");
  const bool needs_pde = cfg.command != "bs";
  if (needs_pde) require(m.alpha < 1.0, "alpha", "must be below 1 for the fractional solver");
  require(cfg.grid.x_min < cfg.grid.x_max, "x_min", "must be below x_max");
  require(cfg.grid.n >= 3, "n", "must be at least 3");
  require(cfg.grid.N >= 1 || (cfg.command == "converge" && cfg.grid.N == 0), "N",
          "must be at least 1");
  if (!cfg.theta_optimal) require(cfg.theta >= 0.0 && cfg.theta <= 1.0, "theta", "must lie in [0, 1]");
  require(cfg.mc_samples >= 2, "M", "must be at least 2");
  require(cfg.threads >= 1, "threads", "must be at least 1");
  require(cfg.format == "csv" || cfg.format == "json", "format", "must be csv or json");
  require(cfg.variable == "time" || cfg.variable == "space", "variable", "must be time or space");
  for (double a : cfg.alphas) require(a > 0.0 && a < 1.0, "alphas", "entries must lie in (0, 1)");
  for (double t : cfg.maturities) require(t > 0.0, "maturities", "entries must be > 0");
  for (double k : cfg.strikes) require(k > 0.0, "strikes", "entries must be > 0");
  for (double t : cfg.thetas) require(t >= 0.0 && t <= 1.0, "thetas", "entries must lie in [0, 1]");
  if (!cfg.grids.empty()) parse_grids(cfg.grids);
  if (cfg.theta_optimal) cfg.theta = optimal_theta(m.alpha);
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv, std::string* help_text) {
  RunConfig cfg;
  std::string theta_text;
  std::string resolved_theta;  // echoed for readers; recomputed on parse

  CLI::App app{"Subdiffusive Black-Scholes pricing by a weighted finite-difference scheme"};
  app.add_option("command", cfg.command, "price | bs | mc-compare | stability | converge | error-grid | alpha-sweep");
  app.add_option("--sigma", cfg.market.sigma, "volatility");
  app.add_option("--r", cfg.market.r, "risk-free rate");
  app.add_option("--K", cfg.market.K, "strike");
  app.add_option("--T", cfg.market.T, "maturity in years");
  app.add_option("--Z0", cfg.market.Z0, "spot price");
  app.add_option("--alpha", cfg.market.alpha, "subdiffusion exponent in (0, 1]");
  app.add_option("--x_min", cfg.grid.x_min, "lower log-price bound");
  app.add_option("--x_max", cfg.grid.x_max, "upper log-price bound");
  app.add_option("--n", cfg.grid.n, "space intervals");
  app.add_option("--N", cfg.grid.N, "time steps");
  app.add_option("--theta", theta_text, "scheme weight in [0, 1] or 'optimal'");
  app.add_option("--resolved_theta", resolved_theta, "ignored; written by echoed configs");
  app.add_option("--M", cfg.mc_samples, "Monte Carlo sample count");
  app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_flag("--antithetic", cfg.antithetic, "antithetic Monte Carlo pairs");
  app.add_option("--threads", cfg.threads, "worker threads for sweeps and Monte Carlo");
  app.add_option("--output", cfg.output, "artifact directory (default $FRACBS_OUTPUT_DIR)");
  app.add_option("--format", cfg.format, "csv | json");
  app.add_flag("--forward_boundary", cfg.forward_boundary,
               "use q(t) = e^x_max - K e^{-r(T-t)} at the upper boundary");
  app.add_flag("--verbose", cfg.verbose, "extra diagnostics on stderr");
  app.add_option("--variable", cfg.variable, "converge: time | space");
  app.add_option("--alphas", cfg.alphas, "comma-separated alphas")->delimiter(',');
  app.add_option("--maturities", cfg.maturities, "comma-separated maturities")->delimiter(',');
  app.add_option("--strikes", cfg.strikes, "comma-separated strikes")->delimiter(',');
  app.add_option("--thetas", cfg.thetas, "comma-separated thetas")->delimiter(',');
  app.add_option("--grids", cfg.grids, "comma-separated <n>x<N> pairs");
  app.set_config("--config", "", "flat key=value file; flags override its keys");
  app.allow_config_extras(CLI::config_extras_mode::error);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help_text) *help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (cfg.output.empty()) {
    if (const char* env = std::getenv(kOutputDirEnv)) cfg.output = env;
  }
  apply_defaults(cfg, app, theta_text);
  validate(cfg);
  return cfg;
}

std::vector<std::string> echo_config(const RunConfig& cfg) {
  const auto& m = cfg.market;
  const auto& g = cfg.grid;
  std::vector<std::string> lines{
      "command=" + cfg.command,
      "sigma=" + format_exact(m.sigma),
      "r=" + format_exact(m.r),
      "K=" + format_exact(m.K),
      "T=" + format_exact(m.T),
      "Z0=" + format_exact(m.Z0),
      "alpha=" + format_exact(m.alpha),
      "x_min=" + format_exact(g.x_min),
      "x_max=" + format_exact(g.x_max),
      "n=" + std::to_string(g.n),
      "N=" + std::to_string(g.N),
      "theta=" + (cfg.theta_optimal ? std::string("optimal") : format_exact(cfg.theta)),
      "resolved_theta=" + format_exact(cfg.theta),
      "M=" + std::to_string(cfg.mc_samples),
      "seed=" + std::to_string(cfg.seed),
      std::string("antithetic=") + (cfg.antithetic ? "true" : "false"),
      "threads=" + std::to_string(cfg.threads),
      "format=" + cfg.format,
      std::string("forward_boundary=") + (cfg.forward_boundary ? "true" : "false"),
      std::string("verbose=") + (cfg.verbose ? "true" : "false"),
      "variable=" + cfg.variable,
  };
  if (!cfg.output.empty()) lines.push_back("output=" + cfg.output);
  if (!cfg.alphas.empty()) lines.push_back("alphas=" + join(cfg.alphas));
  if (!cfg.maturities.empty()) lines.push_back("maturities=" + join(cfg.maturities));
  if (!cfg.strikes.empty()) lines.push_back("strikes=" + join(cfg.strikes));
  if (!cfg.thetas.empty()) lines.push_back("thetas=" + join(cfg.thetas));
  if (!cfg.grids.empty()) lines.push_back("grids=" + cfg.grids);
  return lines;
}

std::string config_from_preamble(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    out += line.substr(2) + "\n";
  }
  return out;
}

namespace {

UpperBoundary upper_mode(const RunConfig& cfg) {
  return cfg.forward_boundary ? UpperBoundary::kForwardTime : UpperBoundary::kConsistent;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SchemeConfig scheme_for(const RunConfig& cfg, double alpha) {
  SchemeConfig s;
  s.params = cfg.market;
  s.params.alpha = alpha;
  s.grid = cfg.grid;
  s.theta = cfg.theta_optimal ? optimal_theta(alpha) : cfg.theta;
  s.upper_mode = upper_mode(cfg);
  return s;
}

std::vector<StudyRow> run_price(const RunConfig& cfg, const WarningSink& warn) {
  const auto s = scheme_for(cfg, cfg.market.alpha);
  const auto start = Clock::now();
  const double v = price(s, warn);
  const double secs = seconds_since(start);
  const auto& m = cfg.market;
  const double bs = bs_call(m.Z0, m.K, m.T, m.r, m.sigma);
  return {{"price", m.alpha, s.theta, s.grid.n, s.grid.N, v, std::abs(v - bs) / bs, secs}};
}

std::vector<StudyRow> run_bs(const RunConfig& cfg) {
  const auto& m = cfg.market;
  const auto q = bs_quote(m.Z0, m.K, m.T, m.r, m.sigma);
  const double parity = q.call - q.put - (m.Z0 - m.K * std::exp(-m.r * m.T));
  return {{"bs-call", 1.0, 0.0, 0, 0, q.call, 0.0, 0.0},
          {"bs-put", 1.0, 0.0, 0, 0, q.put, std::abs(parity), 0.0}};
}

std::vector<StudyRow> run_mc_compare(const RunConfig& cfg, const WarningSink& warn) {
  std::vector<StudyRow> rows;
  McOptions opts;
  opts.antithetic = cfg.antithetic;
  opts.threads = cfg.threads;
  for (double a : cfg.alphas) {
    const auto s = scheme_for(cfg, a);
    auto start = Clock::now();
    const double fd = price(s, warn);
    const double fd_secs = seconds_since(start);
    start = Clock::now();
    MarketParams m = cfg.market;
    m.alpha = a;
    const auto mc = mc_price(m, cfg.mc_samples, cfg.seed, opts);
    const double mc_secs = seconds_since(start);
    // fd row: error is the gap in standard errors; mc row: error is the standard error.
    rows.push_back({"mc-compare-fd", a, s.theta, s.grid.n, s.grid.N, fd,
                    std::abs(fd - mc.mean) / mc.std_error, fd_secs});
    rows.push_back({"mc-compare-mc", a, s.theta, 0, static_cast<int>(std::min<std::int64_t>(mc.M, INT32_MAX)),
                    mc.mean, mc.std_error, mc_secs});
  }
  return rows;
}

std::vector<StudyRow> run_stability(const RunConfig& cfg, std::ostream& out, const WarningSink& warn) {
  const auto s = scheme_for(cfg, cfg.market.alpha);
  const auto v = stability_verdict(s.theta, s.params.alpha, coefficients(s.params),
                                   s.grid.dt(s.params.T), s.grid.dx());
  out << "theta=" << format_short(s.theta) << " alpha=" << format_short(s.params.alpha)
      << " dt=" << format_short(s.grid.dt(s.params.T)) << " dx=" << format_short(s.grid.dx())
      << "\nunconditional: " << (v.unconditional ? "yes" : "no")
      << "\nconditional:   " << (v.conditional ? "yes" : "no")
      << "\nverdict:       " << (v.stable ? "stable" : "unstable") << "\n"
      << "optimal theta: " << format_short(optimal_theta(s.params.alpha)) << "\n";
  if (!v.stable && warn) warn("stability condition fails; the scheme may blow up on this grid");
  return {{"stability", s.params.alpha, s.theta, s.grid.n, s.grid.N, v.stable ? 1.0 : 0.0,
           v.unconditional ? 1.0 : 0.0, 0.0}};
}

std::vector<StudyRow> run_converge(const RunConfig& cfg) {
  std::vector<StudyRow> rows;
  const std::string study = "converge-" + cfg.variable;
  for (double a : cfg.alphas) {
    const double theta = cfg.theta_optimal ? optimal_theta(a) : cfg.theta;
    OrderReport rep;
    if (cfg.variable == "time") {
      TemporalProtocol p;
      p.market = cfg.market;
      p.x_min = cfg.grid.x_min;
      p.x_max = cfg.grid.x_max;
      p.n = cfg.grid.n;
      p.N_h = cfg.grid.N;
      rep = run_temporal_study(a, theta, p);
    } else {
      SpatialProtocol p;
      p.market = cfg.market;
      p.x_min = cfg.grid.x_min;
      p.x_max = cfg.grid.x_max;
      p.n_h = cfg.grid.n;
      p.N = cfg.grid.N;
      rep = run_spatial_study(a, theta, p);
    }
    rows.push_back({study, a, theta, rep.grid_h.n, rep.grid_h.N, rep.empirical_order,
                    rep.relative_error, rep.seconds});
  }
  return rows;
}

std::vector<StudyRow> run_error_grid_cmd(const RunConfig& cfg, const WarningSink& warn) {
  ErrorGridSpec spec;
  spec.market = cfg.market;
  spec.x_min = cfg.grid.x_min;
  spec.x_max = cfg.grid.x_max;
  spec.thetas = cfg.thetas;
  spec.grids = parse_grids(cfg.grids);
  spec.upper_mode = upper_mode(cfg);
  spec.threads = cfg.threads;
  std::vector<StudyRow> rows;
  for (const auto& c : run_error_grid(spec)) {
    if (!c.verdict.stable && warn)
      warn("theta=" + format_short(c.theta) + " (n,N)=(" + std::to_string(c.n) + "," +
           std::to_string(c.N) + ") fails the stability condition");
    rows.push_back({"error-grid", cfg.market.alpha, c.theta, c.n, c.N, c.price, c.relative_error,
                    c.seconds});
  }
  return rows;
}

std::vector<StudyRow> run_alpha_sweep_cmd(const RunConfig& cfg) {
  AlphaSweepSpec spec;
  spec.market = cfg.market;
  spec.grid = cfg.grid;
  spec.maturities = cfg.maturities;
  spec.alphas = cfg.alphas;
  spec.strikes = cfg.strikes;
  if (!cfg.theta_optimal) spec.theta = cfg.theta;
  spec.mc_samples = cfg.mc_samples;
  spec.seed = cfg.seed;
  spec.upper_mode = upper_mode(cfg);
  spec.threads = cfg.threads;
  const auto res = run_alpha_sweep(spec);

  std::vector<StudyRow> rows;
  auto emit = [&](const SweepCell& c) {
    const std::string tag = "[T=" + format_short(c.T) + ",K=" + format_short(c.K) + "]";
    rows.push_back({"alpha-sweep" + tag, c.alpha, c.theta, spec.grid.n, spec.grid.N, c.price,
                    c.mc ? std::abs(c.price - c.mc->mean) : 0.0, c.seconds});
    if (c.mc)
      rows.push_back({"mc-overlay" + tag, c.alpha, c.theta, 0, 0, c.mc->mean, c.mc->std_error, 0.0});
  };
  for (const auto& c : res.by_maturity) emit(c);
  for (const auto& c : res.by_strike) emit(c);
  return rows;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  WarningSink warn = [&err](std::string_view msg) { err << "warning: " << msg << "\n"; };
  std::vector<StudyRow> rows;
  try {
    const auto& c = cfg.command;
    if (c == "price") rows = run_price(cfg, warn);
    else if (c == "bs") rows = run_bs(cfg);
    else if (c == "mc-compare") rows = run_mc_compare(cfg, warn);
    else if (c == "stability") rows = run_stability(cfg, out, warn);
    else if (c == "converge") rows = run_converge(cfg);
    else if (c == "error-grid") rows = run_error_grid_cmd(cfg, warn);
    else if (c == "alpha-sweep") rows = run_alpha_sweep_cmd(cfg);
    else {
      err << "error: command: unknown command '" << c << "'\n";
      return kUsage;
    }
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DegenerateRefinementError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto preamble = echo_config(cfg);
  if (cfg.verbose)
    for (const auto& line : preamble) err << "config: " << line << "\n";
  out << to_table(rows);

  if (!cfg.output.empty()) {
    try {
      const std::filesystem::path dir(cfg.output);
      std::filesystem::create_directories(dir);
      const bool json = cfg.format == "json";
      const auto path = artifact_path(dir, cfg.command, json ? "json" : "csv");
      write_text(path, json ? to_json(rows, preamble) : to_csv(rows, preamble));
      out << "wrote " << path.string() << "\n";
    } catch (const std::exception& e) {
      err << "error: cannot write output: " << e.what() << "\n";
      return kIo;
    }
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    std::string help;
    const auto cfg = parse_config(argc, argv, &help);
    if (!help.empty()) {
      out << help;
      return kOk;
    }
    return dispatch(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace fracbs::cli
