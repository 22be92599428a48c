#include "subfrac/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <json.hpp>

#include "subfrac/errors.hpp"
#include "subfrac/fpde.hpp"
#include "subfrac/io.hpp"
#include "subfrac/mc.hpp"
#include "subfrac/parallel.hpp"
#include "subfrac/sampler.hpp"
#include "subfrac/special.hpp"

namespace subfrac {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Stream-id salts keeping oracle draws independent of the main sample streams.
constexpr std::uint64_t kCdfOracleSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kLemmaRhsSalt = 0x5851f42d4c957f2dULL;

CheckRecord check_abs(std::string name, double computed, double oracle, double tolerance,
                      double runtime) {
  CheckRecord r;
  r.name = std::move(name);
  r.computed = computed;
  r.oracle = oracle;
  r.tolerance = tolerance;
  r.pass = std::isfinite(computed) && std::abs(computed - oracle) <= tolerance;
  r.runtime = runtime;
  return r;
}

// 99% two-sided DKW band half-width for an n-sample empirical CDF.
double dkw99(std::uint64_t n) {
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

double scalar_at(const ScalarSolution& sol, double t) {
  const double pos = t / sol.dt;
  const auto lo = static_cast<std::size_t>(std::clamp(
      std::floor(pos), 0.0, static_cast<double>(sol.values.size() - 1)));
  const std::size_t hi = std::min(lo + 1, sol.values.size() - 1);
  const double frac = std::clamp(pos - static_cast<double>(lo), 0.0, 1.0);
  return sol.values[lo] + frac * (sol.values[hi] - sol.values[lo]);
}

double grid_at(const GridSolution& sol, double t, double x) {
  const double pos = t / sol.dt;
  const auto lo = static_cast<std::size_t>(std::clamp(
      std::floor(pos), 0.0, static_cast<double>(sol.values.size() - 1)));
  const std::size_t hi = std::min(lo + 1, sol.values.size() - 1);
  const double frac = std::clamp(pos - static_cast<double>(lo), 0.0, 1.0);
  return sol.at(lo, x) + frac * (sol.at(hi, x) - sol.at(lo, x));
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Fixed-order pairwise reduction; deterministic across worker counts.
MeanSe reduce_samples(std::vector<double>& v) {
  const auto n = static_cast<double>(v.size());
  MeanSe out;
  out.mean = pairwise_sum(v) / n;
  for (double& x : v) {
    const double d = x - out.mean;
    x = d * d;
  }
  out.se = v.size() > 1 ? std::sqrt(pairwise_sum(v) / (n - 1.0) / n) : 0.0;
  return out;
}

// One exact-in-law draw of the driftless subordinator value D-bar_r. Stable
// uses the scaling identity, the other closed-form families are infinitely
// divisible over the whole window; tabulated tails walk ds-sized steps so the
// truncation threshold stays coupled to ds.
double draw_driftless_value(const LevyMeasure& mu, double r, double ds, RngStream& rng) {
  if (r <= 0.0) return 0.0;
  if (mu.family() == LevyMeasure::Family::kStable)
    return std::pow(r, 1.0 / mu.as_stable().beta) * sample_stable_standard(mu.as_stable().beta, rng);
  if (mu.family() != LevyMeasure::Family::kTabulated) return sample_increment(mu, 0.0, r, rng);
  double value = 0.0;
  double done = 0.0;
  while (done + ds < r) {
    value += sample_increment(mu, 0.0, ds, rng);
    done += ds;
  }
  if (r > done) value += sample_increment(mu, 0.0, r - done, rng);
  return value;
}

struct KindOutput {
  std::vector<CheckRecord> checks;
  std::string csv;
  std::string svg;
};

// ---------------------------------------------------------------- mc-vs-pde

KindOutput run_mc_vs_pde(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const MarkovModel model = cfg.make_model();
  const TestFunction f = cfg.test_function();
  const McParams params = cfg.mc_params();
  const double horizon = cfg.t_grid.back();

  // Deterministic side: scalar Volterra solve on eigen structure, full grid
  // solve for the jump-diffusion.
  std::vector<double> oracle(cfg.t_grid.size());
  std::vector<double> line_t, line_u;
  const auto t_solve = Clock::now();
  if (model.kind() == MarkovModel::Kind::kJumpDiffusion) {
    const GridSolution sol = solve_grid_1d(ch, model, f, horizon, cfg.dt, cfg.dx);
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) oracle[i] = grid_at(sol, cfg.t_grid[i], cfg.x);
    const std::size_t stride = std::max<std::size_t>(1, sol.values.size() / 240);
    for (std::size_t n = 0; n < sol.values.size(); n += stride) {
      line_t.push_back(sol.time(n));
      line_u.push_back(sol.at(n, cfg.x));
    }
  } else {
    const double theta =
        model.kind() == MarkovModel::Kind::kEigen ? model.eigen_theta() : f.eigenvalue;
    const ScalarSolution sol = solve_scalar(ch, theta, horizon, cfg.dt);
    const double fx = f(cfg.x);
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) oracle[i] = fx * scalar_at(sol, cfg.t_grid[i]);
    const std::size_t stride = std::max<std::size_t>(1, sol.values.size() / 240);
    for (std::size_t n = 0; n < sol.values.size(); n += stride) {
      line_t.push_back(sol.time(n));
      line_u.push_back(fx * sol.values[n]);
    }
  }
  const double solve_time = elapsed(t_solve);

  const std::vector<MCEstimate> est = estimate_u_curve(ch, model, f, cfg.t_grid, cfg.x, params);

  KindOutput out;
  io::CsvWriter csv({"t", "x", "mean", "stderr", "N", "seed", "mode", "bias_bound"});
  io::PlotSeries mc_series;
  mc_series.label = "Monte Carlo (3 stderr)";
  mc_series.color = "#c0392b";
  mc_series.line = false;
  mc_series.points = true;
  for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
    const double tol = cfg.tolerance_multiplier * est[i].std_error + 10.0 * cfg.dt;
    out.checks.push_back(check_abs("u(t=" + io::fmt(cfg.t_grid[i]) + ")", est[i].mean, oracle[i],
                                   tol, solve_time + est[i].wall_time));
    csv.add_row({io::fmt(cfg.t_grid[i]), io::fmt(cfg.x), io::fmt(est[i].mean),
                 io::fmt(est[i].std_error), std::to_string(est[i].n), std::to_string(est[i].seed),
                 mc_mode_name(est[i].mode), io::fmt(est[i].bias_bound)});
    mc_series.x.push_back(cfg.t_grid[i]);
    mc_series.y.push_back(est[i].mean);
    mc_series.y_err.push_back(3.0 * est[i].std_error);
  }
  out.csv = csv.str();

  io::PlotSeries solver_series;
  solver_series.label = "deterministic solver";
  solver_series.x = line_t;
  solver_series.y = line_u;
  out.svg = io::render_plot_svg("u(t, x=" + io::fmt(cfg.x) + ")", "t", "u",
                                {solver_series, mc_series});
  return out;
}

// ---------------------------------------------------------------- cdf-check

KindOutput run_cdf_check(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const McParams params = cfg.mc_params();
  const std::uint64_t n = params.n;
  const auto t0 = Clock::now();

  // Empirical side: n independent draws of E_s^S.
  std::vector<double> taus(n);
  parallel_for(0, n, params.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(params.seed, i);
      taus[i] = sample_inverse_killed(ch, cfg.s, params.ds, rng).tau;
    }
  });
  std::sort(taus.begin(), taus.end());

  // Sub-oracle: Monte Carlo tail of the driftless subordinator, n draws per
  // query, drawn from a salted stream family (independent of the above).
  std::vector<std::vector<double>> oracle_draws(cfg.r_grid.size());
  for (std::size_t q = 0; q < cfg.r_grid.size(); ++q) {
    oracle_draws[q].resize(n);
    parallel_for(0, n, params.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j) {
        RngStream rng(params.seed ^ kCdfOracleSalt, j * cfg.r_grid.size() + q);
        oracle_draws[q][j] = draw_driftless_value(ch.measure, cfg.r_grid[q], params.ds, rng);
      }
    });
    std::sort(oracle_draws[q].begin(), oracle_draws[q].end());
  }

  const double band = dkw99(n) + dkw99(n);
  const double per_check = elapsed(t0) / static_cast<double>(cfg.r_grid.size());

  KindOutput out;
  io::CsvWriter csv({"r", "empirical", "model", "band", "pass"});
  io::PlotSeries emp{"empirical CDF", "#c0392b", {}, {}, {}, false, true};
  io::PlotSeries mod{"model CDF", "#1f6fb2", {}, {}, {}, true, true};
  for (std::size_t q = 0; q < cfg.r_grid.size(); ++q) {
    const double r = cfg.r_grid[q];
    const double empirical =
        static_cast<double>(std::upper_bound(taus.begin(), taus.end(), r) - taus.begin()) /
        static_cast<double>(n);
    const auto& ys = oracle_draws[q];
    const auto tail_cdf = [&](double, double threshold) {
      return static_cast<double>(ys.end() - std::lower_bound(ys.begin(), ys.end(), threshold)) /
             static_cast<double>(n);
    };
    const double model_p = cdf_inverse_killed(ch, cfg.s, r, tail_cdf);
    out.checks.push_back(
        check_abs("P(E<=r) r=" + io::fmt(r), empirical, model_p, band, per_check));
    csv.add_row({io::fmt(r), io::fmt(empirical), io::fmt(model_p), io::fmt(band),
                 out.checks.back().pass ? "1" : "0"});
    emp.x.push_back(r);
    emp.y.push_back(empirical);
    emp.y_err.push_back(band);
    mod.x.push_back(r);
    mod.y.push_back(model_p);
  }
  out.csv = csv.str();
  out.svg = io::render_plot_svg("P(E_s^S <= r), s=" + io::fmt(cfg.s) + " (bars: 99% DKW band)",
                                "r", "CDF", {mod, emp});
  return out;
}

// ------------------------------------------------------------ lemma31-check

// First-passage identity for the driftless subordinator:
//   P(D-bar_r >= t) = int_0^r E[ w(t - D-bar_y) 1{D-bar_y < t} ] dy.
// Left side by Monte Carlo; right side by 64-point Gauss-Legendre in y with a
// per-sample inner average sharing one stable draw across nodes, which keeps
// the quadrature-weighted integrand square-integrable.
KindOutput run_lemma31(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const double beta = ch.measure.as_stable().beta;
  const McParams params = cfg.mc_params();
  const std::uint64_t n = params.n;

  using Gauss = boost::math::quadrature::gauss<double, 64>;

  KindOutput out;
  io::CsvWriter csv({"r", "t", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "tolerance", "pass"});
  io::PlotSeries lhs_series{"passage probability (MC)", "#c0392b", {}, {}, {}, false, true};
  io::PlotSeries rhs_series{"kernel integral (quadrature)", "#1f6fb2", {}, {}, {}, false, true};
  for (std::size_t pair = 0; pair < cfg.lemma_r.size(); ++pair) {
    const double r = cfg.lemma_r[pair];
    const double t = cfg.lemma_t[pair];
    const auto t0 = Clock::now();

    std::vector<double> lhs(n);
    parallel_for(0, n, params.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        RngStream rng(params.seed, i);
        const double d = std::pow(r, 1.0 / beta) * sample_stable_standard(beta, rng);
        lhs[i] = d >= t ? 1.0 : 0.0;
      }
    });

    std::vector<double> node_y(64), node_c(64);
    for (std::size_t j = 0; j < 32; ++j) {
      const double u = Gauss::abscissa()[j];
      const double w = Gauss::weights()[j];
      node_y[2 * j] = 0.5 * r * (1.0 + u);
      node_y[2 * j + 1] = 0.5 * r * (1.0 - u);
      node_c[2 * j] = 0.5 * r * w;
      node_c[2 * j + 1] = 0.5 * r * w;
    }
    std::vector<double> rhs(n);
    parallel_for(0, n, params.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        RngStream rng(params.seed ^ kLemmaRhsSalt, i);
        const double x = sample_stable_standard(beta, rng);
        double acc = 0.0;
        for (std::size_t j = 0; j < 64; ++j) {
          const double d = std::pow(node_y[j], 1.0 / beta) * x;
          if (d < t) acc += node_c[j] * tail_w(ch.measure, t - d);
        }
        rhs[i] = acc;
      }
    });

    const MeanSe l = reduce_samples(lhs);
    const MeanSe rgt = reduce_samples(rhs);
    const double tol = cfg.tolerance_multiplier * std::hypot(l.se, rgt.se);
    CheckRecord rec = check_abs("lemma31 r=" + io::fmt(r) + " t=" + io::fmt(t), l.mean, rgt.mean,
                                tol, elapsed(t0));
    out.checks.push_back(rec);
    csv.add_row({io::fmt(r), io::fmt(t), io::fmt(l.mean), io::fmt(l.se), io::fmt(rgt.mean),
                 io::fmt(rgt.se), io::fmt(tol), rec.pass ? "1" : "0"});
    const double idx = static_cast<double>(pair);
    lhs_series.x.push_back(idx);
    lhs_series.y.push_back(l.mean);
    lhs_series.y_err.push_back(cfg.tolerance_multiplier * l.se);
    rhs_series.x.push_back(idx);
    rhs_series.y.push_back(rgt.mean);
    rhs_series.y_err.push_back(cfg.tolerance_multiplier * rgt.se);
  }
  out.csv = csv.str();
  out.svg = io::render_plot_svg("first-passage identity, both sides per (r,t) pair", "pair index",
                                "probability", {lhs_series, rhs_series});
  return out;
}

// --------------------------------------------------------------- convergence

KindOutput run_convergence(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const double oracle = mittag_leffler(cfg.beta, -cfg.theta);  // u(1) for t^beta clock

  KindOutput out;
  io::CsvWriter csv({"dt", "error", "ratio"});
  io::PlotSeries err_series{"error at t=1", "#1f6fb2", {}, {}, {}, true, true};
  std::vector<double> errors;
  std::vector<double> times;
  for (double dt : cfg.dt_levels) {
    const auto t0 = Clock::now();
    const ScalarSolution sol = solve_scalar(ch, cfg.theta, 1.0, dt);
    errors.push_back(std::abs(sol.values.back() - oracle));
    times.push_back(elapsed(t0));
    err_series.x.push_back(dt);
    err_series.y.push_back(errors.back());
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    std::string ratio_txt;
    if (i > 0) {
      const double ratio = errors[i - 1] / errors[i];
      ratio_txt = io::fmt(ratio);
      out.checks.push_back(check_abs(
          "ratio dt=" + io::fmt(cfg.dt_levels[i - 1]) + "/" + io::fmt(cfg.dt_levels[i]), ratio,
          2.0, 0.3, times[i - 1] + times[i]));
    }
    csv.add_row({io::fmt(cfg.dt_levels[i]), io::fmt(errors[i]), ratio_txt});
  }
  out.csv = csv.str();
  out.svg = io::render_plot_svg("scheme error vs step (Mittag-Leffler oracle)", "dt", "|error|",
                                {err_series});
  return out;
}

// ------------------------------------------------------------- laplace-check

KindOutput run_laplace(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const auto t0 = Clock::now();
  const ScalarSolution sol = solve_scalar(ch, cfg.theta, cfg.horizon, cfg.dt);
  const std::vector<double> residuals = laplace_check(sol, ch, cfg.theta, cfg.lambdas);
  const double per_check = elapsed(t0) / static_cast<double>(cfg.lambdas.size());

  KindOutput out;
  io::CsvWriter csv({"lambda", "residual", "tolerance", "pass"});
  io::PlotSeries res_series{"|transform residual|", "#1f6fb2", {}, {}, {}, true, true};
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
    out.checks.push_back(check_abs("residual lambda=" + io::fmt(cfg.lambdas[i]), residuals[i], 0.0,
                                   cfg.residual_tolerance, per_check));
    csv.add_row({io::fmt(cfg.lambdas[i]), io::fmt(residuals[i]), io::fmt(cfg.residual_tolerance),
                 out.checks.back().pass ? "1" : "0"});
    res_series.x.push_back(cfg.lambdas[i]);
    res_series.y.push_back(residuals[i]);
  }
  out.csv = csv.str();
  out.svg = io::render_plot_svg("Laplace-domain residual", "lambda", "residual", {res_series});
  return out;
}

// -------------------------------------------------------------- reduction-a0

KindOutput run_reduction(const ExperimentConfig& cfg) {
  const BernsteinChar ch = cfg.characteristics();
  const MarkovModel model = cfg.make_model();
  const TestFunction f = cfg.test_function();
  const McParams params = cfg.mc_params();
  const double horizon = cfg.t_grid.back();

  KindOutput out;
  io::CsvWriter csv({"component", "t", "killed", "unkilled", "bit_equal"});

  {
    const auto t0 = Clock::now();
    const double theta =
        model.kind() == MarkovModel::Kind::kEigen ? model.eigen_theta() : f.eigenvalue;
    const ScalarSolution killed = solve_scalar(ch, theta, horizon, cfg.dt);
    const ScalarSolution plain = solve_scalar_unkilled(ch, theta, horizon, cfg.dt);
    std::size_t mismatches = killed.values.size() == plain.values.size() ? 0 : 1;
    for (std::size_t i = 0; mismatches == 0 && i < killed.values.size(); ++i)
      if (!same_bits(killed.values[i], plain.values[i])) ++mismatches;
    out.checks.push_back(
        check_abs("solve_scalar bits", static_cast<double>(mismatches), 0.0, 0.0, elapsed(t0)));
    csv.add_row({"solve_scalar", io::fmt(horizon), io::fmt(killed.values.back()),
                 io::fmt(plain.values.back()), mismatches == 0 ? "1" : "0"});
  }

  io::PlotSeries killed_series{"killed pipeline (a=0)", "#c0392b", {}, {}, {}, false, true};
  io::PlotSeries plain_series{"unkilled pipeline", "#1f6fb2", {}, {}, {}, true, false};
  for (double t : cfg.t_grid) {
    const auto t0 = Clock::now();
    const MCEstimate killed = estimate_u(ch, model, f, t, cfg.x, params);
    const MCEstimate plain = estimate_u_unkilled(ch, model, f, t, cfg.x, params);
    const bool equal = same_bits(killed.mean, plain.mean) &&
                       same_bits(killed.std_error, plain.std_error);
    out.checks.push_back(check_abs("estimate_u bits t=" + io::fmt(t), equal ? 0.0 : 1.0, 0.0, 0.0,
                                   elapsed(t0)));
    csv.add_row({"estimate_u", io::fmt(t), io::fmt(killed.mean), io::fmt(plain.mean),
                 equal ? "1" : "0"});
    killed_series.x.push_back(t);
    killed_series.y.push_back(killed.mean);
    killed_series.y_err.push_back(killed.std_error);
    plain_series.x.push_back(t);
    plain_series.y.push_back(plain.mean);
  }
  out.csv = csv.str();
  out.svg = io::render_plot_svg("a=0 pipelines (values coincide bit-for-bit)", "t", "u",
                                {plain_series, killed_series});
  return out;
}

nlohmann::json report_json(const ExperimentConfig& cfg, const ValidationReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = report.kind;
  j["pass"] = report.pass();
  j["wall_time_seconds"] = report.wall_time;
  j["config"] = cfg.echo();
  j["checks"] = nlohmann::json::array();
  for (const CheckRecord& c : report.checks)
    j["checks"].push_back({{"name", c.name},
                           {"computed", c.computed},
                           {"oracle", c.oracle},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"runtime_seconds", c.runtime}});
  return j;
}

}  // namespace

bool ValidationReport::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << std::setprecision(6);
  for (const CheckRecord& c : checks)
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  computed=" << c.computed
       << " oracle=" << c.oracle << " tol=" << c.tolerance << "\n";
  os << (pass() ? "PASS" : "FAIL") << "  " << kind << " (" << checks.size() << " checks, "
     << std::setprecision(3) << wall_time << " s)\n";
  return os.str();
}

ValidationReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t0 = Clock::now();

  KindOutput out;
  if (cfg.kind == "mc-vs-pde") {
    out = run_mc_vs_pde(cfg);
  } else if (cfg.kind == "cdf-check") {
    out = run_cdf_check(cfg);
  } else if (cfg.kind == "lemma31-check") {
    out = run_lemma31(cfg);
  } else if (cfg.kind == "convergence") {
    out = run_convergence(cfg);
  } else if (cfg.kind == "laplace-check") {
    out = run_laplace(cfg);
  } else {
    out = run_reduction(cfg);
  }

  ValidationReport report;
  report.kind = cfg.kind;
  report.checks = std::move(out.checks);
  report.wall_time = elapsed(t0);

  io::write_file(cfg.out + "/report.json", report_json(cfg, report).dump(2) + "\n");
  io::write_file(cfg.out + "/results.csv", out.csv);
  io::write_file(cfg.out + "/plot.svg", out.svg);
  return report;
}

ValidationReport run_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.empty())
    throw ConfigError("sweep: no parameters given (use sweep.<field> = v1,v2,...)");
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  std::size_t total = 1;
  for (const auto& [name, vals] : cfg.sweep) {
    if (vals.empty()) throw ConfigError("sweep." + name + ": empty range");
    names.push_back(name);
    values.push_back(vals);
    total *= vals.size();
  }

  const auto t0 = Clock::now();
  std::size_t pad = 1;
  for (std::size_t v = total - 1; v >= 10; v /= 10) ++pad;
  pad = std::max<std::size_t>(pad, 3);

  std::vector<std::string> header = {"cell"};
  header.insert(header.end(), names.begin(), names.end());
  header.insert(header.end(), {"seed", "checks", "failures", "pass"});
  io::CsvWriter summary(header);

  ValidationReport report;
  report.kind = "sweep(" + cfg.kind + ")";
  for (std::size_t idx = 0; idx < total; ++idx) {
    ExperimentConfig cell = cfg;
    cell.sweep.clear();
    cell.seed = cfg.seed ^ idx;

    std::string label;
    std::size_t rest = idx;
    for (std::size_t p = names.size(); p-- > 0;) {  // last name varies fastest
      const double v = values[p][rest % values[p].size()];
      rest /= values[p].size();
      set_config_field(cell, names[p], v);
      label = " " + names[p] + "=" + io::fmt(v) + label;
    }
    std::ostringstream dir;
    dir << "cell-" << std::setfill('0') << std::setw(static_cast<int>(pad)) << idx;
    cell.out = cfg.out + "/" + dir.str();

    const ValidationReport cell_report = run_experiment(cell);
    std::size_t failures = 0;
    for (const CheckRecord& c : cell_report.checks) failures += c.pass ? 0 : 1;

    CheckRecord rec = check_abs(dir.str() + label, static_cast<double>(failures), 0.0, 0.0, 0.0);
    report.checks.push_back(rec);

    std::vector<std::string> row = {dir.str()};
    for (std::size_t p = 0; p < names.size(); ++p) {
      std::size_t r = idx;
      for (std::size_t q = names.size(); q-- > p + 1;) r /= values[q].size();
      row.push_back(io::fmt(values[p][r % values[p].size()]));
    }
    row.insert(row.end(), {std::to_string(cell.seed), std::to_string(cell_report.checks.size()),
                           std::to_string(failures), cell_report.pass() ? "1" : "0"});
    summary.add_row(row);
  }
  report.wall_time = elapsed(t0);

  io::write_file(cfg.out + "/summary.csv", summary.str());
  io::write_file(cfg.out + "/report.json", report_json(cfg, report).dump(2) + "\n");
  return report;
}

}  // namespace subfrac
