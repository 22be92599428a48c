#include "subfrac/mc.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "subfrac/errors.hpp"
#include "subfrac/parallel.hpp"
#include "subfrac/sampler.hpp"

namespace subfrac {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_common(const BernsteinChar& ch, const MarkovModel& model, const McParams& p) {
  if (p.n < 100) throw ConfigError("Monte Carlo estimator requires n >= 100 samples");
  if (p.workers < 1) throw ConfigError("Monte Carlo estimator requires workers >= 1");
  if (!ch.measure.infinite_activity() && !p.allow_finite_activity)
    throw ConfigError(
        "the Levy measure has finite activity, outside the theorem's hypotheses; "
        "set allow_finite_activity to run anyway");
  if (p.mode == McMode::kConditional && !model.deterministic_semigroup())
    throw ConfigError("conditional mode needs an evaluable semigroup; use pathwise mode");
  if (p.mode == McMode::kPathwise && model.kind() == MarkovModel::Kind::kEigen)
    throw ConfigError("the eigen model has no sample paths; use conditional mode");
}

void check_grid(const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("estimate_u_curve requires a non-empty grid");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!(ts[i] > 0.0) || (i > 0 && ts[i] <= ts[i - 1]))
      throw std::invalid_argument("estimate_u_curve requires a strictly increasing grid > 0");
}

// Destructive mean/stderr reduction with a fixed summation order.
MCEstimate reduce(std::vector<double>& vals, const McParams& p, double bias, double wall) {
  const auto n = static_cast<double>(vals.size());
  MCEstimate est;
  est.mean = pairwise_sum(vals) / n;
  for (double& v : vals) v = (v - est.mean) * (v - est.mean);
  est.std_error = std::sqrt(pairwise_sum(vals) / (n - 1.0) / n);
  est.n = vals.size();
  est.seed = p.seed;
  est.wall_time = wall;
  est.mode = p.mode;
  est.bias_bound = bias;
  return est;
}

double payoff(const MarkovModel& model, const TestFunction& f, double x, double tau,
              const McParams& p, RngStream& sample_rng) {
  if (p.mode == McMode::kConditional) return semigroup_apply(model, tau, f, x);
  MarkovPathSimulator sim(model, x, p.em_step, sample_rng.substream(2));
  return f.value(sim.advance_to(tau));
}

}  // namespace

std::string mc_mode_name(McMode mode) {
  return mode == McMode::kConditional ? "conditional" : "pathwise";
}

MCEstimate estimate_u(const BernsteinChar& ch, const MarkovModel& model, const TestFunction& f,
                      double t, double x, const McParams& p) {
  if (!(t > 0.0)) throw std::invalid_argument("estimate_u requires t > 0");
  check_common(ch, model, p);
  const auto t0 = Clock::now();
  const double bias = exact_inverse_available(ch) ? 0.0 : p.ds;

  std::vector<double> vals(p.n);
  parallel_for(0, p.n, p.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(p.seed, i);
      const InverseSample inv = sample_inverse_killed(ch, t, p.ds, rng);
      vals[i] = payoff(model, f, x, inv.tau, p, rng);
    }
  });
  return reduce(vals, p, bias, seconds_since(t0));
}

MCEstimate estimate_u_unkilled(const BernsteinChar& ch, const MarkovModel& model,
                               const TestFunction& f, double t, double x, const McParams& p) {
  if (ch.kill_rate != 0.0)
    throw ConfigError("estimate_u_unkilled requires characteristics with kill rate 0");
  if (!(t > 0.0)) throw std::invalid_argument("estimate_u_unkilled requires t > 0");
  check_common(ch, model, p);
  const auto t0 = Clock::now();
  const double bias = exact_inverse_available(ch) ? 0.0 : p.ds;

  std::vector<double> vals(p.n);
  parallel_for(0, p.n, p.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(p.seed, i);
      const InverseSample inv = sample_inverse_marginal(ch, t, p.ds, rng);
      vals[i] = payoff(model, f, x, inv.tau, p, rng);
    }
  });
  return reduce(vals, p, bias, seconds_since(t0));
}

std::vector<MCEstimate> estimate_u_curve(const BernsteinChar& ch, const MarkovModel& model,
                                         const TestFunction& f, const std::vector<double>& ts,
                                         double x, const McParams& p) {
  check_grid(ts);
  check_common(ch, model, p);
  const auto t0 = Clock::now();
  const bool exact = exact_inverse_available(ch);
  const double bias = exact ? 0.0 : p.ds;
  const bool independent_points = exact && p.mode == McMode::kConditional;

  std::vector<std::vector<double>> vals(ts.size(), std::vector<double>(p.n));
  parallel_for(0, p.n, p.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(p.seed, i);
      if (independent_points) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
          RngStream point_rng = rng.substream(j);
          const InverseSample inv = sample_inverse_killed(ch, ts[j], p.ds, point_rng);
          vals[j][i] = payoff(model, f, x, inv.tau, p, point_rng);
        }
      } else {
        const std::vector<InverseSample> invs = sample_inverse_curve(ch, ts, p.ds, rng);
        std::optional<MarkovPathSimulator> sim;
        if (p.mode == McMode::kPathwise) sim.emplace(model, x, p.em_step, rng.substream(2));
        for (std::size_t j = 0; j < ts.size(); ++j) {
          vals[j][i] = sim ? f.value(sim->advance_to(invs[j].tau))
                           : semigroup_apply(model, invs[j].tau, f, x);
        }
      }
    }
  });

  const double wall = seconds_since(t0);
  std::vector<MCEstimate> out;
  out.reserve(ts.size());
  for (auto& column : vals) out.push_back(reduce(column, p, bias, wall));
  return out;
}

std::vector<MCEstimate> estimate_u_curve_unkilled(const BernsteinChar& ch,
                                                  const MarkovModel& model, const TestFunction& f,
                                                  const std::vector<double>& ts, double x,
                                                  const McParams& p) {
  if (ch.kill_rate != 0.0)
    throw ConfigError("estimate_u_curve_unkilled requires characteristics with kill rate 0");
  check_grid(ts);
  check_common(ch, model, p);
  const auto t0 = Clock::now();
  const bool exact = exact_inverse_available(ch);
  const double bias = exact ? 0.0 : p.ds;
  const bool independent_points = exact && p.mode == McMode::kConditional;

  std::vector<std::vector<double>> vals(ts.size(), std::vector<double>(p.n));
  parallel_for(0, p.n, p.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(p.seed, i);
      if (independent_points) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
          RngStream point_rng = rng.substream(j);
          const InverseSample inv = sample_inverse_marginal(ch, ts[j], p.ds, point_rng);
          vals[j][i] = payoff(model, f, x, inv.tau, p, point_rng);
        }
      } else {
        // one unkilled trajectory per sample, reused across the whole grid
        std::vector<double> taus(ts.size());
        if (exact) {
          const double beta = ch.measure.as_stable().beta;
          const double xs = sample_stable_standard(beta, rng);
          for (std::size_t j = 0; j < ts.size(); ++j) taus[j] = std::pow(ts[j] / xs, beta);
        } else {
          double d = 0.0;
          std::size_t steps = 0;
          for (std::size_t j = 0; j < ts.size(); ++j) {
            while (d < ts[j]) {
              if (++steps > 10'000'000)
                throw NumericError("inverse sampler: no crossing within 1e7 steps; decrease ds");
              d += sample_increment(ch.measure, ch.drift, p.ds, rng);
            }
            taus[j] = p.ds * static_cast<double>(steps);
          }
        }
        std::optional<MarkovPathSimulator> sim;
        if (p.mode == McMode::kPathwise) sim.emplace(model, x, p.em_step, rng.substream(2));
        for (std::size_t j = 0; j < ts.size(); ++j) {
          vals[j][i] = sim ? f.value(sim->advance_to(taus[j]))
                           : semigroup_apply(model, taus[j], f, x);
        }
      }
    }
  });

  const double wall = seconds_since(t0);
  std::vector<MCEstimate> out;
  out.reserve(ts.size());
  for (auto& column : vals) out.push_back(reduce(column, p, bias, wall));
  return out;
}

}  // namespace subfrac
