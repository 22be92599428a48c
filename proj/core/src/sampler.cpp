#include "subfrac/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subfrac/errors.hpp"

namespace subfrac {
namespace {

constexpr std::size_t kMaxPathSteps = 10'000'000;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Driftless jump-part increment over a step ds.
double jump_increment(const LevyMeasure& mu, double ds, RngStream& rng) {
  using Family = LevyMeasure::Family;
  switch (mu.family()) {
    case Family::kNone:
      return 0.0;
    case Family::kStable: {
      const double beta = mu.as_stable().beta;
      return std::pow(ds, 1.0 / beta) * sample_stable_standard(beta, rng);
    }
    case Family::kGamma: {
      const auto& p = mu.as_gamma();
      return rng.gamma(p.c * ds, p.eta);
    }
    case Family::kDistributedOrder: {
      const auto& p = mu.as_distributed_order();
      double sum = 0.0;
      for (std::size_t i = 0; i < p.betas.size(); ++i) {
        const double b = p.betas[i];
        sum += std::pow(p.weights[i] * ds, 1.0 / b) * sample_stable_standard(b, rng);
      }
      return sum;
    }
    case Family::kExpJumps: {
      const auto& p = mu.as_exp_jumps();
      const long n = rng.poisson(p.c * ds);
      double sum = 0.0;
      for (long i = 0; i < n; ++i) sum += rng.exponential(p.eta);
      return sum;
    }
    case Family::kTabulated: {
      // Truncate jumps below eps = ds: their mean rate G(eps) - eps w(eps)
      // becomes drift; jumps above eps arrive at rate w(eps) with sizes drawn
      // by inverting the normalized tail.
      const double eps = ds;
      const double big_rate = mu.tail(eps);
      double sum = (mu.tail_integral(eps) - eps * big_rate) * ds;
      const long n = rng.poisson(big_rate * ds);
      for (long i = 0; i < n; ++i) sum += mu.tail_inverse(rng.uniform() * big_rate);
      return sum;
    }
  }
  return 0.0;
}

}  // namespace

bool exact_inverse_available(const BernsteinChar& ch) {
  return ch.drift == 0.0 && ch.measure.family() == LevyMeasure::Family::kStable;
}

double sample_stable_standard(double beta, RngStream& rng) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("sample_stable_standard requires beta in (0,1)");
  // Kanter: X = (A(pi U)/W)^{(1-beta)/beta} with
  // A(v) = (sin(b v)^b sin((1-b) v)^{1-b} / sin v)^{1/(1-b)}.
  const double v = 3.14159265358979323846 * rng.uniform();
  const double w = rng.exponential(1.0);
  const double log_a = (beta * std::log(std::sin(beta * v)) +
                        (1.0 - beta) * std::log(std::sin((1.0 - beta) * v)) -
                        std::log(std::sin(v))) /
                       (1.0 - beta);
  return std::exp(((1.0 - beta) / beta) * (log_a - std::log(w)));
}

double sample_increment(const LevyMeasure& mu, double drift, double ds, RngStream& rng) {
  if (!(ds > 0.0)) throw std::invalid_argument("sample_increment requires ds > 0");
  if (drift < 0.0) throw std::invalid_argument("sample_increment requires drift >= 0");
  return drift * ds + jump_increment(mu, ds, rng);
}

double sample_kill_time(double kill_rate, RngStream& rng) {
  if (kill_rate < 0.0) throw std::invalid_argument("sample_kill_time requires rate >= 0");
  if (kill_rate == 0.0) return kInf;
  return rng.exponential(kill_rate);
}

SubordinatorPath sample_path_until(const LevyMeasure& mu, double drift, double target, double ds,
                                   RngStream& rng) {
  if (!(target > 0.0)) throw std::invalid_argument("sample_path_until requires target > 0");
  if (!(ds > 0.0)) throw std::invalid_argument("sample_path_until requires ds > 0");
  SubordinatorPath path;
  path.ds = ds;
  path.values.push_back(0.0);
  double d = 0.0;
  while (d < target) {
    if (path.values.size() > kMaxPathSteps)
      throw NumericError("subordinator path did not cross the target within 1e7 steps; "
                         "decrease ds or check the characteristics");
    d += sample_increment(mu, drift, ds, rng);
    path.values.push_back(d);
  }
  return path;
}

void apply_kill(SubordinatorPath& path, double kill_time) {
  if (!(kill_time >= 0.0)) throw std::invalid_argument("apply_kill requires kill_time >= 0");
  if (path.ds <= 0.0) throw std::invalid_argument("apply_kill requires a sampled path");
  const double idx = std::ceil(kill_time / path.ds);
  if (idx < static_cast<double>(path.values.size())) {
    const auto j = static_cast<std::size_t>(idx);
    path.kill_index = j;
    path.values.resize(std::max<std::size_t>(j, 1));
  }
}

InverseSample sample_inverse_marginal(const BernsteinChar& ch, double t, double ds,
                                      RngStream& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("sample_inverse_marginal requires t > 0");
  if (exact_inverse_available(ch)) {
    const double beta = ch.measure.as_stable().beta;
    const double x = sample_stable_standard(beta, rng);
    return {std::pow(t / x, beta), false, 0.0};
  }
  if (!(ds > 0.0)) throw std::invalid_argument("sample_inverse_marginal requires ds > 0");
  double d = 0.0;
  for (std::size_t j = 1; j <= kMaxPathSteps; ++j) {
    d += sample_increment(ch.measure, ch.drift, ds, rng);
    if (d >= t) return {ds * static_cast<double>(j), false, ds};
  }
  throw NumericError("inverse sampler: no crossing within 1e7 steps; decrease ds");
}

InverseSample sample_inverse_killed(const BernsteinChar& ch, double t, double ds,
                                    RngStream& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("sample_inverse_killed requires t > 0");
  // S comes from a dedicated substream so that kill_rate = 0 consumes exactly
  // the same randomness as the unkilled sampler (bit-level reduction checks).
  RngStream kill_rng = rng.substream(1);
  const double s = sample_kill_time(ch.kill_rate, kill_rng);
  if (exact_inverse_available(ch)) {
    const double beta = ch.measure.as_stable().beta;
    const double x = sample_stable_standard(beta, rng);
    const double e = std::pow(t / x, beta);
    return (s <= e) ? InverseSample{s, true, 0.0} : InverseSample{e, false, 0.0};
  }
  if (!(ds > 0.0)) throw std::invalid_argument("sample_inverse_killed requires ds > 0");
  double d = 0.0;
  for (std::size_t j = 1; j <= kMaxPathSteps; ++j) {
    // The walk has already survived past grid time (j-1) ds; once that
    // reaches S the sample is killed regardless of the remaining path.
    if (ds * static_cast<double>(j - 1) >= s) return {s, true, ds};
    d += sample_increment(ch.measure, ch.drift, ds, rng);
    if (d >= t) {
      const double e = ds * static_cast<double>(j);
      return (s <= e) ? InverseSample{s, true, ds} : InverseSample{e, false, ds};
    }
  }
  throw NumericError("inverse sampler: no crossing within 1e7 steps; decrease ds");
}

std::vector<InverseSample> sample_inverse_curve(const BernsteinChar& ch,
                                                const std::vector<double>& ts, double ds,
                                                RngStream& rng) {
  if (ts.empty()) throw std::invalid_argument("sample_inverse_curve requires a non-empty grid");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || (i > 0 && ts[i] <= ts[i - 1]))
      throw std::invalid_argument("sample_inverse_curve requires a strictly increasing grid > 0");
  }
  RngStream kill_rng = rng.substream(1);
  const double s = sample_kill_time(ch.kill_rate, kill_rng);

  std::vector<InverseSample> out(ts.size());
  if (exact_inverse_available(ch)) {
    const double beta = ch.measure.as_stable().beta;
    const double x = sample_stable_standard(beta, rng);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double e = std::pow(ts[i] / x, beta);
      out[i] = (s <= e) ? InverseSample{s, true, 0.0} : InverseSample{e, false, 0.0};
    }
    return out;
  }

  if (!(ds > 0.0)) throw std::invalid_argument("sample_inverse_curve requires ds > 0");
  double d = 0.0;
  std::size_t j = 0;
  bool dead = false;  // the walk passed S: every remaining point is killed
  for (std::size_t i = 0; i < ts.size(); ++i) {
    while (!dead && d < ts[i]) {
      if (ds * static_cast<double>(j) >= s) {
        dead = true;
        break;
      }
      if (++j > kMaxPathSteps)
        throw NumericError("inverse sampler: no crossing within 1e7 steps; decrease ds");
      d += sample_increment(ch.measure, ch.drift, ds, rng);
    }
    const double e = ds * static_cast<double>(j);
    out[i] = (dead || s <= e) ? InverseSample{s, true, ds} : InverseSample{e, false, ds};
  }
  return out;
}

double cdf_inverse_killed(const BernsteinChar& ch, double s, double r,
                          const std::function<double(double, double)>& tail_cdf) {
  if (s < 0.0 || r < 0.0) throw std::invalid_argument("cdf_inverse_killed requires s, r >= 0");
  if (r == 0.0) return s > 0.0 ? 0.0 : 1.0;
  const double shifted = s - ch.drift * r;
  double p = 1.0;  // P(D-bar_r >= shifted) is 1 whenever shifted <= 0
  if (shifted > 0.0) {
    p = tail_cdf(r, shifted);
    if (!(p >= 0.0 && p <= 1.0))
      throw NumericError("cdf_inverse_killed: tail oracle returned a value outside [0,1]");
  }
  return 1.0 - std::exp(-ch.kill_rate * r) * (1.0 - p);
}

double default_step(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("default_step requires t > 0");
  return t / 1e4;
}

}  // namespace subfrac
