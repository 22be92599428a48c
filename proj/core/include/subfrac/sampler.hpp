#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "subfrac/bernstein.hpp"
#include "subfrac/rng.hpp"

namespace subfrac {

/// One draw of the inverse (killed) subordinator at a fixed clock time.
struct InverseSample {
  double tau = 0.0;         // value of E_t (or E_t ^ S)
  bool killed = false;      // true iff tau equals the kill time S
  double bias_bound = 0.0;  // 0 for exact samplers, <= ds for path-based ones
};

/// A subordinator path on a uniform grid: values[j] = D(j * ds), values[0] = 0.
/// When a kill time is attached, kill_index is the first grid index at or past
/// the kill time; the killed process is +inf from there on (values stop early).
struct SubordinatorPath {
  double ds = 0.0;
  std::vector<double> values;
  std::optional<std::size_t> kill_index;

  double time(std::size_t j) const { return ds * static_cast<double>(j); }
};

/// Standard positive stable variate with E[e^{-l X}] = e^{-l^beta}
/// (Kanter's representation). pre: beta in (0,1).
double sample_stable_standard(double beta, RngStream& rng);

/// True when E_t can be drawn without a path walk (driftless stable, via
/// E_t = (t/X)^beta); such draws carry bias_bound 0.
bool exact_inverse_available(const BernsteinChar& ch);

/// One increment D_{s+ds} - D_s = drift * ds + driftless jump part.
/// Stable/gamma/exp_jumps/distributed-order increments are exact in law;
/// tabulated tails use jump truncation at eps = ds with the small-jump mean
/// added as deterministic drift and large jumps drawn compound-Poisson.
double sample_increment(const LevyMeasure& mu, double drift, double ds, RngStream& rng);

/// Exp(kill_rate) draw; +infinity when kill_rate = 0 (no randomness consumed).
double sample_kill_time(double kill_rate, RngStream& rng);

/// Path on the ds-grid extended until the cumulative value reaches `target`
/// (last stored value is the first one >= target). Throws NumericError past
/// 1e7 steps.
SubordinatorPath sample_path_until(const LevyMeasure& mu, double drift, double target, double ds,
                                   RngStream& rng);

/// Attach a kill time to a path: records the first grid index at or past S.
void apply_kill(SubordinatorPath& path, double kill_time);

/// Draw of E_t = inf{s : D_s > t}; the kill rate of `ch` is ignored.
/// Driftless stable uses the exact identity E_t = (t / X)^beta with X standard
/// stable (bias_bound 0); every other family walks a path with step ds and
/// returns the crossing grid time (bias_bound ds).
InverseSample sample_inverse_marginal(const BernsteinChar& ch, double t, double ds,
                                      RngStream& rng);

/// Draw of E_t^S = E_t ^ S. The kill time S is drawn from rng.substream(1)
/// and E_t from rng itself, so with kill_rate = 0 the consumed randomness is
/// identical to sample_inverse_marginal's.
InverseSample sample_inverse_killed(const BernsteinChar& ch, double t, double ds, RngStream& rng);

/// Jointly monotone draws of E_{t_1}^S <= ... <= E_{t_m}^S along one
/// trajectory (ts strictly increasing): one kill time, one underlying path
/// (or one stable variate in the exact case) shared across the grid.
std::vector<InverseSample> sample_inverse_curve(const BernsteinChar& ch,
                                                const std::vector<double>& ts, double ds,
                                                RngStream& rng);

/// P(E_s^S <= r) = 1 - e^{-a r} (1 - P(D-bar_r >= s - k r)) where the
/// driftless tail probability is supplied by `tail_cdf(r, s')` ~ P(D-bar_r >= s').
/// The s <= k r branch returns 1 - e^{-a r} * 0 shortcut without consulting
/// the oracle. Oracle values outside [0,1] raise NumericError.
double cdf_inverse_killed(const BernsteinChar& ch, double s, double r,
                          const std::function<double(double, double)>& tail_cdf);

/// Fallback grid step giving ~1e4 expected crossing steps at unit scales.
double default_step(double t);

}  // namespace subfrac
