#include "subfrac/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "subfrac/errors.hpp"
#include "subfrac/quadrature.hpp"
#include "subfrac/special.hpp"

namespace subfrac {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// (1 - e^{-l t}) / t, continuous at t = 0 where the value is l.
double omexp_over_t(double lambda, double t) {
  const double u = lambda * t;
  if (u < 1e-6) return lambda * (1.0 - 0.5 * u + u * u / 6.0);
  return -std::expm1(-u) / t;
}

}  // namespace

LevyMeasure LevyMeasure::none() { return LevyMeasure(); }

LevyMeasure LevyMeasure::stable(double beta) {
  require(std::isfinite(beta) && beta > 0.0 && beta < 1.0, "stable: beta must lie in (0,1)");
  LevyMeasure m;
  m.family_ = Family::kStable;
  m.params_ = StableParams{beta};
  return m;
}

LevyMeasure LevyMeasure::gamma_process(double c, double eta) {
  require(finite_positive(c), "gamma: c must be positive");
  require(finite_positive(eta), "gamma: eta must be positive");
  LevyMeasure m;
  m.family_ = Family::kGamma;
  m.params_ = GammaParams{c, eta};
  return m;
}

LevyMeasure LevyMeasure::distributed_order(std::vector<double> betas,
                                           std::vector<double> weights) {
  require(!betas.empty(), "distributed_order: at least one atom required");
  require(betas.size() == weights.size(), "distributed_order: betas/weights size mismatch");
  for (double b : betas)
    require(std::isfinite(b) && b > 0.0 && b < 1.0, "distributed_order: betas must lie in (0,1)");
  for (double w : weights) require(finite_positive(w), "distributed_order: weights must be positive");
  LevyMeasure m;
  m.family_ = Family::kDistributedOrder;
  m.params_ = DistributedOrderParams{std::move(betas), std::move(weights)};
  return m;
}

LevyMeasure LevyMeasure::exp_jumps(double c, double eta) {
  require(finite_positive(c), "exp_jumps: c must be positive");
  require(finite_positive(eta), "exp_jumps: eta must be positive");
  LevyMeasure m;
  m.family_ = Family::kExpJumps;
  m.params_ = ExpJumpsParams{c, eta};
  return m;
}

LevyMeasure LevyMeasure::tabulated(std::vector<double> z, std::vector<double> w) {
  require(!z.empty() && z.size() == w.size(), "tabulated: need equal-length non-empty z and w");
  for (std::size_t i = 0; i < z.size(); ++i) {
    require(finite_positive(z[i]), "tabulated: z values must be positive");
    require(std::isfinite(w[i]) && w[i] >= 0.0, "tabulated: w values must be non-negative");
    if (i > 0) {
      require(z[i] > z[i - 1], "tabulated: z must be strictly increasing");
      require(w[i] <= w[i - 1], "tabulated: w must be non-increasing");
    }
  }
  require(w.front() > 0.0, "tabulated: w must not be identically zero");

  LevyMeasure m;
  m.family_ = Family::kTabulated;
  TabulatedData& d = m.tab_;
  d.z = z;
  d.w = w;
  d.logz.resize(z.size());
  std::transform(z.begin(), z.end(), d.logz.begin(), [](double v) { return std::log(v); });
  const std::size_t n = z.size();
  d.slope.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d.slope[i] = (w[i + 1] - w[i]) / (d.logz[i + 1] - d.logz[i]);
  d.head_slope = d.slope.empty() ? 0.0 : d.slope.front();

  // Cumulative integral of the tail. On each piece w(t) = A + B ln t with
  // antiderivative t (A + B ln t - B) = t (w(t) - B); the head contribution
  // uses lim_{t->0} t ln t = 0.
  d.area.resize(n);
  d.area[0] = z[0] * (w[0] - d.head_slope);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double b = d.slope[i];
    d.area[i + 1] = d.area[i] + z[i + 1] * (w[i + 1] - b) - z[i] * (w[i] - b);
  }

  m.params_ = TabulatedParams{std::move(z), std::move(w)};
  return m;
}

bool LevyMeasure::infinite_activity() const {
  switch (family_) {
    case Family::kStable:
    case Family::kGamma:
    case Family::kDistributedOrder:
      return true;
    case Family::kExpJumps:
    case Family::kNone:
      return false;
    case Family::kTabulated:
      return tab_.head_slope < 0.0;
  }
  return false;
}

double LevyMeasure::tail(double z) const {
  switch (family_) {
    case Family::kNone:
      return 0.0;
    case Family::kStable: {
      const double beta = std::get<StableParams>(params_).beta;
      return std::pow(z, -beta) / std::tgamma(1.0 - beta);
    }
    case Family::kGamma: {
      const auto& p = std::get<GammaParams>(params_);
      return p.c * expint_e1(p.eta * z);
    }
    case Family::kDistributedOrder: {
      const auto& p = std::get<DistributedOrderParams>(params_);
      double s = 0.0;
      for (std::size_t i = 0; i < p.betas.size(); ++i)
        s += p.weights[i] * std::pow(z, -p.betas[i]) / std::tgamma(1.0 - p.betas[i]);
      return s;
    }
    case Family::kExpJumps: {
      const auto& p = std::get<ExpJumpsParams>(params_);
      return p.c * std::exp(-p.eta * z);
    }
    case Family::kTabulated:
      return tabulated_tail(z);
  }
  return 0.0;
}

double LevyMeasure::tail_integral(double x) const {
  if (x == 0.0) return 0.0;
  switch (family_) {
    case Family::kNone:
      return 0.0;
    case Family::kStable: {
      const double beta = std::get<StableParams>(params_).beta;
      return std::pow(x, 1.0 - beta) / ((1.0 - beta) * std::tgamma(1.0 - beta));
    }
    case Family::kGamma: {
      const auto& p = std::get<GammaParams>(params_);
      const double u = p.eta * x;
      return (p.c / p.eta) * (u * expint_e1(u) - std::exp(-u) + 1.0);
    }
    case Family::kDistributedOrder: {
      const auto& p = std::get<DistributedOrderParams>(params_);
      double s = 0.0;
      for (std::size_t i = 0; i < p.betas.size(); ++i) {
        const double b = p.betas[i];
        s += p.weights[i] * std::pow(x, 1.0 - b) / ((1.0 - b) * std::tgamma(1.0 - b));
      }
      return s;
    }
    case Family::kExpJumps: {
      const auto& p = std::get<ExpJumpsParams>(params_);
      return (p.c / p.eta) * (-std::expm1(-p.eta * x));
    }
    case Family::kTabulated:
      return tabulated_tail_integral(x);
  }
  return 0.0;
}

double LevyMeasure::exponent(double lambda) const {
  switch (family_) {
    case Family::kNone:
      return 0.0;
    case Family::kStable:
      return std::pow(lambda, std::get<StableParams>(params_).beta);
    case Family::kGamma: {
      const auto& p = std::get<GammaParams>(params_);
      return p.c * std::log1p(lambda / p.eta);
    }
    case Family::kDistributedOrder: {
      const auto& p = std::get<DistributedOrderParams>(params_);
      double s = 0.0;
      for (std::size_t i = 0; i < p.betas.size(); ++i)
        s += p.weights[i] * std::pow(lambda, p.betas[i]);
      return s;
    }
    case Family::kExpJumps: {
      const auto& p = std::get<ExpJumpsParams>(params_);
      return p.c * lambda / (p.eta + lambda);
    }
    case Family::kTabulated:
      return tabulated_exponent(lambda);
  }
  return 0.0;
}

double LevyMeasure::tabulated_tail(double z) const {
  const TabulatedData& d = tab_;
  if (z >= d.z.back()) return 0.0;  // right-continuous tail; mass w.back() is an atom there
  const double lz = std::log(z);
  if (z <= d.z.front()) return d.w.front() + d.head_slope * (lz - d.logz.front());
  const auto it = std::upper_bound(d.z.begin(), d.z.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - d.z.begin()) - 1;
  return d.w[i] + d.slope[i] * (lz - d.logz[i]);
}

double LevyMeasure::tabulated_tail_integral(double x) const {
  const TabulatedData& d = tab_;
  if (x >= d.z.back()) return d.area.back();
  if (x <= d.z.front()) return x * (tabulated_tail(x) - d.head_slope);
  const auto it = std::upper_bound(d.z.begin(), d.z.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - d.z.begin()) - 1;
  const double b = d.slope[i];
  return d.area[i] + x * (tabulated_tail(x) - b) - d.z[i] * (d.w[i] - b);
}

double LevyMeasure::tabulated_exponent(double lambda) const {
  const TabulatedData& d = tab_;
  // Between nodes the measure has density -slope/t dt; the table end carries
  // an atom of mass w.back().
  double total = d.w.back() * (-std::expm1(-lambda * d.z.back()));
  auto piece = [lambda](double slope, double lo, double hi) {
    if (slope >= 0.0) return 0.0;
    const double mass = -slope;
    return quad::finite([lambda, mass](double t) { return mass * omexp_over_t(lambda, t); }, lo,
                        hi, 1e-9);
  };
  total += piece(d.head_slope, 0.0, d.z.front());
  for (std::size_t i = 0; i + 1 < d.z.size(); ++i)
    total += piece(d.slope[i], d.z[i], d.z[i + 1]);
  return total;
}

double LevyMeasure::tail_inverse(double v) const {
  if (family_ != Family::kTabulated)
    throw std::logic_error("tail_inverse is only defined for tabulated tails");
  if (!(v >= 0.0)) throw std::invalid_argument("tail_inverse requires v >= 0");
  const TabulatedData& d = tab_;
  if (v >= d.w.front()) {
    if (d.head_slope < 0.0)
      return std::exp(d.logz.front() + (v - d.w.front()) / d.head_slope);
    return 0.0;  // flat head: no level set above w_0
  }
  // w is sorted descending; find the first node with w <= v.
  const auto it = std::lower_bound(d.w.begin(), d.w.end(), v, std::greater<double>());
  if (it == d.w.end()) return d.z.back();  // below every node value: the end atom
  const std::size_t i = static_cast<std::size_t>(it - d.w.begin());
  const double b = d.slope[i - 1];
  if (b >= 0.0) return d.z[i];  // flat segment carries no mass in its interior
  return std::exp(d.logz[i - 1] + (v - d.w[i - 1]) / b);
}

const LevyMeasure::StableParams& LevyMeasure::as_stable() const {
  if (family_ != Family::kStable) throw std::logic_error("LevyMeasure: not a stable family");
  return std::get<StableParams>(params_);
}
const LevyMeasure::GammaParams& LevyMeasure::as_gamma() const {
  if (family_ != Family::kGamma) throw std::logic_error("LevyMeasure: not a gamma family");
  return std::get<GammaParams>(params_);
}
const LevyMeasure::DistributedOrderParams& LevyMeasure::as_distributed_order() const {
  if (family_ != Family::kDistributedOrder)
    throw std::logic_error("LevyMeasure: not a distributed-order family");
  return std::get<DistributedOrderParams>(params_);
}
const LevyMeasure::ExpJumpsParams& LevyMeasure::as_exp_jumps() const {
  if (family_ != Family::kExpJumps) throw std::logic_error("LevyMeasure: not an exp_jumps family");
  return std::get<ExpJumpsParams>(params_);
}
const LevyMeasure::TabulatedParams& LevyMeasure::as_tabulated() const {
  if (family_ != Family::kTabulated) throw std::logic_error("LevyMeasure: not a tabulated family");
  return std::get<TabulatedParams>(params_);
}

std::string LevyMeasure::family_name() const {
  switch (family_) {
    case Family::kNone:
      return "none";
    case Family::kStable:
      return "stable";
    case Family::kGamma:
      return "gamma";
    case Family::kDistributedOrder:
      return "distributed_order";
    case Family::kExpJumps:
      return "exp_jumps";
    case Family::kTabulated:
      return "tabulated";
  }
  return "?";
}

BernsteinChar::BernsteinChar(double kill_rate_in, double drift_in, LevyMeasure measure_in)
    : kill_rate(kill_rate_in), drift(drift_in), measure(std::move(measure_in)) {
  require(std::isfinite(kill_rate) && kill_rate >= 0.0, "kill rate must be >= 0");
  require(std::isfinite(drift) && drift >= 0.0, "drift must be >= 0");
  require(kill_rate > 0.0 || drift > 0.0 || !measure.is_zero(),
          "degenerate characteristics: kill rate, drift and Levy measure all vanish");
}

double TailKernel::w(double z) const {
  if (!(z > 0.0)) throw std::invalid_argument("TailKernel::w requires z > 0");
  return measure_.tail(z);
}

double TailKernel::G(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("TailKernel::G requires x >= 0");
  return measure_.tail_integral(x);
}

double phi_eval(const BernsteinChar& ch, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("phi_eval requires lambda > 0");
  return ch.kill_rate + ch.drift * lambda + ch.measure.exponent(lambda);
}

double tail_w(const LevyMeasure& mu, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("tail_w requires z > 0");
  return mu.tail(z);
}

double big_G(const TailKernel& kernel, double x) { return kernel.G(x); }

double phi_parts_identity(const BernsteinChar& ch, double lambda) {
  const double phi = phi_eval(ch, lambda);
  const LevyMeasure& mu = ch.measure;
  double integral = 0.0;
  if (!mu.is_zero()) {
    auto f = [&mu, lambda](double s) { return std::exp(-lambda * s) * mu.tail(s); };
    if (mu.family() == LevyMeasure::Family::kTabulated) {
      // w has compact support and kinks at the nodes; integrate each smooth
      // piece separately so the quadrature never straddles a corner. The head
      // piece is mapped to (0, inf) via s = z0 e^{-u}, which turns the ln s
      // blowup of extended heads into plain e^{-u} decay.
      const auto& z = mu.as_tabulated().z;
      const double z0 = z.front();
      integral = quad::zero_to_inf(
          [&f, z0](double u) {
            const double s = z0 * std::exp(-u);
            return s > 0.0 ? f(s) * s : 0.0;
          },
          1e-10);
      for (std::size_t i = 0; i + 1 < z.size(); ++i)
        integral += quad::finite(f, z[i], z[i + 1], 1e-10);
    } else {
      integral = quad::zero_to_inf(f, 1e-10);
    }
  }
  return std::abs(phi - (ch.kill_rate + ch.drift * lambda + lambda * integral));
}

}  // namespace subfrac
