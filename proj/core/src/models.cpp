#include "subfrac/models.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "subfrac/errors.hpp"
#include "subfrac/parallel.hpp"

namespace subfrac {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFdStep = 1e-4;       // central-difference step for missing derivatives
constexpr double kGaussCut = 8.5;      // standard-normal tail beyond this is < 1e-16
constexpr int kJumpQuadCells = 400;    // midpoint cells for the grid jump operator

// Adaptive Gauss-Kronrod with a mixed absolute/relative error gate; unlike
// quad::finite this tolerates integrals that are legitimately ~0.
double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) return 0.0;
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-9, &error);
  if (!std::isfinite(value) || error > 1e-6 * std::max(1.0, std::abs(value)))
    throw NumericError("semigroup/generator quadrature did not converge");
  return value;
}

double normal_pdf(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * kPi); }

double deriv1_of(const TestFunction& f, double x) {
  if (f.deriv1) return f.deriv1(x);
  return (f.value(x + kFdStep) - f.value(x - kFdStep)) / (2.0 * kFdStep);
}

double deriv2_of(const TestFunction& f, double x) {
  if (f.deriv2) return f.deriv2(x);
  return (f.value(x + kFdStep) - 2.0 * f.value(x) + f.value(x - kFdStep)) / (kFdStep * kFdStep);
}

// Density of the jump law: Exp(rate) conditioned to (0, cut].
double jump_density(const MarkovModel::JumpDiffusionParams& p, double z) {
  if (z <= 0.0 || z > p.jump_cut) return 0.0;
  return p.jump_rate * std::exp(-p.jump_rate * z) / (-std::expm1(-p.jump_rate * p.jump_cut));
}

double jump_size_draw(const MarkovModel::JumpDiffusionParams& p, RngStream& rng) {
  const double u = rng.uniform();
  return -std::log1p(u * std::expm1(-p.jump_rate * p.jump_cut)) / p.jump_rate;
}

// Absorbing heat kernel on (-L, L) by the method of images, mapped to (0, 2L).
double dirichlet_kernel(double s, double u, double v, double length) {
  const double period = 2.0 * length;  // domain length after the shift
  double sum = 0.0;
  for (int n = -4; n <= 4; ++n) {
    const double shift = 2.0 * period * n;
    sum += std::exp(-0.5 * (v - u + shift) * (v - u + shift) / s);
    sum -= std::exp(-0.5 * (v + u + shift) * (v + u + shift) / s);
  }
  return sum / std::sqrt(2.0 * kPi * s);
}

}  // namespace

namespace test_functions {

TestFunction constant(double c) {
  TestFunction f;
  f.name = "const";
  f.value = [c](double) { return c; };
  f.deriv1 = [](double) { return 0.0; };
  f.deriv2 = [](double) { return 0.0; };
  f.sup_norm = std::abs(c);
  f.is_eigen = true;
  f.eigenvalue = 0.0;
  return f;
}

TestFunction sine() {
  TestFunction f;
  f.name = "sin";
  f.value = [](double x) { return std::sin(x); };
  f.deriv1 = [](double x) { return std::cos(x); };
  f.deriv2 = [](double x) { return -std::sin(x); };
  f.sup_norm = 1.0;
  f.is_eigen = true;
  f.eigenvalue = 0.5;
  return f;
}

TestFunction cosine() {
  TestFunction f;
  f.name = "cos";
  f.value = [](double x) { return std::cos(x); };
  f.deriv1 = [](double x) { return -std::sin(x); };
  f.deriv2 = [](double x) { return -std::cos(x); };
  f.sup_norm = 1.0;
  f.is_eigen = true;
  f.eigenvalue = 0.5;
  return f;
}

TestFunction gaussian(double center, double width) {
  if (!(width > 0.0) || !std::isfinite(center))
    throw ConfigError("gaussian test function requires finite center and width > 0");
  TestFunction f;
  f.name = "gaussian";
  const double w2 = width * width;
  f.value = [center, w2](double x) {
    const double d = x - center;
    return std::exp(-0.5 * d * d / w2);
  };
  f.deriv1 = [center, w2, g = f.value](double x) { return -(x - center) / w2 * g(x); };
  f.deriv2 = [center, w2, g = f.value](double x) {
    const double d = x - center;
    return (d * d / (w2 * w2) - 1.0 / w2) * g(x);
  };
  f.sup_norm = 1.0;
  return f;
}

}  // namespace test_functions

MarkovModel MarkovModel::eigen(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw ConfigError("eigen model requires theta >= 0");
  MarkovModel m;
  m.kind_ = Kind::kEigen;
  m.theta_ = theta;
  return m;
}

MarkovModel MarkovModel::brownian_torus() {
  MarkovModel m;
  m.kind_ = Kind::kBrownianTorus;
  m.x_max_ = 2.0 * kPi;
  return m;
}

MarkovModel MarkovModel::brownian_line(double x_max) {
  if (!(x_max > 0.0)) throw ConfigError("brownian_line requires x_max > 0");
  MarkovModel m;
  m.kind_ = Kind::kBrownianLine;
  m.x_max_ = x_max;
  return m;
}

MarkovModel MarkovModel::jump_diffusion(const JumpDiffusionParams& p) {
  if (!(p.jump_intensity >= 0.0) || !(p.jump_rate > 0.0) || !(p.jump_cut > 0.0) ||
      !(p.x_max > 0.0))
    throw ConfigError("jump_diffusion requires intensity >= 0, rate > 0, cut > 0, x_max > 0");
  MarkovModel m;
  m.kind_ = Kind::kJumpDiffusion;
  m.x_max_ = p.x_max;
  m.jd_ = p;
  // intensity * E[Z 1{Z<1}] for Z ~ Exp(rate) | Z <= cut, in closed form.
  const double mcut = std::min(1.0, p.jump_cut);
  const double r = p.jump_rate;
  m.jump_comp_ = p.jump_intensity * (1.0 - (1.0 + r * mcut) * std::exp(-r * mcut)) /
                 (r * (-std::expm1(-r * p.jump_cut)));
  return m;
}

std::string MarkovModel::kind_name() const {
  switch (kind_) {
    case Kind::kEigen:
      return "eigen";
    case Kind::kBrownianTorus:
      return "brownian_torus";
    case Kind::kBrownianLine:
      return "brownian_line";
    case Kind::kJumpDiffusion:
      return "jump_diffusion";
  }
  return "?";
}

double MarkovModel::eigen_theta() const {
  if (kind_ != Kind::kEigen) throw std::logic_error("not an eigen model");
  return theta_;
}

double MarkovModel::x_max() const { return x_max_; }

const MarkovModel::JumpDiffusionParams& MarkovModel::jd() const {
  if (kind_ != Kind::kJumpDiffusion) throw std::logic_error("not a jump-diffusion model");
  return jd_;
}

double MarkovModel::jump_compensation() const {
  if (kind_ != Kind::kJumpDiffusion) throw std::logic_error("not a jump-diffusion model");
  return jump_comp_;
}

double semigroup_apply(const MarkovModel& model, double s, const TestFunction& f, double x) {
  if (!(s >= 0.0)) throw std::invalid_argument("semigroup_apply requires s >= 0");
  if (s == 0.0) return f.value(x);
  switch (model.kind()) {
    case MarkovModel::Kind::kEigen:
      return std::exp(-model.eigen_theta() * s) * f.value(x);
    case MarkovModel::Kind::kBrownianTorus: {
      const double sd = std::sqrt(s);
      return integrate([&f, x, sd](double u) { return f.value(x + sd * u) * normal_pdf(u); },
                       -kGaussCut, kGaussCut);
    }
    case MarkovModel::Kind::kBrownianLine: {
      const double length = model.x_max();
      if (std::abs(x) > length)
        throw std::invalid_argument("semigroup_apply: x outside the truncated domain");
      const double u0 = x + length;
      return integrate(
          [&f, s, u0, length](double v) {
            return f.value(v - length) * dirichlet_kernel(s, u0, v, length);
          },
          0.0, 2.0 * length);
    }
    case MarkovModel::Kind::kJumpDiffusion:
      throw ConfigError("jump_diffusion has no deterministic semigroup; use the Monte Carlo form");
  }
  return 0.0;
}

MeanVar semigroup_apply_mc(const MarkovModel& model, double s, const TestFunction& f, double x,
                           RngStream& rng, std::size_t n_paths, double step) {
  if (!(s >= 0.0)) throw std::invalid_argument("semigroup_apply_mc requires s >= 0");
  if (n_paths == 0) throw ConfigError("semigroup_apply_mc requires at least one path");
  std::vector<double> vals(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    MarkovPathSimulator sim(model, x, step, rng.substream(i));
    vals[i] = f.value(sim.advance_to(s));
  }
  const double mean = pairwise_sum(vals) / static_cast<double>(n_paths);
  double se = 0.0;
  if (n_paths > 1) {
    for (double& v : vals) v = (v - mean) * (v - mean);
    se = std::sqrt(pairwise_sum(vals) / static_cast<double>(n_paths - 1) /
                   static_cast<double>(n_paths));
  }
  return {mean, se};
}

double generator_apply(const MarkovModel& model, const TestFunction& f, double x) {
  switch (model.kind()) {
    case MarkovModel::Kind::kEigen:
      return -model.eigen_theta() * f.value(x);
    case MarkovModel::Kind::kBrownianTorus:
    case MarkovModel::Kind::kBrownianLine:
      return 0.5 * deriv2_of(f, x);
    case MarkovModel::Kind::kJumpDiffusion: {
      const auto& p = model.jd();
      const double d1 = deriv1_of(f, x);
      const double sig = p.sigma_const + p.sigma_slope * x;
      double out = (p.drift_const + p.drift_slope * x) * d1 + 0.5 * sig * sig * deriv2_of(f, x);
      const double fx = f.value(x);
      const double mcut = std::min(1.0, p.jump_cut);
      // compensated below |z| = 1, plain above
      out += p.jump_intensity *
             integrate(
                 [&](double z) {
                   return (f.value(x + z) - fx - z * d1) * jump_density(p, z);
                 },
                 0.0, mcut);
      if (p.jump_cut > 1.0)
        out += p.jump_intensity *
               integrate([&](double z) { return (f.value(x + z) - fx) * jump_density(p, z); },
                         1.0, p.jump_cut);
      return out;
    }
  }
  return 0.0;
}

Eigen::MatrixXd generator_matrix(const MarkovModel& model, const std::vector<double>& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  if (m < 3) throw std::invalid_argument("generator_matrix requires at least 3 grid nodes");
  const double dx = grid[1] - grid[0];
  if (!(dx > 0.0)) throw std::invalid_argument("generator_matrix requires an increasing grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - grid[i - 1] - dx) > 1e-9 * dx)
      throw std::invalid_argument("generator_matrix requires a uniform grid");
  }

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  const double inv2dx2 = 0.5 / (dx * dx);

  switch (model.kind()) {
    case MarkovModel::Kind::kEigen:
      return -model.eigen_theta() * Eigen::MatrixXd::Identity(m, m);
    case MarkovModel::Kind::kBrownianTorus:
      for (Eigen::Index i = 0; i < m; ++i) {
        l(i, i) = -2.0 * inv2dx2;
        l(i, (i + 1) % m) += inv2dx2;
        l(i, (i + m - 1) % m) += inv2dx2;
      }
      return l;
    case MarkovModel::Kind::kBrownianLine:
      for (Eigen::Index i = 0; i < m; ++i) {
        l(i, i) = -2.0 * inv2dx2;
        if (i + 1 < m) l(i, i + 1) += inv2dx2;
        if (i > 0) l(i, i - 1) += inv2dx2;
      }
      return l;
    case MarkovModel::Kind::kJumpDiffusion: {
      const auto& p = model.jd();
      const double comp = model.jump_compensation();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double y = grid[static_cast<std::size_t>(i)];
        const double b = p.drift_const + p.drift_slope * y - comp;
        const double sig = p.sigma_const + p.sigma_slope * y;
        const double diff = sig * sig * inv2dx2;
        l(i, i) += -2.0 * diff;
        if (i + 1 < m) l(i, i + 1) += diff + b / (2.0 * dx);
        if (i > 0) l(i, i - 1) += diff - b / (2.0 * dx);
        // midpoint quadrature of the plain-jump operator; values beyond the
        // grid are absorbed (zero), values between nodes linearly interpolated
        const double dz = p.jump_cut / kJumpQuadCells;
        for (int q = 0; q < kJumpQuadCells; ++q) {
          const double z = (q + 0.5) * dz;
          const double wq = p.jump_intensity * jump_density(p, z) * dz;
          l(i, i) -= wq;
          const double target = y + z;
          const double pos = (target - grid.front()) / dx;
          const auto j = static_cast<Eigen::Index>(std::floor(pos));
          if (j < 0 || j >= m) continue;  // absorbed
          const double frac = pos - std::floor(pos);
          l(i, j) += wq * (1.0 - frac);
          if (j + 1 < m) l(i, j + 1) += wq * frac;
        }
      }
      return l;
    }
  }
  return l;
}

MarkovPathSimulator::MarkovPathSimulator(const MarkovModel& model, double x0, double step,
                                         RngStream rng)
    : model_(model), step_(step), rng_(std::move(rng)), y_(x0) {
  if (model.kind() == MarkovModel::Kind::kEigen)
    throw ConfigError("the eigen model is abstract and has no sample paths");
  if (model.kind() == MarkovModel::Kind::kJumpDiffusion && !(step > 0.0))
    throw std::invalid_argument("MarkovPathSimulator requires step > 0");
}

double MarkovPathSimulator::advance_to(double s) {
  if (s < time_ - 1e-12) throw std::invalid_argument("advance_to requires non-decreasing times");
  if (s <= time_) return y_;
  switch (model_.kind()) {
    case MarkovModel::Kind::kEigen:
      break;  // unreachable; rejected in the constructor
    case MarkovModel::Kind::kBrownianTorus:
    case MarkovModel::Kind::kBrownianLine: {
      y_ += std::sqrt(s - time_) * rng_.normal();
      time_ = s;
      break;
    }
    case MarkovModel::Kind::kJumpDiffusion: {
      const auto& p = model_.jd();
      const double comp = model_.jump_compensation();
      while (time_ < s) {
        const double remaining = s - time_;
        const bool closing = remaining <= step_;
        const double h = closing ? remaining : step_;
        const double b = p.drift_const + p.drift_slope * y_ - comp;
        const double sig = p.sigma_const + p.sigma_slope * y_;
        double dy = b * h + sig * std::sqrt(h) * rng_.normal();
        const std::uint64_t n = rng_.poisson(p.jump_intensity * h);
        for (std::uint64_t q = 0; q < n; ++q) dy += jump_size_draw(p, rng_);
        y_ += dy;
        time_ = closing ? s : time_ + h;
      }
      break;
    }
  }
  return y_;
}

}  // namespace subfrac
