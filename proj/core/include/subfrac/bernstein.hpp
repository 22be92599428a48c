#pragma once

#include <string>
#include <variant>
#include <vector>

namespace subfrac {

/// Levy-measure families of the Bernstein catalog.
///
/// Each family fixes a measure mu on (0, inf) with int (1 ^ z) mu(dz) < inf,
/// reported through three views used across the project:
///   tail(z)           w(z) = mu((z, inf))            (the memory kernel)
///   tail_integral(x)  G(x) = int_0^x w(t) dt
///   exponent(l)       int_0^inf (1 - e^{-l z}) mu(dz)
class LevyMeasure {
 public:
  enum class Family { kNone, kStable, kGamma, kDistributedOrder, kExpJumps, kTabulated };

  struct StableParams {
    double beta;  // in (0,1); density beta z^{-1-beta} / Gamma(1-beta), so exponent = l^beta
  };
  struct GammaParams {
    double c;    // shape rate per unit time
    double eta;  // jump-size decay; density c z^{-1} e^{-eta z}
  };
  struct DistributedOrderParams {
    std::vector<double> betas;    // atoms in (0,1)
    std::vector<double> weights;  // positive weights; exponent = sum w_i l^{beta_i}
  };
  struct ExpJumpsParams {
    double c;    // total jump intensity, mu((0,inf)) = c
    double eta;  // jump sizes Exp(eta); density c eta e^{-eta z}
  };
  struct TabulatedParams {
    std::vector<double> z;  // strictly increasing, > 0
    std::vector<double> w;  // non-increasing, >= 0; tail values at the nodes
  };

  static LevyMeasure none();
  static LevyMeasure stable(double beta);
  static LevyMeasure gamma_process(double c, double eta);
  static LevyMeasure distributed_order(std::vector<double> betas, std::vector<double> weights);
  static LevyMeasure exp_jumps(double c, double eta);

  /// Tabulated tail: between nodes w is linear in log z; below the first
  /// node the first segment is extended (so w may diverge logarithmically
  /// at 0); beyond the last node w = 0, i.e. any remaining mass w.back()
  /// sits as an atom at z.back().
  static LevyMeasure tabulated(std::vector<double> z, std::vector<double> w);

  Family family() const { return family_; }
  bool is_zero() const { return family_ == Family::kNone; }

  /// True iff mu((0, inf)) = inf (equivalently w unbounded at 0).
  bool infinite_activity() const;

  double tail(double z) const;
  double tail_integral(double x) const;
  double exponent(double lambda) const;

  /// Generalized inverse inf{z > 0 : tail(z) <= v} of a tabulated tail;
  /// used by the jump sampler. Only defined for the tabulated family.
  double tail_inverse(double v) const;

  const StableParams& as_stable() const;
  const GammaParams& as_gamma() const;
  const DistributedOrderParams& as_distributed_order() const;
  const ExpJumpsParams& as_exp_jumps() const;
  const TabulatedParams& as_tabulated() const;

  std::string family_name() const;

 private:
  struct TabulatedData {
    std::vector<double> z, w, logz;
    std::vector<double> slope;     // d w / d ln z per segment, <= 0
    std::vector<double> area;     // cumulative int_0^{z_i} w dt (area[0] covers (0, z_0])
    double head_slope = 0.0;       // extension slope below z_0
  };

  LevyMeasure() = default;

  Family family_ = Family::kNone;
  std::variant<std::monostate, StableParams, GammaParams, DistributedOrderParams, ExpJumpsParams,
               TabulatedParams>
      params_;
  TabulatedData tab_;  // populated for kTabulated only

  double tabulated_tail(double z) const;
  double tabulated_tail_integral(double x) const;
  double tabulated_exponent(double lambda) const;
};

/// Characteristics (kill rate, drift, Levy measure) of a Bernstein function
///   phi(l) = kill_rate + drift * l + int_0^inf (1 - e^{-l z}) mu(dz).
struct BernsteinChar {
  BernsteinChar(double kill_rate, double drift, LevyMeasure measure);

  double kill_rate;  // "a" >= 0
  double drift;      // "k" >= 0
  LevyMeasure measure;
};

/// The memory kernel pair (w, G) of a Levy measure. G(0) = 0, G' = w,
/// G concave since w is non-increasing.
class TailKernel {
 public:
  explicit TailKernel(LevyMeasure measure) : measure_(std::move(measure)) {}

  double w(double z) const;
  double G(double x) const;
  const LevyMeasure& measure() const { return measure_; }

 private:
  LevyMeasure measure_;
};

/// phi(l) for l > 0. Closed form for the analytic families, quadrature
/// (relative tolerance 1e-9) for tabulated tails.
double phi_eval(const BernsteinChar& ch, double lambda);

/// w(z) = mu((z, inf)) for z > 0.
double tail_w(const LevyMeasure& mu, double z);

/// G(x) = int_0^x w for x >= 0.
double big_G(const TailKernel& kernel, double x);

/// Self-consistency residual |phi(l) - (a + k l + l * int_0^inf e^{-l s} w(s) ds)|
/// with the integral evaluated by quadrature on the tail function.
double phi_parts_identity(const BernsteinChar& ch, double lambda);

}  // namespace subfrac
