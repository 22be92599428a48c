#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace subfrac {

namespace detail {

// SplitMix64 finalizer. Used to turn (seed, stream) pairs into well-mixed
// engine seeds so that nearby stream ids give unrelated sequences.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t x = splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL;
  x ^= splitmix64(s);
  return x;
}

}  // namespace detail

/// A reproducible random stream keyed by (seed, stream id).
///
/// Identical (seed, stream) pairs replay identical draws; distinct stream
/// ids are statistically independent. All variate generators are implemented
/// on top of the raw engine output so results are bit-stable across
/// platforms and standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), engine_(detail::mix2(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Derives an independent stream; used to decouple e.g. the killing-time
  /// draw from the path draws of one Monte Carlo sample.
  RngStream substream(std::uint64_t tag) const {
    return RngStream(detail::mix2(seed_, ~stream_), tag);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1); never returns an endpoint.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exp(rate); rate = 0 yields +infinity.
  double exponential(double rate) {
    if (rate < 0.0) throw std::domain_error("exponential: rate < 0");
    if (rate == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate;
  }

  /// Standard normal via Box-Muller (no state carried between calls).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Gamma(shape, rate) by Marsaglia-Tsang squeeze; shape < 1 handled by
  /// the boosting identity Gamma(s) = Gamma(s+1) * U^{1/s}.
  double gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0) throw std::domain_error("gamma: shape and rate must be > 0");
    double boost = 1.0;
    if (shape < 1.0) {
      boost = std::pow(uniform(), 1.0 / shape);
      shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
    }
  }

  /// Poisson(mean). Knuth multiplication for small means; larger means are
  /// split into additive chunks (Poisson is infinitely divisible), which
  /// stays exact without a rejection sampler.
  std::uint64_t poisson(double mean) {
    if (mean < 0.0) throw std::domain_error("poisson: mean < 0");
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_knuth(30.0);
      mean -= 30.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  std::uint64_t poisson_knuth(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace subfrac
