#ifndef SWS_THEORY_HPP
#define SWS_THEORY_HPP

// Bit statistics of Gaussian-distributed weights.
//
// Weights are modeled as W ~ N(0, sigma). Only |W| matters, and every
// probability here is a ratio of masses of |W| over sub-intervals of
// [0, inf), so the half-normal factor 2 cancels.
//
// Normal tail masses use std::erfc. glibc documents erfc to within a few ulp,
// i.e. relative error around 1e-16, far below the 1e-9 absolute error the
// acceptance tolerances assume.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "sws/error.hpp"
#include "sws/quant.hpp"

namespace sws {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct GaussianWeightModel {
  double sigma = 1.0;

  explicit GaussianWeightModel(double s = 1.0) : sigma(s) { validate(); }

  void validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidConfig("sigma must be a finite value > 0");
  }

  double pdf(double w) const {
    const double z = w / sigma;
    return std::numbers::inv_sqrtpi / (std::numbers::sqrt2 * sigma) * std::exp(-0.5 * z * z);
  }

  /// P(W >= x).
  double upper_tail(double x) const {
    if (x == kInf) return 0.0;
    return 0.5 * std::erfc(x / (sigma * std::numbers::sqrt2));
  }

  /// P(lo <= W < hi) for 0 <= lo (hi may be +inf); 0 for empty ranges.
  double mass(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    return upper_tail(lo) - upper_tail(hi);
  }
};

struct MagnitudeInterval {
  double lo = 0.0;
  double hi = kInf;

  void validate() const {
    if (!(lo >= 0.0) || !(lo < hi) || std::isnan(hi)) throw InvalidConfig("magnitude interval needs 0 <= lo < hi");
  }
};

/// [L, U) with U = L + 2^-n, split at the midpoint M by the next bit.
struct BitPrefixInterval {
  double lower = 0.0;
  int depth = 0;

  BitPrefixInterval(double l, int n) : lower(l), depth(n) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidConfig("prefix lower bound must be finite and >= 0");
    if (n < 0 || n > 60) throw InvalidConfig("bit position must be in [0, 60]");
  }

  double width() const { return std::ldexp(1.0, -depth); }
  double upper() const { return lower + width(); }
  double midpoint() const { return lower + width() / 2.0; }
};

/// P(next bit is 0 | |W| in [L, U)) = mass[L, M) / mass[L, U).
inline double conditional_bit_zero_probability(const GaussianWeightModel& model, double lower, int depth) {
  model.validate();
  const BitPrefixInterval iv(lower, depth);
  const double den = model.mass(iv.lower, iv.upper());
  if (!(den > 0.0)) throw NumericalError("prefix interval has zero probability mass at this sigma");
  return model.mass(iv.lower, iv.midpoint()) / den;
}

/// Rounding cell of code m: [(m - 1/2) s, (m + 1/2) s), clipped at 0; the top code absorbs everything above.
inline MagnitudeInterval code_cell(std::uint32_t m, int bits, double scale) {
  const std::uint32_t qmax = (std::uint32_t{1} << bits) - 1;
  const double lo = m == 0 ? 0.0 : (static_cast<double>(m) - 0.5) * scale;
  const double hi = m == qmax ? kInf : (static_cast<double>(m) + 0.5) * scale;
  return {lo, hi};
}

inline bool code_bit_is_zero(std::uint32_t m, int column, int bits) { return ((m >> (bits - 1 - column)) & 1U) == 0; }

/// P(bit `column` of the quantized code is 0 | |W| in interval), summed exactly over all 2^bits codes.
inline double section_bit_zero_probability(const GaussianWeightModel& model, const MagnitudeInterval& interval, int column,
                                           int bits, double scale) {
  model.validate();
  interval.validate();
  check_bits(bits);
  if (column < 0 || column >= bits) throw InvalidConfig("column must be in [0, bits)");
  if (!(scale > 0.0)) throw InvalidConfig("scale must be > 0");
  const std::uint32_t codes = std::uint32_t{1} << bits;
  double zero_mass = 0.0, total = 0.0;
  for (std::uint32_t m = 0; m < codes; ++m) {
    const auto cell = code_cell(m, bits, scale);
    const double w = model.mass(std::max(cell.lo, interval.lo), std::min(cell.hi, interval.hi));
    total += w;
    if (code_bit_is_zero(m, column, bits)) zero_mass += w;
  }
  if (!(total > 0.0)) throw NumericalError("interval carries no probability mass");
  return std::clamp(zero_mass / total, 0.0, 1.0);
}

/// Probability that at least one of `rows` i.i.d. rows sets the column: 1 - q^rows.
inline double expected_active_probability(const GaussianWeightModel& model, const MagnitudeInterval& interval,
                                          std::size_t rows, int column, int bits, double scale) {
  if (rows < 1) throw InvalidConfig("rows must be >= 1");
  const double q = section_bit_zero_probability(model, interval, column, bits, scale);
  return 1.0 - std::pow(q, static_cast<double>(rows));
}

struct MonteCarloEstimate {
  double probability = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;

  double standard_error() const {
    if (accepted == 0) return 0.0;
    return std::sqrt(probability * (1.0 - probability) / static_cast<double>(accepted));
  }
};

namespace detail {

// Uniform in [0, 1) from the top 53 bits; keeps draws independent of <random> distributions.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double standard_normal(std::mt19937_64& rng) {
  double u1;
  do {
    u1 = unit_uniform(rng);
  } while (u1 <= 0.0);
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Rejection sampler for |W| restricted to [lo, hi). Finite ranges use a uniform
/// proposal accepted with pdf(w) / pdf(lo); unbounded ranges use raw normal draws.
class TruncatedHalfNormal {
 public:
  TruncatedHalfNormal(const GaussianWeightModel& model, MagnitudeInterval iv, std::uint64_t seed)
      : model_(model), iv_(iv), rng_(seed) {}

  /// Returns false when the proposal was rejected.
  bool draw(double& w) {
    if (std::isfinite(iv_.hi)) {
      w = iv_.lo + (iv_.hi - iv_.lo) * unit_uniform(rng_);
      const double accept = std::exp(-(w * w - iv_.lo * iv_.lo) / (2.0 * model_.sigma * model_.sigma));
      return unit_uniform(rng_) < accept;
    }
    w = std::abs(standard_normal(rng_)) * model_.sigma;
    return w >= iv_.lo && w < iv_.hi;
  }

 private:
  GaussianWeightModel model_;
  MagnitudeInterval iv_;
  std::mt19937_64 rng_;
};

template <typename IsZero>
MonteCarloEstimate run_monte_carlo(const GaussianWeightModel& model, const MagnitudeInterval& iv, std::uint64_t samples,
                                   std::uint64_t seed, IsZero&& is_zero) {
  if (samples < 1) throw InvalidConfig("samples must be >= 1");
  TruncatedHalfNormal sampler(model, iv, seed);
  const std::uint64_t max_attempts = samples * 1000;
  MonteCarloEstimate est;
  std::uint64_t zeros = 0;
  double w = 0.0;
  while (est.accepted < samples && est.attempts < max_attempts) {
    ++est.attempts;
    if (!sampler.draw(w)) continue;
    ++est.accepted;
    zeros += is_zero(w);
  }
  if (est.accepted == 0) throw NumericalError("Monte Carlo sampler accepted no samples in the requested region");
  est.probability = static_cast<double>(zeros) / static_cast<double>(est.accepted);
  return est;
}

}  // namespace detail

/// Empirical P(|W| < M | |W| in [L, U)) from `samples` accepted draws.
inline MonteCarloEstimate monte_carlo_prefix_bit_stats(const GaussianWeightModel& model, double lower, int depth,
                                                       std::uint64_t samples, std::uint64_t seed) {
  model.validate();
  const BitPrefixInterval iv(lower, depth);
  const double mid = iv.midpoint();
  return detail::run_monte_carlo(model, {iv.lower, iv.upper()}, samples, seed, [mid](double w) { return w < mid; });
}

/// Empirical P(bit `column` of the quantized code is 0 | |W| in interval).
inline MonteCarloEstimate monte_carlo_section_bit_stats(const GaussianWeightModel& model, const MagnitudeInterval& interval,
                                                        int column, int bits, double scale, std::uint64_t samples,
                                                        std::uint64_t seed) {
  model.validate();
  interval.validate();
  check_bits(bits);
  if (column < 0 || column >= bits) throw InvalidConfig("column must be in [0, bits)");
  if (!(scale > 0.0)) throw InvalidConfig("scale must be > 0");
  const double qmax = static_cast<double>((std::uint32_t{1} << bits) - 1);
  return detail::run_monte_carlo(model, interval, samples, seed, [&](double w) {
    const auto m = static_cast<std::uint32_t>(std::min(round_half_away(w / scale), qmax));
    return code_bit_is_zero(m, column, bits);
  });
}

}  // namespace sws

#endif  // SWS_THEORY_HPP
