#ifndef SWS_QUANT_HPP
#define SWS_QUANT_HPP

// Sign/magnitude fixed-point quantization, bit slicing and magnitude pruning.
//
// A weight w is stored as sign * m * s where m is an unsigned b-bit code.
// Column j of a bit-sliced row holds bit (b-1-j) of m, so column 0 is the
// most significant one and carries significance 2^(b-1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sws/error.hpp"

namespace sws {

inline constexpr int kMinBits = 1;
inline constexpr int kMaxBits = 16;

struct FloatTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;  // row-major

  FloatTensor() = default;
  FloatTensor(std::vector<std::size_t> s, std::vector<double> v) : shape(std::move(s)), values(std::move(v)) {}

  static FloatTensor vector(std::vector<double> v) {
    std::vector<std::size_t> s{v.size()};
    return {std::move(s), std::move(v)};
  }

  std::size_t element_count() const {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  }

  void validate() const {
    if (shape.empty()) throw InvalidTensor("tensor has no dimensions");
    if (element_count() != values.size())
      throw InvalidTensor("tensor shape does not match value count (" + std::to_string(element_count()) + " vs " +
                          std::to_string(values.size()) + ")");
    for (double v : values)
      if (!std::isfinite(v)) throw InvalidTensor("tensor contains a non-finite value");
  }

  bool operator==(const FloatTensor&) const = default;
};

struct QuantConfig {
  int weight_bits = 8;
  int activation_bits = 8;

  void validate() const {
    if (weight_bits < kMinBits || weight_bits > kMaxBits)
      throw InvalidConfig("weight_bits must be in [1, 16], got " + std::to_string(weight_bits));
    if (activation_bits < kMinBits || activation_bits > kMaxBits)
      throw InvalidConfig("activation_bits must be in [1, 16], got " + std::to_string(activation_bits));
  }
};

struct QuantizedTensor {
  std::vector<std::size_t> shape;
  std::vector<std::int8_t> signs;          // +1 / -1, +1 whenever the magnitude is 0
  std::vector<std::uint32_t> magnitudes;   // in [0, 2^bits - 1]
  double scale = 1.0;                      // real units per code
  int bits = 8;

  std::size_t size() const { return magnitudes.size(); }
  std::uint32_t max_code() const { return (std::uint32_t{1} << bits) - 1; }

  /// Signed integer code sign * m.
  std::int64_t code(std::size_t i) const { return std::int64_t{signs[i]} * std::int64_t{magnitudes[i]}; }

  std::vector<std::int64_t> signed_codes() const {
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = code(i);
    return out;
  }

  std::size_t nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(magnitudes.begin(), magnitudes.end(), [](auto m) { return m != 0; }));
  }

  /// Copies row r of a 2-D tensor (or the whole tensor when 1-D) as a 1-D tensor.
  QuantizedTensor row(std::size_t r) const {
    const std::size_t cols = shape.size() >= 2 ? shape.back() : size();
    if ((r + 1) * cols > size()) throw ShapeError("row index out of range");
    QuantizedTensor out;
    out.shape = {cols};
    out.signs.assign(signs.begin() + static_cast<std::ptrdiff_t>(r * cols),
                     signs.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    out.magnitudes.assign(magnitudes.begin() + static_cast<std::ptrdiff_t>(r * cols),
                          magnitudes.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    out.scale = scale;
    out.bits = bits;
    return out;
  }
};

/// Round half away from zero.
inline double round_half_away(double x) { return std::round(x); }

inline void check_bits(int b) {
  if (b < kMinBits || b > kMaxBits) throw InvalidConfig("bit width must be in [1, 16], got " + std::to_string(b));
}

/// Symmetric per-tensor max-abs quantization to b magnitude bits.
inline QuantizedTensor quantize(const FloatTensor& t, int b) {
  t.validate();
  check_bits(b);
  QuantizedTensor q;
  q.shape = t.shape;
  q.bits = b;
  q.signs.resize(t.values.size());
  q.magnitudes.resize(t.values.size());

  double max_abs = 0.0;
  for (double v : t.values) max_abs = std::max(max_abs, std::abs(v));
  const auto qmax = static_cast<double>((std::uint32_t{1} << b) - 1);
  q.scale = max_abs > 0.0 ? max_abs / qmax : 1.0;

  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const double v = t.values[i];
    // |v| * qmax / max_abs rather than |v| / scale: keeps exact halves exact.
    const double ratio = max_abs > 0.0 ? std::abs(v) * qmax / max_abs : 0.0;
    const auto m = static_cast<std::uint32_t>(std::min(round_half_away(ratio), qmax));
    q.magnitudes[i] = m;
    q.signs[i] = (m != 0 && v < 0.0) ? std::int8_t{-1} : std::int8_t{1};
  }
  return q;
}

inline FloatTensor dequantize(const QuantizedTensor& q) {
  FloatTensor t;
  t.shape = q.shape;
  t.values.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    t.values[i] = static_cast<double>(q.signs[i]) * static_cast<double>(q.magnitudes[i]) * q.scale;
  return t;
}

/// Bits of m, most significant first: out[j] has significance 2^(b-1-j).
inline std::vector<std::uint8_t> bit_slice(std::uint64_t m, int b) {
  check_bits(b);
  if (m >= (std::uint64_t{1} << b))
    throw InvalidCode("code " + std::to_string(m) + " does not fit in " + std::to_string(b) + " bits");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(b));
  for (int j = 0; j < b; ++j) bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((m >> (b - 1 - j)) & 1U);
  return bits;
}

inline std::uint64_t bits_to_code(std::span<const std::uint8_t> bits) {
  std::uint64_t m = 0;
  for (auto bit : bits) m = (m << 1) | (bit & 1U);
  return m;
}

/// Zeroes exactly floor(sparsity * N) smallest-magnitude elements; ties prune the lower flat index first.
inline FloatTensor prune_magnitude(const FloatTensor& t, double sparsity) {
  if (!(sparsity >= 0.0 && sparsity <= 1.0))
    throw InvalidConfig("sparsity must be in [0, 1], got " + std::to_string(sparsity));
  t.validate();
  const std::size_t n = t.values.size();
  const auto k = static_cast<std::size_t>(std::floor(sparsity * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(t.values[a]) < std::abs(t.values[b]); });
  FloatTensor out = t;
  for (std::size_t i = 0; i < k; ++i) out.values[order[i]] = 0.0;
  return out;
}

}  // namespace sws

#endif  // SWS_QUANT_HPP
