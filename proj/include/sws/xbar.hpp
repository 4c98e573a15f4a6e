#ifndef SWS_XBAR_HPP
#define SWS_XBAR_HPP

// Functional model of sectioned bit-sliced crossbar dot products.
//
// Each section produces one signed analog sum per column. Active columns go
// through a bipolar mid-tread ADC with step FS / (2^(r-1) - 1); the digitized
// values are shifted by column significance and accumulated across sections.
// Accumulation is exact: a column's conversions all share one step size, so
// per column we keep an integer numerator over a fixed denominator and only
// leave integer arithmetic when reading the final value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sws/error.hpp"
#include "sws/mapper.hpp"
#include "sws/quant.hpp"

namespace sws {

inline constexpr int kMaxAdcResolution = 32;

struct AdcProfile {
  std::vector<int> resolutions;  // one per column, MSB column first; 0 drops the column
  std::int64_t full_scale = 1;

  /// R * (2^bx - 1): the largest attainable |column sum|.
  static std::int64_t full_scale_for(std::size_t rows_per_section, int activation_bits) {
    return static_cast<std::int64_t>(rows_per_section) * ((std::int64_t{1} << activation_bits) - 1);
  }

  static AdcProfile fixed(int bits, int resolution, std::size_t rows_per_section, int activation_bits) {
    return {std::vector<int>(static_cast<std::size_t>(bits), resolution), full_scale_for(rows_per_section, activation_bits)};
  }

  /// Smallest uniform resolution whose converter is lossless for this geometry.
  static int lossless_resolution(std::int64_t full_scale) {
    int r = 2;
    while (((std::int64_t{1} << (r - 1)) - 1) < full_scale) ++r;
    return r;
  }

  static AdcProfile lossless(int bits, std::size_t rows_per_section, int activation_bits) {
    const auto fs = full_scale_for(rows_per_section, activation_bits);
    return {std::vector<int>(static_cast<std::size_t>(bits), lossless_resolution(fs)), fs};
  }

  void validate(int bits) const {
    if (resolutions.size() != static_cast<std::size_t>(bits))
      throw InvalidConfig("ADC profile has " + std::to_string(resolutions.size()) + " entries but weights have " +
                          std::to_string(bits) + " bit columns");
    if (full_scale < 1) throw InvalidConfig("ADC full scale must be >= 1");
    for (int r : resolutions)
      if (r < 0 || r > kMaxAdcResolution) throw InvalidConfig("ADC resolution must be in [0, 32], got " + std::to_string(r));
  }

  bool is_lossless() const {
    return std::all_of(resolutions.begin(), resolutions.end(),
                       [&](int r) { return r >= 2 && ((std::int64_t{1} << (r - 1)) - 1) >= full_scale; });
  }

  bool operator==(const AdcProfile&) const = default;
};

/// One digitized column value, numerator / denominator.
struct AdcSample {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// Denominator used for column conversions at resolution r: 1 when the converter is lossless or dropped.
inline std::int64_t adc_denominator(int r, std::int64_t full_scale) {
  if (r < 2) return 1;
  const std::int64_t levels = (std::int64_t{1} << (r - 1)) - 1;
  return levels >= full_scale ? 1 : levels;
}

inline AdcSample adc_sample(std::int64_t sum, int r, std::int64_t full_scale) {
  if (r <= 1) return {0, adc_denominator(r, full_scale)};
  const std::int64_t levels = (std::int64_t{1} << (r - 1)) - 1;
  if (levels >= full_scale) return {sum, 1};
  // round_half_away(sum / delta) with delta = FS / levels, in integers.
  const __int128 scaled = static_cast<__int128>(sum < 0 ? -sum : sum) * levels;
  auto code = static_cast<std::int64_t>((2 * scaled + full_scale) / (2 * static_cast<__int128>(full_scale)));
  code = std::min(code, levels);
  if (sum < 0) code = -code;
  return {code * full_scale, levels};
}

/// Value the ADC reports for a signed column sum.
inline double adc_quantize(std::int64_t sum, int r, std::int64_t full_scale) {
  if (r < 0) throw InvalidConfig("ADC resolution must be >= 0");
  if (full_scale < 1) throw InvalidConfig("ADC full scale must be >= 1");
  return adc_sample(sum, r, full_scale).value();
}

/// Step size of a quantizing converter; 0 for lossless or dropped columns.
inline double adc_step(int r, std::int64_t full_scale) {
  if (r < 2) return 0.0;
  const std::int64_t levels = (std::int64_t{1} << (r - 1)) - 1;
  return levels >= full_scale ? 0.0 : static_cast<double>(full_scale) / static_cast<double>(levels);
}

inline std::vector<std::int64_t> section_column_sums(const BitSlicedSection& section, std::span<const std::int64_t> gathered_x) {
  if (gathered_x.size() != section.row_count())
    throw ShapeError("section has " + std::to_string(section.row_count()) + " rows but got " +
                     std::to_string(gathered_x.size()) + " activations");
  const auto b = static_cast<std::size_t>(section.bits);
  std::vector<std::int64_t> sums(b, 0);
  for (std::size_t r = 0; r < section.real_rows(); ++r) {
    const std::int64_t x = gathered_x[r] * section.row_signs[r];
    if (x == 0) continue;
    for (std::size_t j = 0; j < b; ++j)
      if (section.bit(r, j)) sums[j] += x;
  }
  return sums;
}

struct ConversionEntry {
  std::uint32_t section = 0;
  std::uint32_t column = 0;
  bool active = false;
  int resolution = 0;
  bool performed = false;

  bool operator==(const ConversionEntry&) const = default;
};

using ConversionLog = std::vector<ConversionEntry>;

/// Exact shift-add accumulator: value = sum_j numerator[j] / denominator[j].
struct Accumulator {
  std::vector<__int128> numerators;
  std::vector<std::int64_t> denominators;

  Accumulator() = default;
  Accumulator(const AdcProfile& profile) {
    numerators.assign(profile.resolutions.size(), 0);
    for (int r : profile.resolutions) denominators.push_back(adc_denominator(r, profile.full_scale));
  }

  bool is_integer() const {
    return std::all_of(denominators.begin(), denominators.end(), [](auto d) { return d == 1; });
  }

  /// Exact integer value; only meaningful when is_integer().
  __int128 integer_value() const {
    __int128 v = 0;
    for (auto n : numerators) v += n;
    return v;
  }

  double value() const {
    if (is_integer()) return static_cast<double>(integer_value());
    long double v = 0.0L;
    for (std::size_t j = 0; j < numerators.size(); ++j)
      v += static_cast<long double>(numerators[j]) / static_cast<long double>(denominators[j]);
    return static_cast<double>(v);
  }
};

struct SectionResult {
  std::vector<std::int64_t> column_sums;
  std::vector<AdcSample> samples;
  double value = 0.0;
  std::size_t conversions = 0;
};

namespace detail {

inline SectionResult run_section(const BitSlicedSection& section, std::span<const std::int64_t> gathered_x,
                                 const AdcProfile& profile, std::uint32_t section_index, Accumulator* acc,
                                 ConversionLog* log) {
  SectionResult res;
  res.column_sums = section_column_sums(section, gathered_x);
  const auto b = static_cast<std::size_t>(section.bits);
  res.samples.resize(b);
  for (std::size_t j = 0; j < b; ++j) {
    const int r = profile.resolutions[j];
    const bool active = section.active_mask[j] != 0;
    const bool performed = active && r > 0;
    if (log) log->push_back({section_index, static_cast<std::uint32_t>(j), active, r, performed});
    if (!active) continue;
    if (performed) ++res.conversions;
    const AdcSample s = adc_sample(res.column_sums[j], r, profile.full_scale);
    res.samples[j] = s;
    const std::int64_t shift = std::int64_t{1} << (b - 1 - j);
    res.value += static_cast<double>(shift) * s.value();
    if (acc) acc->numerators[j] += static_cast<__int128>(s.numerator) * shift;
  }
  return res;
}

}  // namespace detail

/// Shift-added, digitized partial dot product of one section.
inline SectionResult simulate_section(const BitSlicedSection& section, std::span<const std::int64_t> gathered_x,
                                      const AdcProfile& profile) {
  profile.validate(section.bits);
  return detail::run_section(section, gathered_x, profile, 0, nullptr, nullptr);
}

struct VectorSimResult {
  Accumulator accumulator;
  ConversionLog log;

  double value() const { return accumulator.value(); }
};

/// x_codes are signed activation codes in original feature order.
inline VectorSimResult simulate_vector(const VectorMapping& mapping, std::span<const std::int64_t> x_codes,
                                       const AdcProfile& profile) {
  profile.validate(mapping.bits);
  const auto gathered = permute_activations(x_codes, mapping);
  VectorSimResult out{Accumulator(profile), {}};
  out.log.reserve(mapping.sections.size() * static_cast<std::size_t>(mapping.bits));
  const std::size_t rows = mapping.rows_per_section;
  for (std::size_t s = 0; s < mapping.sections.size(); ++s) {
    std::span<const std::int64_t> xs(gathered.data() + s * rows, rows);
    detail::run_section(mapping.sections[s], xs, profile, static_cast<std::uint32_t>(s), &out.accumulator, &out.log);
  }
  return out;
}

/// Activation column c of a quantized [f] or [f, batch] tensor as signed codes.
inline std::vector<std::int64_t> activation_column(const QuantizedTensor& x, std::size_t c) {
  const std::size_t f = x.shape.front();
  const std::size_t batch = x.shape.size() == 2 ? x.shape[1] : 1;
  if (c >= batch) throw ShapeError("activation column out of range");
  std::vector<std::int64_t> out(f);
  for (std::size_t i = 0; i < f; ++i) out[i] = x.code(i * batch + c);
  return out;
}

inline std::size_t batch_size(const QuantizedTensor& x) { return x.shape.size() == 2 ? x.shape[1] : 1; }

/// out[r][c] = sum_i W[r][i] * X[i][c] over signed integer codes.
inline std::vector<std::int64_t> exact_reference(const QuantizedTensor& w, const QuantizedTensor& x) {
  if (w.shape.empty() || w.shape.size() > 2 || x.shape.empty() || x.shape.size() > 2)
    throw ShapeError("exact_reference expects 1-D or 2-D operands");
  const std::size_t f = w.shape.back();
  if (x.shape.front() != f)
    throw ShapeError("weight feature size " + std::to_string(f) + " does not match activation size " +
                     std::to_string(x.shape.front()));
  const std::size_t rows = w.shape.size() == 2 ? w.shape[0] : 1;
  const std::size_t batch = batch_size(x);
  std::vector<std::int64_t> out(rows * batch, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < f; ++i) {
      const std::int64_t wv = w.code(r * f + i);
      if (wv == 0) continue;
      for (std::size_t c = 0; c < batch; ++c) out[r * batch + c] += wv * x.code(i * batch + c);
    }
  return out;
}

struct ErrorMetrics {
  double max_abs = 0.0;
  double rmse = 0.0;
};

struct SimResult {
  std::size_t rows = 0;
  std::size_t batch = 0;
  std::vector<double> outputs;             // accumulator values, integer-code units
  std::vector<double> dequantized;         // outputs * weight scale * activation scale
  std::vector<std::int64_t> reference_exact;
  std::vector<ConversionLog> conversion_logs;  // one per (row, batch column), row-major
  std::size_t bit_exact_count = 0;         // outputs that equal the reference as exact integers
  ErrorMetrics errors;

  bool bit_exact() const { return bit_exact_count == outputs.size(); }
};

inline ErrorMetrics error_metrics(std::span<const double> outputs, std::span<const std::int64_t> reference) {
  ErrorMetrics m;
  if (outputs.empty()) return m;
  long double sq = 0.0L;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const long double d = static_cast<long double>(outputs[i]) - static_cast<long double>(reference[i]);
    m.max_abs = std::max(m.max_abs, static_cast<double>(std::fabs(d)));
    sq += d * d;
  }
  m.rmse = static_cast<double>(std::sqrt(sq / static_cast<long double>(outputs.size())));
  return m;
}

/// Runs every (output row, batch column) pair; workers > 1 splits rows across threads.
/// Each pair writes only its own slot, so results match sequential execution exactly.
inline SimResult simulate_matmul(const MatrixMapping& mm, const QuantizedTensor& w, const QuantizedTensor& x,
                                 const AdcProfile& profile, unsigned workers = 1) {
  profile.validate(mm.quant.weight_bits);
  if (x.shape.empty() || x.shape.size() > 2) throw ShapeError("activations must be 1-D or 2-D");
  if (x.shape.front() != mm.feature_size)
    throw ShapeError("activation feature size " + std::to_string(x.shape.front()) + " does not match weights (" +
                     std::to_string(mm.feature_size) + ")");

  SimResult res;
  res.rows = mm.rows.size();
  res.batch = batch_size(x);
  const std::size_t n = res.rows * res.batch;
  res.outputs.assign(n, 0.0);
  res.conversion_logs.resize(n);
  res.reference_exact = exact_reference(w, x);
  std::vector<std::uint8_t> exact(n, 0);

  std::vector<std::vector<std::int64_t>> columns(res.batch);
  for (std::size_t c = 0; c < res.batch; ++c) columns[c] = activation_column(x, c);

  auto run_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r)
      for (std::size_t c = 0; c < res.batch; ++c) {
        const std::size_t k = r * res.batch + c;
        auto v = simulate_vector(mm.rows[r], columns[c], profile);
        res.outputs[k] = v.value();
        exact[k] = v.accumulator.is_integer() && v.accumulator.integer_value() == res.reference_exact[k];
        res.conversion_logs[k] = std::move(v.log);
      }
  };

  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(res.rows, 1))));
  if (workers == 1) {
    run_rows(0, res.rows);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (res.rows + workers - 1) / workers;
    for (std::size_t begin = 0; begin < res.rows; begin += chunk)
      pool.emplace_back(run_rows, begin, std::min(res.rows, begin + chunk));
  }

  res.bit_exact_count = static_cast<std::size_t>(std::count(exact.begin(), exact.end(), std::uint8_t{1}));
  res.errors = error_metrics(res.outputs, res.reference_exact);
  const double out_scale = w.scale * x.scale;
  res.dequantized.resize(n);
  for (std::size_t k = 0; k < n; ++k) res.dequantized[k] = res.outputs[k] * out_scale;
  return res;
}

/// Worst-case |simulated - exact| for one vector: half a step per quantizing
/// active column, plus the whole column contribution for dropped columns.
inline double vector_error_bound(const VectorMapping& mapping, std::span<const std::int64_t> x_codes, const AdcProfile& profile) {
  profile.validate(mapping.bits);
  const auto gathered = permute_activations(x_codes, mapping);
  const auto b = static_cast<std::size_t>(mapping.bits);
  const std::size_t rows = mapping.rows_per_section;
  long double bound = 0.0L;
  for (std::size_t s = 0; s < mapping.sections.size(); ++s) {
    const auto& sec = mapping.sections[s];
    std::vector<std::int64_t> sums;
    for (std::size_t j = 0; j < b; ++j) {
      if (!sec.active_mask[j]) continue;
      const int r = profile.resolutions[j];
      const long double shift = std::ldexp(1.0L, static_cast<int>(b - 1 - j));
      if (r >= 2) {
        bound += shift * adc_step(r, profile.full_scale) / 2.0L;
      } else {
        if (sums.empty()) sums = section_column_sums(sec, std::span<const std::int64_t>(gathered.data() + s * rows, rows));
        bound += shift * static_cast<long double>(std::llabs(sums[j]));
      }
    }
  }
  return static_cast<double>(bound);
}

}  // namespace sws

#endif  // SWS_XBAR_HPP
