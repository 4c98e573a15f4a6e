#ifndef SWS_MAPPER_HPP
#define SWS_MAPPER_HPP

// Crossbar section layouts for one weight vector (one output neuron).
//
// Sorted mode drops zero-magnitude rows, orders the remaining rows by
// ascending magnitude and cuts them into sections of R rows. The unsorted
// baselines keep every row (zeros included) in original or shuffled order.
// In all modes the last section is padded with all-zero rows up to R.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sws/error.hpp"
#include "sws/quant.hpp"

namespace sws {

enum class RowOrder { sorted, unsorted, shuffled };

inline std::string to_string(RowOrder o) {
  switch (o) {
    case RowOrder::sorted: return "sorted";
    case RowOrder::unsorted: return "unsorted";
    case RowOrder::shuffled: return "shuffled";
  }
  return "?";
}

inline RowOrder parse_row_order(const std::string& s) {
  if (s == "sorted") return RowOrder::sorted;
  if (s == "unsorted" || s == "identity" || s == "unsorted-identity") return RowOrder::unsorted;
  if (s == "shuffled" || s == "unsorted-shuffled") return RowOrder::shuffled;
  throw InvalidConfig("unknown row order '" + s + "' (expected sorted, unsorted or shuffled)");
}

struct SectionConfig {
  std::size_t rows_per_section = 128;
  RowOrder order = RowOrder::sorted;
  std::uint64_t seed = 0;  // shuffled mode only

  void validate() const {
    if (rows_per_section < 1) throw InvalidConfig("rows_per_section must be >= 1");
  }
};

struct BitSlicedSection {
  std::vector<std::size_t> row_source_indices;  // real rows only; pads follow them
  std::vector<std::int8_t> row_signs;
  std::vector<std::uint32_t> row_magnitudes;
  std::vector<std::uint8_t> bit_matrix;  // row_count() x bits, MSB column first, pads all-zero
  std::vector<std::uint8_t> active_mask; // one flag per column
  std::size_t pad_rows = 0;
  int bits = 0;

  std::size_t real_rows() const { return row_source_indices.size(); }
  std::size_t row_count() const { return real_rows() + pad_rows; }
  std::uint8_t bit(std::size_t row, std::size_t col) const { return bit_matrix[row * static_cast<std::size_t>(bits) + col]; }

  std::size_t active_count() const {
    return static_cast<std::size_t>(std::count(active_mask.begin(), active_mask.end(), std::uint8_t{1}));
  }

  std::uint32_t max_magnitude() const {
    return row_magnitudes.empty() ? 0U : *std::max_element(row_magnitudes.begin(), row_magnitudes.end());
  }

  /// Index of the most significant active column, or bits when none is active.
  std::size_t leading_active_column() const {
    auto it = std::find(active_mask.begin(), active_mask.end(), std::uint8_t{1});
    return static_cast<std::size_t>(it - active_mask.begin());
  }
};

struct VectorMapping {
  std::size_t feature_size = 0;
  std::vector<BitSlicedSection> sections;
  std::vector<std::size_t> permutation;  // section-major original indices of the real rows
  double scale = 1.0;
  int bits = 8;
  std::size_t rows_per_section = 0;
  RowOrder order = RowOrder::sorted;

  std::size_t total_active_columns() const {
    std::size_t n = 0;
    for (const auto& s : sections) n += s.active_count();
    return n;
  }
};

struct MatrixMapping {
  std::vector<VectorMapping> rows;
  QuantConfig quant;
  SectionConfig sections;
  std::size_t feature_size = 0;

  std::size_t section_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.sections.size();
    return n;
  }
};

/// Nonzero indices ordered by ascending (magnitude, index).
inline std::vector<std::size_t> sort_by_magnitude(const QuantizedTensor& q) {
  std::vector<std::size_t> idx;
  idx.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.magnitudes[i] != 0) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return q.magnitudes[a] < q.magnitudes[b]; });
  return idx;
}

/// Fisher-Yates driven by mt19937_64 with rejection sampling, so the order
/// only depends on the seed and not on the standard library's distributions.
inline void seeded_shuffle(std::vector<std::size_t>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(v[i - 1], v[static_cast<std::size_t>(r % bound)]);
  }
}

namespace detail {

inline BitSlicedSection make_section(const QuantizedTensor& q, std::span<const std::size_t> rows, std::size_t rows_per_section) {
  BitSlicedSection s;
  s.bits = q.bits;
  const auto b = static_cast<std::size_t>(q.bits);
  s.pad_rows = rows_per_section - rows.size();
  s.bit_matrix.assign(rows_per_section * b, 0);
  s.active_mask.assign(b, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t src = rows[r];
    const std::uint32_t m = q.magnitudes[src];
    s.row_source_indices.push_back(src);
    s.row_signs.push_back(q.signs[src]);
    s.row_magnitudes.push_back(m);
    for (std::size_t j = 0; j < b; ++j) {
      const auto bit = static_cast<std::uint8_t>((m >> (b - 1 - j)) & 1U);
      s.bit_matrix[r * b + j] = bit;
      s.active_mask[j] |= bit;
    }
  }
  return s;
}

}  // namespace detail

inline VectorMapping build_vector_mapping(const QuantizedTensor& q, const SectionConfig& cfg) {
  cfg.validate();
  check_bits(q.bits);
  if (q.shape.size() != 1) throw ShapeError("build_vector_mapping expects a 1-D weight vector");

  std::vector<std::size_t> order;
  switch (cfg.order) {
    case RowOrder::sorted:
      order = sort_by_magnitude(q);
      break;
    case RowOrder::unsorted:
      order.resize(q.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      break;
    case RowOrder::shuffled:
      order.resize(q.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      seeded_shuffle(order, cfg.seed);
      break;
  }

  VectorMapping vm;
  vm.feature_size = q.size();
  vm.scale = q.scale;
  vm.bits = q.bits;
  vm.rows_per_section = cfg.rows_per_section;
  vm.order = cfg.order;
  vm.permutation = order;
  const std::size_t r = cfg.rows_per_section;
  for (std::size_t start = 0; start < order.size(); start += r) {
    const std::size_t len = std::min(r, order.size() - start);
    vm.sections.push_back(detail::make_section(q, std::span<const std::size_t>(order).subspan(start, len), r));
  }
  return vm;
}

/// Maps every row of a 2-D (or 1-D, treated as one row) quantized weight tensor.
/// Shuffled rows use seed + row index so rows get distinct yet reproducible orders.
inline MatrixMapping build_matrix_mapping(const QuantizedTensor& w, const SectionConfig& cfg, int activation_bits) {
  if (w.shape.empty() || w.shape.size() > 2) throw ShapeError("weights must be 1-D or 2-D");
  MatrixMapping mm;
  mm.quant = QuantConfig{w.bits, activation_bits};
  mm.quant.validate();
  mm.sections = cfg;
  const std::size_t rows = w.shape.size() == 2 ? w.shape[0] : 1;
  mm.feature_size = w.shape.back();
  mm.rows.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    SectionConfig row_cfg = cfg;
    row_cfg.seed = cfg.seed + r;
    mm.rows.push_back(build_vector_mapping(w.row(r), row_cfg));
  }
  return mm;
}

/// Gathers activations into section-major order; pad rows receive 0.
inline std::vector<std::int64_t> permute_activations(std::span<const std::int64_t> x, const VectorMapping& mapping) {
  if (x.size() != mapping.feature_size)
    throw ShapeError("activation length " + std::to_string(x.size()) + " does not match feature size " +
                     std::to_string(mapping.feature_size));
  std::vector<std::int64_t> out;
  out.reserve(mapping.sections.size() * mapping.rows_per_section);
  for (const auto& s : mapping.sections) {
    for (std::size_t src : s.row_source_indices) out.push_back(x[src]);
    out.insert(out.end(), s.pad_rows, 0);
  }
  return out;
}

struct PermutationOverhead {
  std::uint64_t mux_count = 0;
  double memory_cells = 0.0;
  double time_units = 0.0;
};

/// Cost of the one-cycle mux permutation network for feature size f across crossbar_count crossbars.
inline PermutationOverhead permutation_overhead(std::uint64_t f, std::uint64_t crossbar_count, double space_constant = 1.0,
                                                double time_constant = 1.0) {
  if (f < 1 || crossbar_count < 1) throw InvalidConfig("permutation_overhead needs f >= 1 and crossbar_count >= 1");
  std::uint64_t log2f = 0;
  while ((std::uint64_t{1} << log2f) < std::max<std::uint64_t>(f, 2)) ++log2f;
  PermutationOverhead o;
  o.mux_count = f;
  o.memory_cells = space_constant * static_cast<double>(f);
  o.time_units = time_constant * static_cast<double>(f) * static_cast<double>(crossbar_count) * static_cast<double>(log2f);
  return o;
}

}  // namespace sws

#endif  // SWS_MAPPER_HPP
