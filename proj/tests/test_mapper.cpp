#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sws/mapper.hpp"

using namespace sws;

namespace {

QuantizedTensor codes(std::vector<std::uint32_t> m, int b) {
  QuantizedTensor q;
  q.shape = {m.size()};
  q.signs.assign(m.size(), 1);
  q.magnitudes = std::move(m);
  q.bits = b;
  return q;
}

using Mask = std::vector<std::uint8_t>;

const QuantizedTensor kExampleB = codes({7, 0, 1, 0, 2, 0, 1, 0}, 3);

}  // namespace

TEST(SortByMagnitude, StableAscendingOverNonzeros) {
  EXPECT_EQ(sort_by_magnitude(kExampleB), (std::vector<std::size_t>{2, 6, 4, 0}));
  EXPECT_TRUE(sort_by_magnitude(codes({0, 0, 0}, 3)).empty());
  EXPECT_EQ(sort_by_magnitude(codes({3, 3}, 2)), (std::vector<std::size_t>{0, 1}));
}

TEST(BuildVectorMapping, SortedExampleB) {
  const auto vm = build_vector_mapping(kExampleB, {2, RowOrder::sorted, 0});
  ASSERT_EQ(vm.sections.size(), 2U);
  EXPECT_EQ(vm.sections[0].row_source_indices, (std::vector<std::size_t>{2, 6}));
  EXPECT_EQ(vm.sections[0].active_mask, (Mask{0, 0, 1}));
  EXPECT_EQ(vm.sections[1].row_source_indices, (std::vector<std::size_t>{4, 0}));
  EXPECT_EQ(vm.sections[1].active_mask, (Mask{1, 1, 1}));
  EXPECT_EQ(vm.permutation, (std::vector<std::size_t>{2, 6, 4, 0}));
}

TEST(BuildVectorMapping, UnsortedIdentityExampleB) {
  const auto vm = build_vector_mapping(kExampleB, {2, RowOrder::unsorted, 0});
  ASSERT_EQ(vm.sections.size(), 4U);
  EXPECT_EQ(vm.sections[0].active_mask, (Mask{1, 1, 1}));
  EXPECT_EQ(vm.sections[1].active_mask, (Mask{0, 0, 1}));
  EXPECT_EQ(vm.sections[2].active_mask, (Mask{0, 1, 0}));
  EXPECT_EQ(vm.sections[3].active_mask, (Mask{0, 0, 1}));
}

TEST(BuildVectorMapping, AllZeroWeightsElideEverySection) {
  EXPECT_TRUE(build_vector_mapping(codes({0, 0, 0}, 3), {4, RowOrder::sorted, 0}).sections.empty());
  EXPECT_EQ(build_vector_mapping(codes({0, 0, 0}, 3), {2, RowOrder::unsorted, 0}).sections.size(), 2U);
}

TEST(BuildVectorMapping, LastSectionIsPadded) {
  const auto vm = build_vector_mapping(codes({1, 2, 3}, 2), {2, RowOrder::sorted, 0});
  ASSERT_EQ(vm.sections.size(), 2U);
  EXPECT_EQ(vm.sections[1].real_rows(), 1U);
  EXPECT_EQ(vm.sections[1].pad_rows, 1U);
  EXPECT_EQ(vm.sections[1].bit(1, 0), 0);
  EXPECT_EQ(vm.sections[1].bit(1, 1), 0);
}

TEST(BuildVectorMapping, RejectsBadInput) {
  EXPECT_THROW(build_vector_mapping(kExampleB, {0, RowOrder::sorted, 0}), InvalidConfig);
  auto two_d = kExampleB;
  two_d.shape = {2, 4};
  EXPECT_THROW(build_vector_mapping(two_d, {2, RowOrder::sorted, 0}), ShapeError);
}

TEST(PermuteActivations, GathersThroughPermutation) {
  const auto vm = build_vector_mapping(kExampleB, {2, RowOrder::sorted, 0});
  const std::vector<std::int64_t> x{1, 0, 3, 0, 2, 0, 1, 0};
  EXPECT_EQ(permute_activations(x, vm), (std::vector<std::int64_t>{3, 1, 2, 1}));

  const auto id = build_vector_mapping(kExampleB, {2, RowOrder::unsorted, 0});
  EXPECT_EQ(permute_activations(x, id), x);

  const auto gathered = permute_activations(x, vm);
  std::vector<std::int64_t> back(x.size(), 0);
  for (std::size_t k = 0; k < vm.permutation.size(); ++k) back[vm.permutation[k]] = gathered[k];
  for (std::size_t i = 0; i < x.size(); ++i)
    if (kExampleB.magnitudes[i] != 0) {
      EXPECT_EQ(back[i], x[i]);
    }

  EXPECT_THROW(permute_activations(std::vector<std::int64_t>{1, 2}, vm), ShapeError);
}

TEST(PermuteActivations, PadRowsReceiveZero) {
  const auto vm = build_vector_mapping(codes({0, 5, 0}, 3), {4, RowOrder::sorted, 0});
  EXPECT_EQ(permute_activations(std::vector<std::int64_t>{9, 8, 7}, vm), (std::vector<std::int64_t>{8, 0, 0, 0}));
}

TEST(PermutationOverhead, Formula) {
  auto o = permutation_overhead(8, 2);
  EXPECT_EQ(o.mux_count, 8U);
  EXPECT_EQ(o.memory_cells, 8.0);
  EXPECT_EQ(o.time_units, 48.0);
  o = permutation_overhead(1, 1);
  EXPECT_EQ(o.mux_count, 1U);
  EXPECT_EQ(o.memory_cells, 1.0);
  EXPECT_EQ(o.time_units, 1.0);
  EXPECT_EQ(permutation_overhead(8, 2, 1.0, 2.0).time_units, 96.0);
  EXPECT_EQ(permutation_overhead(1000, 3).time_units, 1000.0 * 3 * 10);
  EXPECT_THROW(permutation_overhead(0, 1), InvalidConfig);
}

TEST(ShuffledMapping, SameSeedIsBitIdentical) {
  std::mt19937_64 rng(1);
  const auto q = oracle::random_codes(rng, 200, 6, 0.3);
  const auto a = build_vector_mapping(q, {16, RowOrder::shuffled, 42});
  const auto b = build_vector_mapping(q, {16, RowOrder::shuffled, 42});
  const auto c = build_vector_mapping(q, {16, RowOrder::shuffled, 43});
  EXPECT_EQ(a.permutation, b.permutation);
  for (std::size_t s = 0; s < a.sections.size(); ++s) EXPECT_EQ(a.sections[s].bit_matrix, b.sections[s].bit_matrix);
  EXPECT_NE(a.permutation, c.permutation);
  std::set<std::size_t> seen(a.permutation.begin(), a.permutation.end());
  EXPECT_EQ(seen.size(), 200U);
}

TEST(MatrixMapping, OneMappingPerRowWithSharedGeometry) {
  QuantizedTensor w = codes({1, 0, 2, 3, 0, 0}, 2);
  w.shape = {2, 3};
  const auto mm = build_matrix_mapping(w, {2, RowOrder::sorted, 0}, 4);
  ASSERT_EQ(mm.rows.size(), 2U);
  EXPECT_EQ(mm.feature_size, 3U);
  EXPECT_EQ(mm.rows[0].sections.size(), 1U);
  EXPECT_EQ(mm.rows[1].permutation, (std::vector<std::size_t>{0}));
  EXPECT_EQ(mm.section_count(), 2U);
}

// Mapping invariants over random vectors: section counts, mask correctness,
// ordering, high-order deactivation and leading-column monotonicity.
TEST(BuildVectorMapping, InvariantsProperty) {
  std::mt19937_64 rng(2024);
  const std::size_t row_choices[] = {1, 3, 4, 16, 128};
  for (int trial = 0; trial < 400; ++trial) {
    const int b = 1 + static_cast<int>(rng() % 8);
    const std::size_t f = 1 + rng() % 256;
    const double sparsity = (rng() % 4) * 0.3;
    const std::size_t R = row_choices[rng() % 5];
    const auto q = oracle::random_codes(rng, f, b, sparsity);
    const std::size_t nnz = q.nonzero_count();

    const auto sorted = build_vector_mapping(q, {R, RowOrder::sorted, 0});
    ASSERT_EQ(sorted.sections.size(), (nnz + R - 1) / R);
    ASSERT_EQ(sorted.permutation.size(), nnz);
    std::set<std::size_t> seen(sorted.permutation.begin(), sorted.permutation.end());
    ASSERT_EQ(seen.size(), nnz);
    for (auto i : sorted.permutation) ASSERT_NE(q.magnitudes.at(i), 0U);
    for (std::size_t k = 1; k < sorted.permutation.size(); ++k)
      ASSERT_LE(q.magnitudes[sorted.permutation[k - 1]], q.magnitudes[sorted.permutation[k]]);

    std::size_t prev_lead = static_cast<std::size_t>(b);
    for (const auto& s : sorted.sections) {
      ASSERT_EQ(s.active_mask, oracle::active_mask(s.row_magnitudes, b));
      ASSERT_EQ(s.row_count(), R);
      for (int j = 0; j < b; ++j)
        if ((1ULL << (b - 1 - j)) > s.max_magnitude()) {
          ASSERT_EQ(s.active_mask[static_cast<std::size_t>(j)], 0);
        }
      // Later sections hold larger magnitudes, so their leading column can only move toward the MSB.
      ASSERT_LE(s.leading_active_column(), prev_lead);
      prev_lead = s.leading_active_column();
    }

    for (auto order : {RowOrder::unsorted, RowOrder::shuffled}) {
      const auto base = build_vector_mapping(q, {R, order, static_cast<std::uint64_t>(trial)});
      ASSERT_EQ(base.sections.size(), (f + R - 1) / R);
      for (const auto& s : base.sections) ASSERT_EQ(s.active_mask, oracle::active_mask(s.row_magnitudes, b));
    }
  }
}
