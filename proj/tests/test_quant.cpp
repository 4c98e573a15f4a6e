#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sws/quant.hpp"

using namespace sws;

TEST(Quantize, HalfCodeRoundsAwayFromZero) {
  const auto q = quantize(FloatTensor::vector({0.5, -0.25, 0.125, 0.0}), 3);
  EXPECT_DOUBLE_EQ(q.scale, 0.5 / 7);
  EXPECT_EQ(q.magnitudes, (std::vector<std::uint32_t>{7, 4, 2, 0}));
  EXPECT_EQ(q.signs, (std::vector<std::int8_t>{1, -1, 1, 1}));
}

TEST(Quantize, AllZeroTensorUsesUnitScale) {
  const auto q = quantize(FloatTensor::vector({0.0, 0.0, -0.0}), 5);
  EXPECT_EQ(q.scale, 1.0);
  EXPECT_EQ(q.magnitudes, (std::vector<std::uint32_t>{0, 0, 0}));
  EXPECT_EQ(q.signs, (std::vector<std::int8_t>{1, 1, 1}));
}

TEST(Quantize, SingleBitIdentity) {
  const auto q = quantize(FloatTensor::vector({1.0}), 1);
  EXPECT_EQ(q.scale, 1.0);
  EXPECT_EQ(q.magnitudes[0], 1U);
}

TEST(Quantize, RejectsBadInput) {
  EXPECT_THROW(quantize(FloatTensor::vector({1.0, std::nan("")}), 4), InvalidTensor);
  EXPECT_THROW(quantize(FloatTensor::vector({std::numeric_limits<double>::infinity()}), 4), InvalidTensor);
  EXPECT_THROW(quantize(FloatTensor::vector({1.0}), 0), InvalidConfig);
  EXPECT_THROW(quantize(FloatTensor::vector({1.0}), 17), InvalidConfig);
  EXPECT_THROW(quantize(FloatTensor({3}, {1.0, 2.0}), 4), InvalidTensor);
}

TEST(Dequantize, MultipliesBack) {
  QuantizedTensor q;
  q.shape = {4};
  q.magnitudes = {7, 4, 2, 0};
  q.signs = {1, -1, 1, 1};
  q.scale = 1.0 / 14;
  q.bits = 3;
  const auto t = dequantize(q);
  EXPECT_DOUBLE_EQ(t.values[0], 0.5);
  EXPECT_NEAR(t.values[1], -0.2857142857, 1e-9);
  EXPECT_NEAR(t.values[2], 0.1428571429, 1e-9);
  EXPECT_EQ(t.values[3], 0.0);
}

TEST(Dequantize, GridPointsAreFixedPoints) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int b = 1; b <= 16; ++b) {
    FloatTensor t({64}, std::vector<double>(64));
    for (auto& v : t.values) v = g(rng);
    const auto once = dequantize(quantize(t, b));
    const auto twice = dequantize(quantize(once, b));
    for (std::size_t i = 0; i < once.values.size(); ++i) EXPECT_DOUBLE_EQ(once.values[i], twice.values[i]) << "b=" << b;
  }
}

TEST(Quantize, ReconstructionBoundAndCodeRangeProperty) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> bits(1, 16), len(1, 200);
  for (int trial = 0; trial < 300; ++trial) {
    const int b = bits(rng);
    FloatTensor t({static_cast<std::size_t>(len(rng))}, {});
    t.values.resize(t.shape[0]);
    const double sigma = std::exp(g(rng) * 3);
    for (auto& v : t.values) v = g(rng) * sigma;
    const auto q = quantize(t, b);
    std::uint32_t top = 0;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      ASSERT_LE(q.magnitudes[i], q.max_code());
      top = std::max(top, q.magnitudes[i]);
      const double rec = q.signs[i] * static_cast<double>(q.magnitudes[i]) * q.scale;
      ASSERT_LE(std::abs(rec - t.values[i]), q.scale / 2 * (1 + 1e-12)) << "b=" << b;
      if (q.magnitudes[i] == 0) {
        ASSERT_EQ(q.signs[i], 1);
      }
    }
    EXPECT_EQ(top, q.max_code());
  }
}

TEST(BitSlice, MostSignificantFirst) {
  EXPECT_EQ(bit_slice(7, 3), (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(bit_slice(2, 3), (std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_EQ(bit_slice(0, 3), (std::vector<std::uint8_t>{0, 0, 0}));
  EXPECT_THROW(bit_slice(8, 3), InvalidCode);
}

TEST(BitSlice, RoundTripsEveryCode) {
  for (int b = 1; b <= 12; ++b)
    for (std::uint64_t m = 0; m < (1ULL << b); ++m) ASSERT_EQ(bits_to_code(bit_slice(m, b)), m);
}

TEST(Prune, RemovesSmallestMagnitudes) {
  const auto t = FloatTensor::vector({0.5, -0.25, 0.125, 0.0});
  EXPECT_EQ(prune_magnitude(t, 0.5).values, (std::vector<double>{0.5, -0.25, 0.0, 0.0}));
  EXPECT_EQ(prune_magnitude(t, 0.0), t);
  EXPECT_EQ(prune_magnitude(t, 1.0).values, (std::vector<double>{0, 0, 0, 0}));
}

TEST(Prune, TiesPruneLowerIndexFirst) {
  const auto t = FloatTensor::vector({0.3, -0.1, 0.1, 0.2});
  EXPECT_EQ(prune_magnitude(t, 0.25).values, (std::vector<double>{0.3, 0.0, 0.1, 0.2}));
}

TEST(Prune, RejectsOutOfRangeSparsity) {
  const auto t = FloatTensor::vector({1.0});
  EXPECT_THROW(prune_magnitude(t, -0.1), InvalidConfig);
  EXPECT_THROW(prune_magnitude(t, 1.5), InvalidConfig);
  EXPECT_THROW(prune_magnitude(t, std::nan("")), InvalidConfig);
}

TEST(Prune, CountExactAndSurvivorsUntouchedProperty) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    FloatTensor t({1 + rng() % 300}, {});
    t.values.resize(t.shape[0]);
    for (auto& v : t.values) v = g(rng);
    const double s = u(rng);
    const auto p = prune_magnitude(t, s);
    const std::size_t pruned = static_cast<std::size_t>(std::floor(s * static_cast<double>(t.values.size())));
    std::size_t zeros = 0;
    double max_pruned = 0.0, min_kept = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (p.values[i] == 0.0) {
        ++zeros;
        max_pruned = std::max(max_pruned, std::abs(t.values[i]));
      } else {
        ASSERT_EQ(p.values[i], t.values[i]);
        min_kept = std::min(min_kept, std::abs(t.values[i]));
      }
    }
    EXPECT_EQ(zeros, pruned);
    EXPECT_LE(max_pruned, min_kept);
  }
}
