#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sws/energy.hpp"

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

const QuantizedTensor kExampleB = codes({7, 0, 1, 0, 2, 0, 1, 0}, 3);
const std::vector<std::int64_t> kExampleX{1, 0, 3, 0, 2, 0, 1, 0};

EnergyReport run(const QuantizedTensor& w, const std::vector<std::int64_t>& x, RowOrder order, const AdcProfile& p,
                 const EnergyModel& m = {}) {
  const auto vm = build_vector_mapping(w, {2, order, 0});
  const auto sim = simulate_vector(vm, x, p);
  return account(sim.log, vm, x, m, p);
}

}  // namespace

TEST(AdcConversionEnergy, Models) {
  EXPECT_EQ(adc_conversion_energy(10, EnergyModel{}), 1024.0);
  EXPECT_EQ(adc_conversion_energy(0, EnergyModel{}), 0.0);
  EXPECT_EQ(adc_conversion_energy(8, EnergyModel{AdcModelKind::linear, 0.5, {}}), 4.0);
  EnergyModel t{AdcModelKind::table, 1.0, {}};
  t.table = {{8, 2.5}};
  EXPECT_EQ(adc_conversion_energy(8, t), 2.5);
  EXPECT_EQ(adc_conversion_energy(0, t), 0.0);
  EXPECT_THROW(adc_conversion_energy(9, t), ModelError);
}

TEST(ParseEnergyModel, Strings) {
  EXPECT_EQ(parse_energy_model("flash").kind, AdcModelKind::flash);
  EXPECT_EQ(parse_energy_model("linear:0.25").e0, 0.25);
  const auto t = parse_energy_model("table:8=1.5,10=6");
  EXPECT_EQ(t.table.at(10), 6.0);
  EXPECT_THROW(parse_energy_model("sar"), InvalidConfig);
  EXPECT_THROW(parse_energy_model("flash:x"), InvalidConfig);
  EXPECT_THROW(parse_energy_model("flash:-1"), InvalidConfig);
}

TEST(Account, ExampleBSortedVsUnsorted) {
  const auto p = AdcProfile::fixed(3, 10, 2, 2);
  const auto sorted = run(kExampleB, kExampleX, RowOrder::sorted, p);
  const auto base = run(kExampleB, kExampleX, RowOrder::unsorted, p);
  EXPECT_EQ(sorted.total_conversions, 4U);
  EXPECT_EQ(sorted.adc_energy, 4096.0);
  EXPECT_EQ(base.total_conversions, 6U);
  EXPECT_EQ(base.adc_energy, 6144.0);
  EXPECT_EQ(sorted.sections_programmed, 2U);
  EXPECT_EQ(base.sections_programmed, 4U);
  EXPECT_EQ(sorted.driver_energy, 0.0);
  EXPECT_EQ(sorted.mux_energy, 0.0);
  EXPECT_EQ(sorted.conversions_per_column, (std::vector<std::uint64_t>{1, 1, 2}));

  const auto c = compare(sorted, base);
  EXPECT_NEAR(c.savings_fraction, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.conversion_ratio, 4.0 / 6.0, 1e-12);
  EXPECT_EQ(c.section_ratio, 0.5);
}

TEST(Account, DriverAndMuxCounters) {
  const auto p = AdcProfile::fixed(3, 10, 2, 2);
  EnergyModel m;
  m.e_drive = 0.5;
  m.e_mux = 2.0;
  const auto sorted = run(kExampleB, kExampleX, RowOrder::sorted, p, m);
  // Gathered activations 3, 1, 2, 1 are all nonzero; 8 muxes.
  EXPECT_EQ(sorted.driver_energy, 2.0);
  EXPECT_EQ(sorted.mux_energy, 16.0);
  const auto base = run(kExampleB, kExampleX, RowOrder::unsorted, p, m);
  EXPECT_EQ(base.driver_energy, 2.0);
  EXPECT_EQ(base.mux_energy, 0.0);
}

TEST(Account, DetectsInconsistentLogs) {
  const auto p = AdcProfile::fixed(3, 10, 2, 2);
  const auto vm = build_vector_mapping(kExampleB, {2, RowOrder::sorted, 0});
  auto sim = simulate_vector(vm, kExampleX, p);
  auto log = sim.log;
  log.pop_back();
  EXPECT_THROW(account(log, vm, kExampleX, {}, p), AccountingError);
  log = sim.log;
  log[0].performed = true;
  EXPECT_THROW(account(log, vm, kExampleX, {}, p), AccountingError);
  log = sim.log;
  log[2].resolution = 9;
  EXPECT_THROW(account(log, vm, kExampleX, {}, p), AccountingError);
}

TEST(Compare, EdgeCases) {
  const auto p = AdcProfile::fixed(3, 10, 2, 2);
  const auto base = run(kExampleB, kExampleX, RowOrder::unsorted, p);
  EXPECT_EQ(compare(base, base).savings_fraction, 0.0);
  const auto empty = run(codes({0, 0, 0, 0, 0, 0, 0, 0}, 3), kExampleX, RowOrder::sorted, p);
  EXPECT_EQ(empty.adc_energy, 0.0);
  EXPECT_EQ(compare(empty, base).savings_fraction, 1.0);
  EXPECT_EQ(compare(base, empty).savings_fraction, 0.0);

  auto other = run(kExampleB, kExampleX, RowOrder::sorted, p, EnergyModel{AdcModelKind::linear, 1.0, {}});
  EXPECT_THROW(compare(other, base), CompareError);
}

TEST(Account, SortingCanLoseOnAdversarialInputs) {
  // m = [7, 4, 2, 0], R = 2: sorted sections {2, 4} and {7} use 2 + 3 columns, identity {7, 4} and {2, 0} use 3 + 1.
  const auto w = codes({7, 4, 2, 0}, 3);
  const std::vector<std::int64_t> x{1, 1, 1, 1};
  const auto p = AdcProfile::fixed(3, 8, 2, 1);
  EXPECT_EQ(run(w, x, RowOrder::sorted, p).total_conversions, 5U);
  EXPECT_EQ(run(w, x, RowOrder::unsorted, p).total_conversions, 4U);
}

TEST(Account, ResolutionMonotonicityAndAdditivityProperty) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int b = 1 + static_cast<int>(rng() % 8);
    const std::size_t f = 1 + rng() % 200, R = 1 + rng() % 32;
    const auto w = oracle::random_codes(rng, f, b, 0.5);
    const auto x = oracle::random_activations(rng, f, 4);
    AdcProfile hi{{}, AdcProfile::full_scale_for(R, 4)};
    for (int j = 0; j < b; ++j) hi.resolutions.push_back(static_cast<int>(rng() % 12));
    AdcProfile lo = hi;
    for (auto& r : lo.resolutions) r = static_cast<int>(rng() % (r + 1));
    const auto vm = build_vector_mapping(w, {R, trial % 2 ? RowOrder::sorted : RowOrder::unsorted, 0});
    for (auto kind : {AdcModelKind::flash, AdcModelKind::linear}) {
      const EnergyModel m{kind, 1.0, {}};
      const auto e_hi = account(simulate_vector(vm, x, hi).log, vm, x, m, hi);
      const auto e_lo = account(simulate_vector(vm, x, lo).log, vm, x, m, lo);
      ASSERT_LE(e_lo.adc_energy, e_hi.adc_energy);

      double sum = 0.0;
      std::uint64_t conv = 0;
      for (const auto& s : e_hi.sections) {
        sum += s.adc_energy;
        conv += s.conversions;
      }
      ASSERT_EQ(sum, e_hi.adc_energy);
      ASSERT_EQ(conv, e_hi.total_conversions);
    }
    const auto sorted = build_vector_mapping(w, {R, RowOrder::sorted, 0});
    const auto base = build_vector_mapping(w, {R, RowOrder::unsorted, 0});
    ASSERT_LE(sorted.sections.size(), base.sections.size());
  }
}

TEST(AccountMatmul, CountsSectionsOncePerRow) {
  QuantizedTensor w = codes({7, 0, 1, 0, 2, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 0}, 3);
  w.shape = {2, 8};
  QuantizedTensor x = codes({1, 1, 0, 0, 3, 3, 0, 0, 2, 2, 0, 0, 1, 1, 0, 0}, 2);
  x.shape = {8, 2};
  const auto p = AdcProfile::fixed(3, 10, 2, 2);
  const auto mm = build_matrix_mapping(w, {2, RowOrder::sorted, 0}, 2);
  const auto sim = simulate_matmul(mm, w, x, p);
  const auto rep = account_matmul(sim, mm, x, EnergyModel{}, p);
  EXPECT_EQ(rep.sections_programmed, 4U);
  EXPECT_EQ(rep.vectors_evaluated, 4U);
  // Row 0: 4 conversions per input; row 1 (four 1s): 2 sections x 1 column.
  EXPECT_EQ(rep.total_conversions, 2 * 4U + 2 * 2U);
}
