// Maps one small weight vector sorted and unsorted, runs the dot product through
// both crossbar layouts and prints the ADC conversion counts.

#include <cstdio>
#include <vector>

#include "sws/sws.hpp"

int main() {
  // Codes 7, 1, 2, 1 at b = 3 with zeros in between.
  const auto w = sws::quantize(sws::FloatTensor::vector({1.0, 0.0, 1.0 / 7, 0.0, 2.0 / 7, 0.0, 1.0 / 7, 0.0}), 3);
  const std::vector<std::int64_t> x{1, 0, 3, 0, 2, 0, 1, 0};
  const auto profile = sws::AdcProfile::fixed(3, 10, 2, 2);
  const sws::EnergyModel flash;

  std::vector<sws::EnergyReport> reports;
  for (auto order : {sws::RowOrder::sorted, sws::RowOrder::unsorted}) {
    const auto mapping = sws::build_vector_mapping(w, {2, order, 0});
    const auto sim = sws::simulate_vector(mapping, x, profile);
    reports.push_back(sws::account(sim.log, mapping, x, flash, profile));
    std::printf("%-9s sections %zu  dot %g  conversions %llu  ADC energy %g\n", sws::to_string(order).c_str(),
                mapping.sections.size(), sim.value(), static_cast<unsigned long long>(reports.back().total_conversions),
                reports.back().adc_energy);
  }
  std::printf("savings %.2f%%\n", 100.0 * sws::compare(reports[0], reports[1]).savings_fraction);
  return 0;
}
