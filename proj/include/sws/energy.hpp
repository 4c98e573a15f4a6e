#ifndef SWS_ENERGY_HPP
#define SWS_ENERGY_HPP

// ADC conversion energy accounting.
//
// Energies are in abstract units unless the model is a user-supplied table.
// Totals are always recomputed from the per-section breakdown so that the
// two can never disagree.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sws/error.hpp"
#include "sws/mapper.hpp"
#include "sws/xbar.hpp"

namespace sws {

enum class AdcModelKind { flash, linear, table };

inline std::string to_string(AdcModelKind k) {
  switch (k) {
    case AdcModelKind::flash: return "flash";
    case AdcModelKind::linear: return "linear";
    case AdcModelKind::table: return "table";
  }
  return "?";
}

struct EnergyModel {
  AdcModelKind kind = AdcModelKind::flash;
  double e0 = 1.0;
  std::map<int, double> table;  // resolution -> energy per conversion
  double e_drive = 0.0;         // per nonzero activation row drive
  double e_mux = 0.0;           // per permutation mux per inference

  void validate() const {
    if (!(e0 >= 0.0) || !std::isfinite(e0)) throw InvalidConfig("energy model e0 must be a finite value >= 0");
    if (!(e_drive >= 0.0) || !(e_mux >= 0.0)) throw InvalidConfig("driver and mux energies must be >= 0");
    if (kind == AdcModelKind::table && table.empty()) throw InvalidConfig("table energy model needs at least one entry");
    for (const auto& [r, e] : table)
      if (r < 0 || !(e >= 0.0)) throw InvalidConfig("table energy model entries must be r >= 0, energy >= 0");
  }

  bool operator==(const EnergyModel&) const = default;
};

/// Parses "flash[:e0]", "linear[:e0]" or "table:r=e,r=e,...".
inline EnergyModel parse_energy_model(const std::string& text) {
  EnergyModel m;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidConfig("bad number '" + s + "' in energy model '" + text + "'");
    }
  };
  if (kind == "flash" || kind == "linear") {
    m.kind = kind == "flash" ? AdcModelKind::flash : AdcModelKind::linear;
    if (!rest.empty()) m.e0 = number(rest);
  } else if (kind == "table") {
    m.kind = AdcModelKind::table;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidConfig("table entry '" + item + "' is not r=energy");
      m.table[static_cast<int>(number(item.substr(0, eq)))] = number(item.substr(eq + 1));
    }
  } else {
    throw InvalidConfig("unknown energy model '" + text + "' (expected flash, linear or table)");
  }
  m.validate();
  return m;
}

inline double adc_conversion_energy(int r, const EnergyModel& model) {
  if (r < 0) throw InvalidConfig("ADC resolution must be >= 0");
  if (r == 0) return 0.0;
  switch (model.kind) {
    case AdcModelKind::flash: return model.e0 * std::ldexp(1.0, r);
    case AdcModelKind::linear: return model.e0 * static_cast<double>(r);
    case AdcModelKind::table: {
      auto it = model.table.find(r);
      if (it == model.table.end()) throw ModelError("energy table has no entry for resolution " + std::to_string(r));
      return it->second;
    }
  }
  return 0.0;
}

struct SectionEnergy {
  std::uint64_t conversions = 0;
  double adc_energy = 0.0;
  std::uint64_t row_drives = 0;
  double driver_energy = 0.0;

  bool operator==(const SectionEnergy&) const = default;
};

struct EnergyReport {
  std::uint64_t total_conversions = 0;
  std::vector<std::uint64_t> conversions_per_column;
  double adc_energy = 0.0;
  double driver_energy = 0.0;
  double mux_energy = 0.0;
  std::uint64_t sections_programmed = 0;
  std::uint64_t vectors_evaluated = 0;
  std::vector<SectionEnergy> sections;  // indexed by section position within a mapping

  // config echo
  std::size_t rows_per_section = 0;
  int bits = 0;
  RowOrder order = RowOrder::sorted;
  AdcProfile profile;
  EnergyModel model;

  double total_energy() const { return adc_energy + driver_energy + mux_energy; }

  void recompute_totals() {
    total_conversions = 0;
    adc_energy = 0.0;
    driver_energy = 0.0;
    for (const auto& s : sections) {
      total_conversions += s.conversions;
      adc_energy += s.adc_energy;
      driver_energy += s.driver_energy;
    }
  }
};

/// Energy of one vector evaluation described by its conversion log.
inline EnergyReport account(const ConversionLog& log, const VectorMapping& mapping, std::span<const std::int64_t> x_codes,
                            const EnergyModel& model, const AdcProfile& profile) {
  model.validate();
  profile.validate(mapping.bits);
  const auto b = static_cast<std::size_t>(mapping.bits);
  if (log.size() != mapping.sections.size() * b)
    throw AccountingError("conversion log has " + std::to_string(log.size()) + " entries, mapping implies " +
                          std::to_string(mapping.sections.size() * b));

  EnergyReport rep;
  rep.rows_per_section = mapping.rows_per_section;
  rep.bits = mapping.bits;
  rep.order = mapping.order;
  rep.profile = profile;
  rep.model = model;
  rep.conversions_per_column.assign(b, 0);
  rep.sections.resize(mapping.sections.size());
  rep.sections_programmed = mapping.sections.size();
  rep.vectors_evaluated = 1;

  for (std::size_t k = 0; k < log.size(); ++k) {
    const auto& e = log[k];
    const std::size_t s = k / b, j = k % b;
    if (e.section != s || e.column != j) throw AccountingError("conversion log is not in section-major column order");
    if (e.active != (mapping.sections[s].active_mask[j] != 0))
      throw AccountingError("conversion log activity disagrees with the mapping at section " + std::to_string(s) +
                            ", column " + std::to_string(j));
    if (e.resolution != profile.resolutions[j]) throw AccountingError("conversion log resolution disagrees with the profile");
    if (e.performed != (e.active && e.resolution > 0)) throw AccountingError("conversion performed on an inactive or dropped column");
    if (!e.performed) continue;
    rep.sections[s].conversions += 1;
    rep.sections[s].adc_energy += adc_conversion_energy(e.resolution, model);
    rep.conversions_per_column[j] += 1;
  }

  const auto gathered = permute_activations(x_codes, mapping);
  const std::size_t rows = mapping.rows_per_section;
  for (std::size_t s = 0; s < mapping.sections.size(); ++s) {
    std::uint64_t drives = 0;
    for (std::size_t r = 0; r < rows; ++r) drives += gathered[s * rows + r] != 0;
    rep.sections[s].row_drives = drives;
    rep.sections[s].driver_energy = model.e_drive * static_cast<double>(drives);
  }

  // The identity baseline needs no permutation network.
  rep.mux_energy = mapping.order == RowOrder::unsorted ? 0.0 : model.e_mux * static_cast<double>(mapping.feature_size);
  rep.recompute_totals();
  return rep;
}

/// Adds another report of the same configuration; per-section entries add by section position.
/// Set count_sections to false for further evaluations of an already counted mapping.
inline void merge_into(EnergyReport& into, const EnergyReport& from, bool count_sections = true) {
  if (into.vectors_evaluated == 0) {
    into = from;
    if (!count_sections) into.sections_programmed = 0;
    return;
  }
  if (into.bits != from.bits || into.rows_per_section != from.rows_per_section)
    throw AccountingError("cannot merge energy reports with different geometry");
  if (into.sections.size() < from.sections.size()) into.sections.resize(from.sections.size());
  for (std::size_t s = 0; s < from.sections.size(); ++s) {
    into.sections[s].conversions += from.sections[s].conversions;
    into.sections[s].adc_energy += from.sections[s].adc_energy;
    into.sections[s].row_drives += from.sections[s].row_drives;
    into.sections[s].driver_energy += from.sections[s].driver_energy;
  }
  for (std::size_t j = 0; j < into.conversions_per_column.size(); ++j)
    into.conversions_per_column[j] += from.conversions_per_column[j];
  into.mux_energy += from.mux_energy;
  if (count_sections) into.sections_programmed += from.sections_programmed;
  into.vectors_evaluated += from.vectors_evaluated;
  into.recompute_totals();
}

/// Energy of a whole simulated matrix product. Sections are counted once per mapped row.
inline EnergyReport account_matmul(const SimResult& sim, const MatrixMapping& mm, const QuantizedTensor& x,
                                   const EnergyModel& model, const AdcProfile& profile) {
  EnergyReport total;
  total.rows_per_section = mm.sections.rows_per_section;
  total.bits = mm.quant.weight_bits;
  total.order = mm.sections.order;
  total.profile = profile;
  total.model = model;
  total.conversions_per_column.assign(static_cast<std::size_t>(mm.quant.weight_bits), 0);
  std::vector<std::vector<std::int64_t>> columns(sim.batch);
  for (std::size_t c = 0; c < sim.batch; ++c) columns[c] = activation_column(x, c);
  for (std::size_t r = 0; r < sim.rows; ++r)
    for (std::size_t c = 0; c < sim.batch; ++c) {
      auto rep = account(sim.conversion_logs[r * sim.batch + c], mm.rows[r], columns[c], model, profile);
      merge_into(total, rep, c == 0);
    }
  return total;
}

struct Comparison {
  double savings_fraction = 0.0;      // 1 - adc_sorted / adc_baseline
  double conversion_savings = 0.0;    // 1 - conversions_sorted / conversions_baseline
  double conversion_ratio = 0.0;
  double section_ratio = 0.0;
  double total_energy_savings = 0.0;  // includes driver and mux terms
};

inline Comparison compare(const EnergyReport& sorted, const EnergyReport& baseline) {
  if (sorted.bits != baseline.bits || sorted.rows_per_section != baseline.rows_per_section)
    throw CompareError("reports use different crossbar geometry");
  if (!(sorted.model == baseline.model)) throw CompareError("reports use different energy models");
  auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
  Comparison c;
  c.savings_fraction = baseline.adc_energy == 0.0 ? 0.0 : 1.0 - sorted.adc_energy / baseline.adc_energy;
  c.conversion_ratio = ratio(static_cast<double>(sorted.total_conversions), static_cast<double>(baseline.total_conversions));
  c.conversion_savings = baseline.total_conversions == 0 ? 0.0 : 1.0 - c.conversion_ratio;
  c.section_ratio = ratio(static_cast<double>(sorted.sections_programmed), static_cast<double>(baseline.sections_programmed));
  c.total_energy_savings = baseline.total_energy() == 0.0 ? 0.0 : 1.0 - sorted.total_energy() / baseline.total_energy();
  return c;
}

}  // namespace sws

#endif  // SWS_ENERGY_HPP
