#ifndef SWS_CLI_HPP
#define SWS_CLI_HPP

// Command-line front end. run_cli() is what the swsim binary calls; tests
// drive it directly with argument vectors and string streams.
//
// Exit codes: 0 success, 1 validation error (bad flags, config, input files),
// 2 runtime error. A nonzero exit always prints a diagnostic to `err`.

#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sws/experiment.hpp"
#include "sws/io.hpp"
#include "sws/theory.hpp"

namespace sws::cli {

inline std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * fraction);
  return buf;
}

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Flag values collected by CLI11; each set flag overrides the matching config key.
struct Flags {
  std::string config;
  std::vector<std::string> weights;
  std::optional<std::string> activations;
  std::optional<double> sparsity;
  std::optional<std::size_t> rows;
  std::optional<int> bits;
  std::optional<int> abits;
  std::optional<std::string> profile;
  std::optional<std::string> baseline_profile;
  std::optional<int> resolution;
  std::optional<std::string> order;
  std::optional<std::string> baseline_order;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> energy_model;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::optional<std::size_t> batch;
  bool strict = true;
  bool no_timestamp = false;

  // sweep
  std::optional<std::string> sweep_sparsity;
  std::optional<std::string> sweep_rows;
  std::optional<std::string> sweep_profiles;

  // theory
  double sigma = 1.0;
  std::optional<double> lower;
  int bit = 1;
  std::optional<std::string> interval;
  int column = 0;
  std::optional<double> scale;
  std::size_t theory_rows = 1;
  std::uint64_t samples = 1000000;
};

inline void add_common_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--weights", f.weights, "weight tensor file(s) (.npy or .csv), one per layer");
  cmd->add_option("--activations", f.activations, "activation tensor file [f] or [f, batch]");
  cmd->add_option("--sparsity", f.sparsity, "magnitude pruning fraction in [0, 1]");
  cmd->add_option("--rows", f.rows, "rows per crossbar section");
  cmd->add_option("--bits", f.bits, "weight magnitude bits (crossbar columns)");
  cmd->add_option("--abits", f.abits, "activation magnitude bits");
  cmd->add_option("--profile", f.profile, "per-column ADC resolutions, MSB column first, e.g. 10-10-10-10-10-9-9-8");
  cmd->add_option("--baseline-profile", f.baseline_profile, "ADC resolutions for the baseline mapping");
  cmd->add_option("--resolution", f.resolution, "fixed ADC resolution used when no profile is given");
  cmd->add_option("--order", f.order, "mapping order: sorted, unsorted or shuffled");
  cmd->add_option("--baseline-order", f.baseline_order, "baseline order: unsorted or shuffled");
  cmd->add_option("--seed", f.seed, "seed for shuffled orders");
  cmd->add_option("--energy-model", f.energy_model, "flash[:e0], linear[:e0] or table:r=e,...");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--batch", f.batch, "synthetic activation batch size");
  cmd->add_option("--strict", f.strict, "reject unknown config keys (true) or warn (false)")->default_val(true);
  cmd->add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp from reports");
}

inline Json split_numbers(const std::string& s, bool integral) {
  Json arr = Json::array();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* endp = nullptr;
    const double v = std::strtod(item.c_str(), &endp);
    if (item.empty() || *endp != '\0') throw ConfigError("bad number '" + item + "' in list '" + s + "'");
    if (integral) arr.push_back(static_cast<long long>(v));
    else arr.push_back(v);
  }
  return arr;
}

/// flag > config file > default.
inline ExperimentConfig resolve_config(const Flags& f, std::ostream& err, bool require_weights = true) {
  Json j = Json::object();
  if (!f.config.empty()) j = parse_json_text(read_file(f.config), "config '" + f.config + "'");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!f.config.empty()) rebase_config_paths(j, f.config);
  if (!f.weights.empty()) j["weights"] = f.weights;
  if (f.activations) j["activations"] = *f.activations;
  if (f.sparsity) j["sparsity"] = *f.sparsity;
  if (f.rows) j["rows_per_section"] = *f.rows;
  if (f.bits) j["weight_bits"] = *f.bits;
  if (f.abits) j["activation_bits"] = *f.abits;
  if (f.profile) j["profile"] = *f.profile;
  if (f.baseline_profile) j["baseline_profile"] = *f.baseline_profile;
  if (f.resolution) j["resolution"] = *f.resolution;
  if (f.order) j["order"] = *f.order;
  if (f.baseline_order) j["baseline_order"] = *f.baseline_order;
  if (f.seed) j["seed"] = *f.seed;
  if (f.energy_model) j["energy_model"] = *f.energy_model;
  if (f.out) j["out"] = *f.out;
  if (f.workers) j["workers"] = *f.workers;
  if (f.batch) {
    if (!j.contains("synthetic_activations")) j["synthetic_activations"] = Json::object();
    j["synthetic_activations"]["batch"] = *f.batch;
  }
  if (f.sweep_sparsity || f.sweep_rows || f.sweep_profiles) {
    if (!j.contains("sweep")) j["sweep"] = Json::object();
    if (f.sweep_sparsity) j["sweep"]["sparsity"] = split_numbers(*f.sweep_sparsity, false);
    if (f.sweep_rows) j["sweep"]["rows"] = split_numbers(*f.sweep_rows, true);
    if (f.sweep_profiles) {
      Json profiles = Json::array();
      std::stringstream ss(*f.sweep_profiles);
      std::string p;
      while (std::getline(ss, p, ';')) profiles.push_back(p);
      j["sweep"]["profiles"] = profiles;
    }
  }
  std::vector<std::string> warnings;
  auto cfg = parse_config(j, f.strict, &warnings, require_weights);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return cfg;
}

// ---------------------------------------------------------------- map

inline int cmd_map(const ExperimentConfig& cfg, std::ostream& out) {
  Json doc;
  doc["config"] = config_to_json(cfg);
  Json layers = Json::array();
  for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
    const Layer layer = prepare_layer(cfg, i, cfg.sparsity);
    const auto sorted = build_matrix_mapping(layer.qw, cfg.section(cfg.order), cfg.activation_bits);
    const auto base = build_matrix_mapping(layer.qw, cfg.section(cfg.baseline_order), cfg.activation_bits);
    const std::size_t f = sorted.feature_size;
    const auto overhead = permutation_overhead(f, std::max<std::size_t>(sorted.section_count(), 1));
    const auto h_sorted = active_column_histogram(sorted);
    const auto h_base = active_column_histogram(base);
    std::size_t active_sorted = 0, active_base = 0;
    for (const auto& r : sorted.rows) active_sorted += r.total_active_columns();
    for (const auto& r : base.rows) active_base += r.total_active_columns();

    out << "layer " << layer.name << ": " << sorted.rows.size() << " x " << f << ", nnz " << layer.qw.nonzero_count() << "\n";
    out << "  sections: " << to_string(cfg.order) << " " << sorted.section_count() << " vs " << to_string(cfg.baseline_order)
        << " " << base.section_count() << "\n";
    out << "  active columns: " << to_string(cfg.order) << " " << active_sorted << " vs " << to_string(cfg.baseline_order)
        << " " << active_base << "\n";
    out << "  active-column histogram (" << to_string(cfg.order) << "):";
    for (auto c : h_sorted) out << " " << c;
    out << "\n  active-column histogram (" << to_string(cfg.baseline_order) << "):";
    for (auto c : h_base) out << " " << c;
    out << "\n  permutation: " << overhead.mux_count << " muxes, " << num(overhead.memory_cells) << " buffer cells, "
        << num(overhead.time_units) << " time units\n";

    layers.push_back({{"layer", layer.name},
                      {"rows", sorted.rows.size()},
                      {"features", f},
                      {"nonzero_weights", layer.qw.nonzero_count()},
                      {"sorted_sections", sorted.section_count()},
                      {"baseline_sections", base.section_count()},
                      {"sorted_active_columns", active_sorted},
                      {"baseline_active_columns", active_base},
                      {"sorted_active_histogram", h_sorted},
                      {"baseline_active_histogram", h_base},
                      {"permutation_overhead",
                       {{"mux_count", overhead.mux_count}, {"memory_cells", overhead.memory_cells}, {"time_units", overhead.time_units}}}});
  }
  doc["layers"] = layers;
  doc["version"] = kToolVersion;
  if (!cfg.out.empty()) write_report(doc, cfg.out);
  return 0;
}

// ---------------------------------------------------------------- simulate

inline int cmd_simulate(const ExperimentConfig& cfg, bool with_timestamp, std::ostream& out) {
  const SimulationRun run = run_simulation(cfg);
  for (const auto& ls : run.layers) {
    out << "layer " << ls.layer.name << ": sections " << ls.sorted.energy.sections_programmed << " vs "
        << ls.baseline.energy.sections_programmed << ", conversions " << ls.sorted.energy.total_conversions << " vs "
        << ls.baseline.energy.total_conversions << ", ADC energy " << num(ls.sorted.energy.adc_energy) << " vs "
        << num(ls.baseline.energy.adc_energy) << "\n";
  }
  out << "max_abs error: " << num(run.sorted_max_abs) << " (" << to_string(cfg.order) << "), " << num(run.baseline_max_abs)
      << " (" << to_string(cfg.baseline_order) << ")\n";
  out << "ADC energy savings: " << percent(run.comparison.savings_fraction) << "\n";
  out << "conversion savings: " << percent(run.comparison.conversion_savings) << "\n";
  if (run.degenerate) out << "warning: degenerate profile, every ADC is dropped and all outputs are zero\n";
  if (!cfg.out.empty()) write_report(simulation_report(cfg, run, with_timestamp), cfg.out);
  return 0;
}

// ---------------------------------------------------------------- compare

/// Three scenarios: baseline at fixed resolution, sorted at fixed resolution, sorted with the per-column profile.
inline int cmd_compare(const ExperimentConfig& cfg, bool with_timestamp, std::ostream& out) {
  const std::vector<int> fixed(static_cast<std::size_t>(cfg.weight_bits), cfg.resolution);
  const auto base_res = cfg.baseline_profile ? *cfg.baseline_profile : fixed;
  const auto unfixed = cfg.resolutions();

  struct Row {
    std::string name;
    std::vector<int> res;
    EnergyReport energy;
    double max_abs = 0.0;
    double rmse_sum = 0.0;
  };
  std::vector<Row> rows = {{to_string(cfg.baseline_order) + " (fixed resolution)", base_res, {}, 0, 0},
                           {to_string(cfg.order) + " (fixed resolution)", fixed, {}, 0, 0},
                           {to_string(cfg.order) + " (profile)", unfixed, {}, 0, 0}};
  for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
    const Layer layer = prepare_layer(cfg, i, cfg.sparsity);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const RowOrder order = k == 0 ? cfg.baseline_order : cfg.order;
      auto s = run_scenario(layer, cfg, order, rows[k].res, cfg.rows_per_section);
      merge_into(rows[k].energy, s.energy);
      rows[k].max_abs = std::max(rows[k].max_abs, s.sim.errors.max_abs);
      rows[k].rmse_sum += s.sim.errors.rmse;
    }
  }
  Json scenarios = Json::array();
  out << std::left << std::setw(32) << "scenario" << std::setw(14) << "conversions" << std::setw(16) << "ADC energy"
      << std::setw(12) << "savings" << std::setw(14) << "max_abs err" << "ADCs\n";
  for (const auto& r : rows) {
    const auto c = compare(r.energy, rows[0].energy);
    out << std::left << std::setw(32) << r.name << std::setw(14) << r.energy.total_conversions << std::setw(16)
        << num(r.energy.adc_energy) << std::setw(12) << (&r == &rows[0] ? std::string("--") : percent(c.savings_fraction))
        << std::setw(14) << num(r.max_abs) << "[" << format_profile(r.res) << "]\n";
    scenarios.push_back({{"name", r.name},
                         {"energy", energy_report_to_json(r.energy)},
                         {"comparison", comparison_to_json(c)},
                         {"max_abs", r.max_abs}});
  }
  if (!cfg.out.empty()) {
    Json doc;
    doc["config"] = config_to_json(cfg);
    doc["sorted"] = energy_report_to_json(rows[1].energy);
    doc["baseline"] = energy_report_to_json(rows[0].energy);
    doc["comparison"] = comparison_to_json(compare(rows[1].energy, rows[0].energy));
    doc["errors"] = {{"sorted_fixed_max_abs", rows[1].max_abs}, {"sorted_profile_max_abs", rows[2].max_abs}, {"baseline_max_abs", rows[0].max_abs}};
    doc["scenarios"] = scenarios;
    doc["version"] = kToolVersion;
    if (with_timestamp) doc["timestamp"] = utc_timestamp();
    write_report(doc, cfg.out);
  }
  return 0;
}

// ---------------------------------------------------------------- analyze

/// Per-column bit statistics: empirical, per mapping, and the Gaussian prediction for the sorted sections.
inline int cmd_analyze(const ExperimentConfig& cfg, std::ostream& out) {
  std::ostringstream csv;
  csv << "layer,column,significance,bit_one_fraction,sorted_active_fraction,baseline_active_fraction,gaussian_expected_active\n";
  for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
    const Layer layer = prepare_layer(cfg, i, cfg.sparsity);
    const auto sorted = build_matrix_mapping(layer.qw, cfg.section(cfg.order), cfg.activation_bits);
    const auto base = build_matrix_mapping(layer.qw, cfg.section(cfg.baseline_order), cfg.activation_bits);
    const int b = cfg.weight_bits;
    const std::size_t nnz = layer.qw.nonzero_count();
    const double sigma = layer.weight_sigma > 0.0 ? layer.weight_sigma : 1.0;
    const GaussianWeightModel model(sigma);

    out << "layer " << layer.name << ": " << layer.qw.size() << " weights, nnz " << nnz << " ("
        << percent(1.0 - static_cast<double>(nnz) / static_cast<double>(std::max<std::size_t>(layer.qw.size(), 1)))
        << " zero), sigma " << num(layer.weight_sigma) << ", scale " << num(layer.qw.scale) << "\n";

    for (int j = 0; j < b; ++j) {
      const auto col = static_cast<std::size_t>(j);
      std::size_t ones = 0;
      for (auto m : layer.qw.magnitudes) ones += (m >> (b - 1 - j)) & 1U;
      auto active_fraction = [&](const MatrixMapping& mm) {
        std::size_t act = 0, total = 0;
        for (const auto& r : mm.rows)
          for (const auto& s : r.sections) {
            act += s.active_mask[col];
            ++total;
          }
        return total ? static_cast<double>(act) / static_cast<double>(total) : 0.0;
      };
      double expected = 0.0;
      std::size_t sections = 0;
      for (const auto& r : sorted.rows)
        for (const auto& s : r.sections) {
          const auto [lo_it, hi_it] = std::minmax_element(s.row_magnitudes.begin(), s.row_magnitudes.end());
          const double lo = code_cell(*lo_it, b, layer.qw.scale).lo;
          const double hi = code_cell(*hi_it, b, layer.qw.scale).hi;
          try {
            expected += expected_active_probability(model, {lo, hi}, s.real_rows(), j, b, layer.qw.scale);
          } catch (const NumericalError&) {
            // No Gaussian mass in this range; the model predicts nothing here.
          }
          ++sections;
        }
      csv << layer.name << "," << j << "," << (1ULL << (b - 1 - j)) << ","
          << num(layer.qw.size() ? static_cast<double>(ones) / static_cast<double>(layer.qw.size()) : 0.0) << ","
          << num(active_fraction(sorted)) << "," << num(active_fraction(base)) << ","
          << num(sections ? expected / static_cast<double>(sections) : 0.0) << "\n";
    }
  }
  if (cfg.out.empty()) out << csv.str();
  else write_file(cfg.out, csv.str());
  return 0;
}

// ---------------------------------------------------------------- sweep

inline int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sparsities = cfg.sweep.sparsity.empty() ? std::vector<double>{cfg.sparsity} : cfg.sweep.sparsity;
  const auto row_counts = cfg.sweep.rows.empty() ? std::vector<std::size_t>{cfg.rows_per_section} : cfg.sweep.rows;
  const auto profiles = cfg.sweep.profiles.empty() ? std::vector<std::vector<int>>{cfg.resolutions()} : cfg.sweep.profiles;

  std::ostringstream csv;
  csv << "sparsity,rows_per_section,profile,sorted_sections,baseline_sections,sorted_conversions,baseline_conversions,"
         "sorted_adc_energy,baseline_adc_energy,adc_savings,conversion_savings,sorted_max_abs_error,baseline_max_abs_error\n";
  for (double sp : sparsities) {
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < cfg.weights.size(); ++i) layers.push_back(prepare_layer(cfg, i, sp));
    for (std::size_t rows : row_counts)
      for (const auto& prof : profiles) {
        EnergyReport sorted, base;
        double err_s = 0.0, err_b = 0.0;
        const auto base_prof = cfg.baseline_profile ? *cfg.baseline_profile : prof;
        for (const auto& layer : layers) {
          auto s = run_scenario(layer, cfg, cfg.order, prof, rows);
          auto b = run_scenario(layer, cfg, cfg.baseline_order, base_prof, rows);
          merge_into(sorted, s.energy);
          merge_into(base, b.energy);
          err_s = std::max(err_s, s.sim.errors.max_abs);
          err_b = std::max(err_b, b.sim.errors.max_abs);
        }
        const auto c = compare(sorted, base);
        csv << num(sp) << "," << rows << "," << format_profile(prof) << "," << sorted.sections_programmed << ","
            << base.sections_programmed << "," << sorted.total_conversions << "," << base.total_conversions << ","
            << num(sorted.adc_energy) << "," << num(base.adc_energy) << "," << num(c.savings_fraction) << ","
            << num(c.conversion_savings) << "," << num(err_s) << "," << num(err_b) << "\n";
      }
  }
  if (cfg.out.empty()) out << csv.str();
  else write_file(cfg.out, csv.str());
  return 0;
}

// ---------------------------------------------------------------- theory

inline int cmd_theory(const Flags& f, std::ostream& out) {
  const GaussianWeightModel model(f.sigma);
  const std::uint64_t seed = f.seed.value_or(0);
  if (f.interval) {
    const Json bounds = split_numbers(*f.interval, false);
    if (bounds.size() != 2) throw InvalidConfig("--interval takes lo,hi");
    const MagnitudeInterval iv{bounds[0].get<double>(), bounds[1].get<double>()};
    const int bits = f.bits.value_or(8);
    if (!f.scale) throw InvalidConfig("--scale is required for section queries");
    const double analytic = section_bit_zero_probability(model, iv, f.column, bits, *f.scale);
    const auto mc = monte_carlo_section_bit_stats(model, iv, f.column, bits, *f.scale, f.samples, seed);
    const double active = expected_active_probability(model, iv, f.theory_rows, f.column, bits, *f.scale);
    out << "P(bit " << f.column << " = 0 | |w| in [" << num(iv.lo) << ", " << num(iv.hi) << ")), sigma " << num(f.sigma)
        << ", bits " << bits << ", scale " << num(*f.scale) << "\n";
    out << "analytic:    " << std::setprecision(6) << std::fixed << analytic << "\n";
    out << "monte carlo: " << mc.probability << " (+/- " << mc.standard_error() << ", " << mc.accepted << " samples)\n";
    out << "difference:  " << std::abs(analytic - mc.probability) << "\n";
    out << "P(column active) for " << f.theory_rows << " rows: " << active << "\n";
    out.unsetf(std::ios::floatfield);
    return 0;
  }
  const double lower = f.lower.value_or(0.0);
  const BitPrefixInterval iv(lower, f.bit);
  const double analytic = conditional_bit_zero_probability(model, lower, f.bit);
  const auto mc = monte_carlo_prefix_bit_stats(model, lower, f.bit, f.samples, seed);
  out << "P(a_n = 0 | |w| in [" << num(iv.lower) << ", " << num(iv.upper()) << ")), sigma " << num(f.sigma) << ", n " << f.bit
      << ", midpoint " << num(iv.midpoint()) << "\n";
  out << "analytic:    " << std::setprecision(6) << std::fixed << analytic << "\n";
  out << "monte carlo: " << mc.probability << " (+/- " << mc.standard_error() << ", " << mc.accepted << " samples)\n";
  out << "difference:  " << std::abs(analytic - mc.probability) << "\n";
  out.unsetf(std::ios::floatfield);
  return 0;
}

// ---------------------------------------------------------------- entry point

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sorted weight sectioning simulator for bit-sliced compute-in-memory crossbars", "swsim"};
  app.require_subcommand(1);
  Flags f;

  auto* map = app.add_subcommand("map", "show section layouts, active columns and permutation cost");
  auto* sim = app.add_subcommand("simulate", "simulate sorted and baseline mappings, report errors and ADC energy");
  auto* cmp = app.add_subcommand("compare", "baseline vs sorted at fixed resolution vs sorted with a column profile");
  auto* ana = app.add_subcommand("analyze", "per-column bit statistics as CSV");
  auto* swp = app.add_subcommand("sweep", "sparsity x rows x profile grid as CSV");
  auto* thy = app.add_subcommand("theory", "Gaussian bit-zero probabilities, analytic vs Monte Carlo");
  for (auto* c : {map, sim, cmp, ana, swp}) add_common_options(c, f);
  swp->add_option("--sweep-sparsity", f.sweep_sparsity, "comma-separated sparsities");
  swp->add_option("--sweep-rows", f.sweep_rows, "comma-separated rows per section");
  swp->add_option("--sweep-profiles", f.sweep_profiles, "semicolon-separated profiles, e.g. 10-10-10-10-10-10-10-10;8-8-8-8-8-8-8-6");

  thy->add_option("--sigma", f.sigma, "weight standard deviation")->default_val(1.0);
  thy->add_option("--lower", f.lower, "prefix interval lower bound L (>= 0)");
  thy->add_option("--bit", f.bit, "bit position n; the interval is [L, L + 2^-n)")->default_val(1);
  thy->add_option("--interval", f.interval, "section query: magnitude interval lo,hi");
  thy->add_option("--column", f.column, "section query: crossbar column (0 = most significant)")->default_val(0);
  thy->add_option("--bits", f.bits, "section query: weight bits");
  thy->add_option("--scale", f.scale, "section query: quantization scale");
  thy->add_option("--rows", f.theory_rows, "section query: rows per section")->default_val(1);
  thy->add_option("--samples", f.samples, "Monte Carlo samples")->default_val(1000000);
  thy->add_option("--seed", f.seed, "Monte Carlo seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (thy->parsed()) return cmd_theory(f, out);
    const ExperimentConfig cfg = resolve_config(f, err);
    if (map->parsed()) return cmd_map(cfg, out);
    if (sim->parsed()) return cmd_simulate(cfg, !f.no_timestamp, out);
    if (cmp->parsed()) return cmd_compare(cfg, !f.no_timestamp, out);
    if (ana->parsed()) return cmd_analyze(cfg, out);
    if (swp->parsed()) return cmd_sweep(cfg, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command given\n";
  return 1;
}

}  // namespace sws::cli

#endif  // SWS_CLI_HPP
