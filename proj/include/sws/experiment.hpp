#ifndef SWS_EXPERIMENT_HPP
#define SWS_EXPERIMENT_HPP

// End-to-end runs: load and prepare layers, map them, simulate, account energy
// and assemble report documents. The CLI is a thin layer over this header.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sws/energy.hpp"
#include "sws/io.hpp"
#include "sws/mapper.hpp"
#include "sws/quant.hpp"
#include "sws/theory.hpp"
#include "sws/xbar.hpp"

namespace sws {

struct Layer {
  std::string name;
  FloatTensor weights;  // [out, f] after flattening and pruning
  QuantizedTensor qw;
  QuantizedTensor qx;   // [f, batch]
  double weight_sigma = 0.0;  // std of the unpruned weights
};

/// Collapses trailing dimensions so that weights are [out, f]; a 1-D tensor becomes [1, f].
inline FloatTensor as_weight_matrix(FloatTensor t) {
  if (t.shape.size() == 1) {
    t.shape = {1, t.shape[0]};
  } else if (t.shape.size() > 2) {
    std::size_t f = 1;
    for (std::size_t i = 1; i < t.shape.size(); ++i) f *= t.shape[i];
    t.shape = {t.shape[0], f};
  }
  return t;
}

inline FloatTensor gaussian_tensor(std::vector<std::size_t> shape, double sigma, std::uint64_t seed) {
  FloatTensor t;
  t.shape = std::move(shape);
  t.values.resize(t.element_count());
  std::mt19937_64 rng(seed);
  for (auto& v : t.values) v = sigma * detail::standard_normal(rng);
  return t;
}

inline double standard_deviation(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  long double mean = 0.0L, sq = 0.0L;
  for (double x : v) mean += x;
  mean /= static_cast<long double>(v.size());
  for (double x : v) sq += (x - mean) * (x - mean);
  return static_cast<double>(std::sqrt(sq / static_cast<long double>(v.size())));
}

inline Layer prepare_layer(const ExperimentConfig& cfg, std::size_t index, double sparsity) {
  const std::string& path = cfg.weights.at(index);
  Layer layer;
  layer.name = std::filesystem::path(path).stem().string();
  FloatTensor w = as_weight_matrix(load_tensor(path));
  layer.weight_sigma = standard_deviation(w.values);
  layer.weights = prune_magnitude(w, sparsity);
  layer.qw = quantize(layer.weights, cfg.weight_bits);
  const std::size_t f = layer.weights.shape[1];

  FloatTensor x;
  if (cfg.activations) {
    x = load_tensor(*cfg.activations);
    if (x.shape.size() > 2) throw ShapeError("activations must be 1-D or 2-D");
    if (x.shape.front() != f)
      throw ShapeError("activations have " + std::to_string(x.shape.front()) + " features but layer '" + layer.name +
                       "' expects " + std::to_string(f));
  } else {
    x = gaussian_tensor({f, cfg.synthetic.batch}, cfg.synthetic.sigma, cfg.synthetic.seed + index);
  }
  layer.qx = quantize(x, cfg.activation_bits);
  return layer;
}

struct Scenario {
  MatrixMapping mapping;
  SimResult sim;
  EnergyReport energy;
};

inline Scenario run_scenario(const Layer& layer, const ExperimentConfig& cfg, RowOrder order, const std::vector<int>& resolutions,
                             std::size_t rows_per_section) {
  SectionConfig sc{rows_per_section, order, cfg.seed};
  Scenario s;
  s.mapping = build_matrix_mapping(layer.qw, sc, cfg.activation_bits);
  const AdcProfile profile = cfg.adc_profile(resolutions, rows_per_section);
  s.sim = simulate_matmul(s.mapping, layer.qw, layer.qx, profile, cfg.workers);
  s.energy = account_matmul(s.sim, s.mapping, layer.qx, cfg.energy, profile);
  return s;
}

inline Json errors_to_json(const SimResult& sim) {
  return {{"max_abs", sim.errors.max_abs}, {"rmse", sim.errors.rmse}, {"bit_exact", sim.bit_exact()}, {"outputs", sim.outputs.size()}};
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Activation histogram: how many sections have k active columns, k = 0..bits.
inline std::vector<std::size_t> active_column_histogram(const MatrixMapping& mm) {
  std::vector<std::size_t> h(static_cast<std::size_t>(mm.quant.weight_bits) + 1, 0);
  for (const auto& row : mm.rows)
    for (const auto& s : row.sections) ++h[s.active_count()];
  return h;
}

struct LayerSimulation {
  Layer layer;
  Scenario sorted;
  Scenario baseline;
  Comparison comparison;
};

struct SimulationRun {
  std::vector<LayerSimulation> layers;
  EnergyReport sorted_total;
  EnergyReport baseline_total;
  Comparison comparison;
  double sorted_max_abs = 0.0;
  double baseline_max_abs = 0.0;
  bool degenerate = false;  // every sorted-side ADC is dropped
};

inline SimulationRun run_simulation(const ExperimentConfig& cfg) {
  SimulationRun run;
  const auto res = cfg.resolutions();
  const auto base_res = cfg.baseline_resolutions();
  run.degenerate = std::all_of(res.begin(), res.end(), [](int r) { return r == 0; });
  for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
    LayerSimulation ls;
    ls.layer = prepare_layer(cfg, i, cfg.sparsity);
    ls.sorted = run_scenario(ls.layer, cfg, cfg.order, res, cfg.rows_per_section);
    ls.baseline = run_scenario(ls.layer, cfg, cfg.baseline_order, base_res, cfg.rows_per_section);
    ls.comparison = compare(ls.sorted.energy, ls.baseline.energy);
    merge_into(run.sorted_total, ls.sorted.energy);
    merge_into(run.baseline_total, ls.baseline.energy);
    run.sorted_max_abs = std::max(run.sorted_max_abs, ls.sorted.sim.errors.max_abs);
    run.baseline_max_abs = std::max(run.baseline_max_abs, ls.baseline.sim.errors.max_abs);
    run.layers.push_back(std::move(ls));
  }
  run.comparison = compare(run.sorted_total, run.baseline_total);
  return run;
}

/// Report with the stable top-level keys config, sorted, baseline, comparison, errors, version (+ timestamp).
inline Json simulation_report(const ExperimentConfig& cfg, const SimulationRun& run, bool with_timestamp = true) {
  Json doc;
  doc["config"] = config_to_json(cfg);
  Json sorted_layers = Json::array(), base_layers = Json::array(), cmp_layers = Json::array(), err_layers = Json::array();
  for (const auto& ls : run.layers) {
    Json s = energy_report_to_json(ls.sorted.energy);
    s["layer"] = ls.layer.name;
    sorted_layers.push_back(s);
    Json b = energy_report_to_json(ls.baseline.energy);
    b["layer"] = ls.layer.name;
    base_layers.push_back(b);
    Json c = comparison_to_json(ls.comparison);
    c["layer"] = ls.layer.name;
    cmp_layers.push_back(c);
    err_layers.push_back({{"layer", ls.layer.name}, {"sorted", errors_to_json(ls.sorted.sim)}, {"baseline", errors_to_json(ls.baseline.sim)}});
  }
  doc["sorted"] = {{"total", energy_report_to_json(run.sorted_total)}, {"layers", sorted_layers}};
  doc["baseline"] = {{"total", energy_report_to_json(run.baseline_total)}, {"layers", base_layers}};
  Json cmp = comparison_to_json(run.comparison);
  cmp["degenerate"] = run.degenerate;
  doc["comparison"] = {{"total", cmp}, {"layers", cmp_layers}};
  doc["errors"] = {{"sorted_max_abs", run.sorted_max_abs}, {"baseline_max_abs", run.baseline_max_abs}, {"layers", err_layers}};
  doc["version"] = kToolVersion;
  if (with_timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

}  // namespace sws

#endif  // SWS_EXPERIMENT_HPP
