#ifndef SWS_IO_HPP
#define SWS_IO_HPP

// Tensor files (NPY v1.0, CSV), experiment configs and JSON reports.

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sws/energy.hpp"
#include "sws/error.hpp"
#include "sws/mapper.hpp"
#include "sws/quant.hpp"

namespace sws {

static_assert(std::endian::native == std::endian::little, "NPY support assumes a little-endian host");

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

// ---------------------------------------------------------------- NPY

enum class NpyDtype { f4, f8 };

namespace detail {

inline constexpr char kNpyMagic[] = "\x93NUMPY";

inline std::string npy_header_value(const std::string& header, const std::string& key) {
  const auto k = header.find("'" + key + "'");
  if (k == std::string::npos) throw FormatError("NPY header lacks '" + key + "'");
  auto colon = header.find(':', k);
  if (colon == std::string::npos) throw FormatError("NPY header is malformed near '" + key + "'");
  auto start = header.find_first_not_of(' ', colon + 1);
  if (start == std::string::npos) throw FormatError("NPY header is malformed near '" + key + "'");
  std::size_t end;
  if (header[start] == '(') {
    end = header.find(')', start);
    if (end == std::string::npos) throw FormatError("NPY shape tuple is not closed");
    return header.substr(start, end - start + 1);
  }
  if (header[start] == '\'') {
    end = header.find('\'', start + 1);
    if (end == std::string::npos) throw FormatError("NPY header string is not closed");
    return header.substr(start + 1, end - start - 1);
  }
  end = header.find_first_of(",}", start);
  if (end == std::string::npos) throw FormatError("NPY header is malformed near '" + key + "'");
  auto v = header.substr(start, end - start);
  while (!v.empty() && v.back() == ' ') v.pop_back();
  return v;
}

inline std::vector<std::size_t> parse_npy_shape(const std::string& tuple) {
  std::vector<std::size_t> shape;
  std::string inner = tuple.substr(1, tuple.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(' ');
    const std::string digits = item.substr(b, e - b + 1);
    char* endp = nullptr;
    const unsigned long long v = std::strtoull(digits.c_str(), &endp, 10);
    if (endp == digits.c_str() || *endp != '\0') throw FormatError("NPY shape entry '" + digits + "' is not an integer");
    shape.push_back(static_cast<std::size_t>(v));
  }
  return shape;
}

}  // namespace detail

struct NpyArray {
  FloatTensor tensor;
  NpyDtype dtype = NpyDtype::f8;
};

inline NpyArray parse_npy(const std::string& bytes) {
  if (bytes.size() < 10 || bytes.compare(0, 6, detail::kNpyMagic, 6) != 0) throw FormatError("not an NPY file (bad magic)");
  const auto major = static_cast<unsigned char>(bytes[6]);
  const auto minor = static_cast<unsigned char>(bytes[7]);
  if (major != 1 || minor != 0)
    throw FormatError("unsupported NPY version " + std::to_string(major) + "." + std::to_string(minor));
  const std::size_t header_len = static_cast<unsigned char>(bytes[8]) | (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
  if (bytes.size() < 10 + header_len) throw FormatError("NPY header is truncated");
  const std::string header = bytes.substr(10, header_len);

  NpyArray arr;
  const std::string descr = detail::npy_header_value(header, "descr");
  if (descr == "<f4") arr.dtype = NpyDtype::f4;
  else if (descr == "<f8") arr.dtype = NpyDtype::f8;
  else throw FormatError("unsupported NPY dtype '" + descr + "' (expected <f4 or <f8)");
  const std::string fortran = detail::npy_header_value(header, "fortran_order");
  if (fortran == "True") throw Unsupported("Fortran-ordered NPY arrays are not supported");
  if (fortran != "False") throw FormatError("bad fortran_order value '" + fortran + "'");
  arr.tensor.shape = detail::parse_npy_shape(detail::npy_header_value(header, "shape"));
  if (arr.tensor.shape.empty()) arr.tensor.shape = {1};  // 0-d array

  const std::size_t count = arr.tensor.element_count();
  const std::size_t width = arr.dtype == NpyDtype::f4 ? 4 : 8;
  const std::size_t offset = 10 + header_len;
  if (bytes.size() - offset < count * width) throw FormatError("NPY data is truncated");
  if (bytes.size() - offset > count * width) throw FormatError("NPY file has trailing bytes");
  arr.tensor.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const char* p = bytes.data() + offset + i * width;
    if (width == 4) {
      float f;
      std::memcpy(&f, p, 4);
      arr.tensor.values[i] = f;
    } else {
      std::memcpy(&arr.tensor.values[i], p, 8);
    }
  }
  return arr;
}

/// Serializes with the same header layout numpy writes (v1.0, padded to 64 bytes).
inline std::string encode_npy(const FloatTensor& t, NpyDtype dtype = NpyDtype::f8) {
  if (t.element_count() != t.values.size()) throw InvalidTensor("tensor shape does not match value count");
  std::string shape = "(";
  for (std::size_t i = 0; i < t.shape.size(); ++i) {
    shape += std::to_string(t.shape[i]);
    shape += (t.shape.size() == 1 || i + 1 < t.shape.size()) ? "," : "";
    if (i + 1 < t.shape.size()) shape += " ";
  }
  shape += ")";
  std::string header = std::string("{'descr': '") + (dtype == NpyDtype::f4 ? "<f4" : "<f8") +
                       "', 'fortran_order': False, 'shape': " + shape + ", }";
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::string out(detail::kNpyMagic, 6);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(header.size() & 0xFF));
  out.push_back(static_cast<char>((header.size() >> 8) & 0xFF));
  out += header;
  for (double v : t.values) {
    if (dtype == NpyDtype::f4) {
      const auto f = static_cast<float>(v);
      out.append(reinterpret_cast<const char*>(&f), 4);
    } else {
      out.append(reinterpret_cast<const char*>(&v), 8);
    }
  }
  return out;
}

// ---------------------------------------------------------------- CSV

/// One row -> 1-D tensor; several rows -> 2-D. Blank lines are ignored.
inline FloatTensor parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string v = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      char* endp = nullptr;
      const double d = std::strtod(v.c_str(), &endp);
      if (v.empty() || *endp != '\0') throw FormatError("CSV line " + std::to_string(lineno) + ": '" + v + "' is not a number");
      row.push_back(d);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("CSV line " + std::to_string(lineno) + " has " + std::to_string(row.size()) + " values, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("CSV file has no data");
  FloatTensor t;
  t.shape = rows.size() == 1 ? std::vector<std::size_t>{rows[0].size()} : std::vector<std::size_t>{rows.size(), rows[0].size()};
  for (auto& r : rows) t.values.insert(t.values.end(), r.begin(), r.end());
  return t;
}

inline std::string encode_csv(const FloatTensor& t) {
  if (t.shape.empty() || t.shape.size() > 2) throw Unsupported("CSV holds only 1-D or 2-D tensors");
  const std::size_t cols = t.shape.back();
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.values[i]);
    out += buf;
    out += ((i + 1) % cols == 0) ? "\n" : ",";
  }
  return out;
}

inline bool has_extension(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).extension() == ext;
}

inline FloatTensor load_tensor(const std::string& path) {
  const std::string bytes = read_file(path);
  FloatTensor t;
  if (has_extension(path, ".csv")) t = parse_csv(bytes);
  else if (has_extension(path, ".npy") || bytes.compare(0, 6, detail::kNpyMagic, 6) == 0) t = parse_npy(bytes).tensor;
  else t = parse_csv(bytes);
  t.validate();
  return t;
}

inline void save_tensor(const FloatTensor& t, const std::string& path, NpyDtype dtype = NpyDtype::f8) {
  write_file(path, has_extension(path, ".csv") ? encode_csv(t) : encode_npy(t, dtype));
}

// ---------------------------------------------------------------- config

struct SyntheticActivations {
  double sigma = 1.0;
  std::size_t batch = 1;
  std::uint64_t seed = 0;
};

struct SweepGrid {
  std::vector<double> sparsity;
  std::vector<std::size_t> rows;
  std::vector<std::vector<int>> profiles;
};

struct ExperimentConfig {
  std::vector<std::string> weights;
  std::optional<std::string> activations;
  SyntheticActivations synthetic;
  double sparsity = 0.0;
  int weight_bits = 8;
  int activation_bits = 8;
  std::size_t rows_per_section = 128;
  RowOrder order = RowOrder::sorted;
  RowOrder baseline_order = RowOrder::unsorted;
  std::uint64_t seed = 0;
  int resolution = 10;
  std::optional<std::vector<int>> profile;
  std::optional<std::vector<int>> baseline_profile;
  EnergyModel energy;
  std::string out;
  unsigned workers = 1;
  SweepGrid sweep;

  QuantConfig quant() const { return {weight_bits, activation_bits}; }
  SectionConfig section(RowOrder o) const { return {rows_per_section, o, seed}; }

  std::vector<int> resolutions() const {
    return profile ? *profile : std::vector<int>(static_cast<std::size_t>(weight_bits), resolution);
  }
  std::vector<int> baseline_resolutions() const { return baseline_profile ? *baseline_profile : resolutions(); }

  AdcProfile adc_profile(const std::vector<int>& res, std::size_t rows) const {
    return {res, AdcProfile::full_scale_for(rows, activation_bits)};
  }
};

/// "10-10-9-8" or "10,10,9,8".
inline std::vector<int> parse_profile(const std::string& s) {
  std::vector<int> out;
  std::string item;
  for (char c : s + "-") {
    if (c == '-' || c == ',') {
      if (item.empty()) throw InvalidConfig("empty entry in ADC profile '" + s + "'");
      char* endp = nullptr;
      const long v = std::strtol(item.c_str(), &endp, 10);
      if (*endp != '\0') throw InvalidConfig("bad ADC resolution '" + item + "' in profile '" + s + "'");
      out.push_back(static_cast<int>(v));
      item.clear();
    } else if (c != ' ') {
      item.push_back(c);
    }
  }
  return out;
}

inline std::string format_profile(const std::vector<int>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "-" : "") + std::to_string(p[i]);
  return s;
}

inline Json energy_model_to_json(const EnergyModel& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  j["e0"] = m.e0;
  if (!m.table.empty()) {
    Json t = Json::object();
    for (const auto& [r, e] : m.table) t[std::to_string(r)] = e;
    j["table"] = t;
  }
  j["e_drive"] = m.e_drive;
  j["e_mux"] = m.e_mux;
  return j;
}

namespace detail {

class ConfigReader {
 public:
  ConfigReader(const Json& j, bool strict, std::vector<std::string>* warnings) : j_(j), strict_(strict), warnings_(warnings) {}

  void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (ok) continue;
      const std::string msg = "unknown key '" + where + key + "'";
      if (strict_) throw ConfigError(msg);
      if (warnings_) warnings_->push_back(msg);
    }
  }

  template <typename T>
  T get(const Json& obj, const char* key, T fallback, const std::string& where = "") {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    try {
      return obj[key].template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("key '" + where + key + "' has the wrong type");
    }
  }

  template <typename T>
  T get_unsigned(const Json& obj, const char* key, T fallback, const std::string& where = "") {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_number_integer() || obj[key].template get<long long>() < 0)
      throw ConfigError("key '" + where + key + "' must be a non-negative integer");
    return obj[key].template get<T>();
  }

  std::vector<int> get_profile(const Json& obj, const char* key) {
    const Json& v = obj[key];
    if (v.is_string()) return parse_profile(v.get<std::string>());
    if (v.is_array()) {
      std::vector<int> p;
      for (const auto& e : v) {
        if (!e.is_number_integer()) throw ConfigError("key '" + std::string(key) + "' must hold integers");
        p.push_back(e.get<int>());
      }
      return p;
    }
    throw ConfigError("key '" + std::string(key) + "' must be an array or a dash-separated string");
  }

  const Json& root() const { return j_; }

 private:
  const Json& j_;
  bool strict_;
  std::vector<std::string>* warnings_;
};

}  // namespace detail

inline EnergyModel energy_model_from_json(const Json& j, detail::ConfigReader& rd) {
  if (j.is_string()) return parse_energy_model(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("key 'energy_model' must be an object or a string");
  rd.check_keys(j, {"kind", "e0", "table", "e_drive", "e_mux"}, "energy_model.");
  EnergyModel m;
  const auto kind = rd.get<std::string>(j, "kind", "flash", "energy_model.");
  if (kind == "flash") m.kind = AdcModelKind::flash;
  else if (kind == "linear") m.kind = AdcModelKind::linear;
  else if (kind == "table") m.kind = AdcModelKind::table;
  else throw ConfigError("key 'energy_model.kind' must be flash, linear or table");
  m.e0 = rd.get<double>(j, "e0", 1.0, "energy_model.");
  m.e_drive = rd.get<double>(j, "e_drive", 0.0, "energy_model.");
  m.e_mux = rd.get<double>(j, "e_mux", 0.0, "energy_model.");
  if (j.contains("table")) {
    if (!j["table"].is_object()) throw ConfigError("key 'energy_model.table' must map resolution to energy");
    for (const auto& [r, e] : j["table"].items()) {
      if (!e.is_number()) throw ConfigError("key 'energy_model.table." + r + "' must be a number");
      char* endp = nullptr;
      const long res = std::strtol(r.c_str(), &endp, 10);
      if (r.empty() || *endp != '\0') throw ConfigError("key 'energy_model.table." + r + "' is not a resolution");
      m.table[static_cast<int>(res)] = e.get<double>();
    }
  }
  try {
    m.validate();
  } catch (const InvalidConfig& e) {
    throw ConfigError(std::string("key 'energy_model': ") + e.what());
  }
  return m;
}

/// Builds and validates a config. require_weights is false for commands that do not read tensors.
inline ExperimentConfig parse_config(const Json& j, bool strict = true, std::vector<std::string>* warnings = nullptr,
                                     bool require_weights = true) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  detail::ConfigReader rd(j, strict, warnings);
  rd.check_keys(j,
                {"weights", "activations", "synthetic_activations", "sparsity", "weight_bits", "activation_bits",
                 "rows_per_section", "order", "baseline_order", "seed", "resolution", "profile", "baseline_profile",
                 "energy_model", "out", "workers", "sweep"},
                "");
  ExperimentConfig c;
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (w.is_string()) c.weights = {w.get<std::string>()};
    else if (w.is_array()) {
      for (const auto& e : w) {
        if (!e.is_string()) throw ConfigError("key 'weights' must hold file paths");
        c.weights.push_back(e.get<std::string>());
      }
    } else {
      throw ConfigError("key 'weights' must be a path or a list of paths");
    }
  }
  if (require_weights && c.weights.empty()) throw ConfigError("missing required key 'weights'");

  if (j.contains("activations") && !j["activations"].is_null()) c.activations = rd.get<std::string>(j, "activations", "");
  if (j.contains("synthetic_activations")) {
    const auto& s = j["synthetic_activations"];
    if (!s.is_object()) throw ConfigError("key 'synthetic_activations' must be an object");
    rd.check_keys(s, {"sigma", "batch", "seed"}, "synthetic_activations.");
    c.synthetic.sigma = rd.get<double>(s, "sigma", 1.0, "synthetic_activations.");
    c.synthetic.batch = rd.get_unsigned<std::size_t>(s, "batch", 1, "synthetic_activations.");
    c.synthetic.seed = rd.get_unsigned<std::uint64_t>(s, "seed", 0, "synthetic_activations.");
    if (!(c.synthetic.sigma > 0.0)) throw ConfigError("key 'synthetic_activations.sigma' must be > 0");
    if (c.synthetic.batch < 1) throw ConfigError("key 'synthetic_activations.batch' must be >= 1");
  }

  c.sparsity = rd.get<double>(j, "sparsity", 0.0);
  if (!(c.sparsity >= 0.0 && c.sparsity <= 1.0)) throw ConfigError("key 'sparsity' must be in [0, 1]");
  c.weight_bits = rd.get<int>(j, "weight_bits", 8);
  if (c.weight_bits < kMinBits || c.weight_bits > kMaxBits) throw ConfigError("key 'weight_bits' must be in [1, 16]");
  c.activation_bits = rd.get<int>(j, "activation_bits", 8);
  if (c.activation_bits < kMinBits || c.activation_bits > kMaxBits) throw ConfigError("key 'activation_bits' must be in [1, 16]");
  c.rows_per_section = rd.get_unsigned<std::size_t>(j, "rows_per_section", 128);
  if (c.rows_per_section < 1) throw ConfigError("key 'rows_per_section' must be >= 1");
  try {
    c.order = parse_row_order(rd.get<std::string>(j, "order", "sorted"));
    c.baseline_order = parse_row_order(rd.get<std::string>(j, "baseline_order", "unsorted"));
  } catch (const InvalidConfig& e) {
    throw ConfigError(std::string("key 'order'/'baseline_order': ") + e.what());
  }
  c.seed = rd.get_unsigned<std::uint64_t>(j, "seed", 0);
  c.resolution = rd.get<int>(j, "resolution", 10);
  if (c.resolution < 0 || c.resolution > kMaxAdcResolution) throw ConfigError("key 'resolution' must be in [0, 32]");

  auto check_profile = [&](const std::vector<int>& p, const char* key) {
    if (p.size() != static_cast<std::size_t>(c.weight_bits))
      throw ConfigError("key '" + std::string(key) + "' has " + std::to_string(p.size()) + " entries but weight_bits is " +
                        std::to_string(c.weight_bits));
    for (int r : p)
      if (r < 0 || r > kMaxAdcResolution) throw ConfigError("key '" + std::string(key) + "' entries must be in [0, 32]");
  };
  try {
    if (j.contains("profile") && !j["profile"].is_null()) c.profile = rd.get_profile(j, "profile");
    if (j.contains("baseline_profile") && !j["baseline_profile"].is_null())
      c.baseline_profile = rd.get_profile(j, "baseline_profile");
  } catch (const InvalidConfig& e) {
    throw ConfigError(e.what());
  }
  if (c.profile) check_profile(*c.profile, "profile");
  if (c.baseline_profile) check_profile(*c.baseline_profile, "baseline_profile");

  if (j.contains("energy_model")) {
    try {
      c.energy = energy_model_from_json(j["energy_model"], rd);
    } catch (const InvalidConfig& e) {
      throw ConfigError(std::string("key 'energy_model': ") + e.what());
    }
  }
  c.out = rd.get<std::string>(j, "out", "");
  c.workers = rd.get_unsigned<unsigned>(j, "workers", 1);
  if (c.workers < 1) throw ConfigError("key 'workers' must be >= 1");

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (!s.is_object()) throw ConfigError("key 'sweep' must be an object");
    rd.check_keys(s, {"sparsity", "rows", "profiles"}, "sweep.");
    try {
      c.sweep.sparsity = rd.get<std::vector<double>>(s, "sparsity", {}, "sweep.");
      c.sweep.rows = rd.get<std::vector<std::size_t>>(s, "rows", {}, "sweep.");
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("key 'sweep' has entries of the wrong type");
    }
    for (double v : c.sweep.sparsity)
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("key 'sweep.sparsity' entries must be in [0, 1]");
    for (auto r : c.sweep.rows)
      if (r < 1) throw ConfigError("key 'sweep.rows' entries must be >= 1");
    if (s.contains("profiles")) {
      if (!s["profiles"].is_array()) throw ConfigError("key 'sweep.profiles' must be a list of profiles");
      for (const auto& p : s["profiles"]) {
        Json holder = {{"p", p}};
        auto prof = rd.get_profile(holder, "p");
        check_profile(prof, "sweep.profiles");
        c.sweep.profiles.push_back(std::move(prof));
      }
    }
  }
  return c;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(what + " is not valid JSON: " + e.what());
  }
}

/// Makes relative tensor paths in a config document relative to the config file's directory.
inline void rebase_config_paths(Json& j, const std::filesystem::path& config_path) {
  if (!j.is_object()) return;
  const auto base = config_path.parent_path();
  auto rebase = [&](Json& v) {
    if (!v.is_string() || std::filesystem::path(v.get<std::string>()).is_absolute()) return;
    v = std::filesystem::absolute(base / v.get<std::string>()).lexically_normal().string();
  };
  if (j.contains("weights")) {
    if (j["weights"].is_array()) {
      for (auto& w : j["weights"]) rebase(w);
    } else {
      rebase(j["weights"]);
    }
  }
  if (j.contains("activations")) rebase(j["activations"]);
}

inline ExperimentConfig load_config(const std::string& path, bool strict = true, std::vector<std::string>* warnings = nullptr) {
  Json j = parse_json_text(read_file(path), "config '" + path + "'");
  rebase_config_paths(j, path);
  return parse_config(j, strict, warnings);
}

/// Canonical echo of a config; parse_config(config_to_json(c)) reproduces c.
inline Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["weights"] = c.weights;
  if (c.activations) j["activations"] = *c.activations;
  j["synthetic_activations"] = {{"sigma", c.synthetic.sigma}, {"batch", c.synthetic.batch}, {"seed", c.synthetic.seed}};
  j["sparsity"] = c.sparsity;
  j["weight_bits"] = c.weight_bits;
  j["activation_bits"] = c.activation_bits;
  j["rows_per_section"] = c.rows_per_section;
  j["order"] = to_string(c.order);
  j["baseline_order"] = to_string(c.baseline_order);
  j["seed"] = c.seed;
  j["resolution"] = c.resolution;
  if (c.profile) j["profile"] = *c.profile;
  if (c.baseline_profile) j["baseline_profile"] = *c.baseline_profile;
  j["energy_model"] = energy_model_to_json(c.energy);
  if (!c.out.empty()) j["out"] = c.out;
  j["workers"] = c.workers;
  if (!c.sweep.sparsity.empty() || !c.sweep.rows.empty() || !c.sweep.profiles.empty())
    j["sweep"] = {{"sparsity", c.sweep.sparsity}, {"rows", c.sweep.rows}, {"profiles", c.sweep.profiles}};
  return j;
}

// ---------------------------------------------------------------- reports

inline Json energy_report_to_json(const EnergyReport& r) {
  Json j;
  j["order"] = to_string(r.order);
  j["rows_per_section"] = r.rows_per_section;
  j["bits"] = r.bits;
  j["profile"] = r.profile.resolutions;
  j["full_scale"] = r.profile.full_scale;
  j["model"] = energy_model_to_json(r.model);
  j["vectors_evaluated"] = r.vectors_evaluated;
  j["sections_programmed"] = r.sections_programmed;
  j["total_conversions"] = r.total_conversions;
  j["conversions_per_column"] = r.conversions_per_column;
  j["adc_energy"] = r.adc_energy;
  j["driver_energy"] = r.driver_energy;
  j["mux_energy"] = r.mux_energy;
  j["total_energy"] = r.total_energy();
  Json secs = Json::array();
  for (const auto& s : r.sections)
    secs.push_back({{"conversions", s.conversions},
                    {"adc_energy", s.adc_energy},
                    {"row_drives", s.row_drives},
                    {"driver_energy", s.driver_energy}});
  j["sections"] = secs;
  return j;
}

inline Json comparison_to_json(const Comparison& c) {
  return {{"savings_fraction", c.savings_fraction},
          {"conversion_savings", c.conversion_savings},
          {"conversion_ratio", c.conversion_ratio},
          {"section_ratio", c.section_ratio},
          {"total_energy_savings", c.total_energy_savings}};
}

inline void write_report(const Json& doc, const std::string& path) { write_file(path, doc.dump(2) + "\n"); }

inline Json read_report(const std::string& path) { return parse_json_text(read_file(path), "report '" + path + "'"); }

}  // namespace sws

#endif  // SWS_IO_HPP
