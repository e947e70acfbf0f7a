#include "hoqc/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace hoqc::cli {

namespace {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("config: " + path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  void number(const std::string& key, double& out, double scale = 1.0) {
    if (!take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    out = v.get<double>() * scale;
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (!take(key)) return;
    const json& v = node_.at(key);
    if (v.is_number_unsigned() || v.is_number_integer()) {
      if constexpr (std::is_unsigned_v<Int>) {
        if (v.is_number_integer() && !v.is_number_unsigned()) fail(key, "must be non-negative");
      }
      out = v.get<Int>();
      return;
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && (!std::is_unsigned_v<Int> || d >= 0.0)) {
        out = static_cast<Int>(d);
        return;
      }
    }
    fail(key, "expected an integer");
  }

  void string(const std::string& key, std::string& out) {
    if (!take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    out = v.get<std::string>();
  }

  Section child(const std::string& key) {
    take(key);
    return Section(node_.at(key), qualified(key));
  }

  void finish() const {
    for (const auto& item : node_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw ConfigError("config: unknown key '" + qualified(item.key()) + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("config: " + qualified(key) + ": " + what);
  }

 private:
  bool take(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }
  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void checked(const std::string& section, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config: " + section + ": " + e.what());
  }
}

}  // namespace

std::filesystem::path default_level_table() {
  return std::filesystem::path(HOQC_DATA_DIR) / "ho_levels.csv";
}

void RunConfig::validate() const {
  checked("scaling", [&] { scaling.validate(); });
  checked("ensemble", [&] { ensemble.validate(); });
  checked("hyperfine", [&] { hyperfine.validate(); });
  checked("trap", [&] { trap.beam.validate(); });
  checked("loading", [&] { loading.validate(); });
  if (!(structure.field_max_g > 0.0)) throw ConfigError("config: structure.field_max_G must be positive");
  if (!(structure.field_step_g > 0.0)) throw ConfigError("config: structure.field_step_G must be positive");
  if (!(structure.field_g >= 0.0)) throw ConfigError("config: structure.field_G must be non-negative");
  if (!(trap.scan_step_cm1 > 0.0)) throw ConfigError("config: trap.scan_step_cm1 must be positive");
  if (!(trap.scan_max_cm1 >= trap.scan_min_cm1) || !(trap.scan_min_cm1 > 0.0)) {
    throw ConfigError("config: trap.scan_min_cm1/scan_max_cm1 must satisfy 0 < min <= max");
  }
  if (!(trap.min_detuning_cm1 >= 0.0)) throw ConfigError("config: trap.min_detuning_cm1 must be non-negative");
  if (!(reg.timing.field.value > 0.0)) throw ConfigError("config: register.field_G must be positive");
  if (!(reg.timing.rabi.value > 0.0)) throw ConfigError("config: register.rabi_kHz must be positive");
  if (reg.timing.atoms < 1) throw ConfigError("config: register.atoms must be positive");
  if (!(reg.timing.readout_time.value > 0.0) || !(reg.timing.pump_time.value > 0.0)) {
    throw ConfigError("config: register.readout_us and pump_us must be positive");
  }
  if (!(reg.phase_error_target > 0.0)) throw ConfigError("config: register.phase_error_target must be positive");
  if (!level_table_path.empty() && !std::filesystem::exists(level_table_path)) {
    throw ConfigError("config: trap.level_table: file not found: " + level_table_path.string());
  }
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  Section root(doc, "");

  if (root.has("scaling")) {
    Section s = root.child("scaling");
    s.number("n", cfg.scaling.n);
    s.number("k_delta", cfg.scaling.k_delta);
    s.number("k1", cfg.scaling.k1);
    s.number("tau0_ns", cfg.scaling.tau0, 1e-9);
    s.number("error_target", cfg.scaling.error_target);
    s.integer("dim", cfg.scaling.dim);
    s.finish();
  }
  if (root.has("ensemble")) {
    Section s = root.child("ensemble");
    s.integer("atoms", cfg.ensemble.atoms);
    s.number("filling", cfg.ensemble.filling);
    s.number("d_min_um", cfg.ensemble.d_min, 1e-6);
    s.number("site_pitch_um", cfg.ensemble.site_pitch, 1e-6);
    s.integer("register_size", cfg.ensemble.register_size);
    s.finish();
  }
  if (root.has("hyperfine")) {
    Section s = root.child("hyperfine");
    s.number("A_MHz", cfg.hyperfine.a_constant.value);
    s.number("B_MHz", cfg.hyperfine.b_constant.value);
    s.number("I", cfg.hyperfine.nuclear_spin);
    s.number("J", cfg.hyperfine.electronic_j);
    s.number("L", cfg.hyperfine.orbital_l);
    s.number("S", cfg.hyperfine.spin_s);
    s.finish();
  }
  if (root.has("structure")) {
    Section s = root.child("structure");
    s.number("field_max_G", cfg.structure.field_max_g);
    s.number("field_step_G", cfg.structure.field_step_g);
    s.number("field_G", cfg.structure.field_g);
    s.finish();
  }
  if (root.has("trap")) {
    Section s = root.child("trap");
    std::string table;
    s.string("level_table", table);
    if (!table.empty()) {
      std::filesystem::path p(table);
      cfg.level_table_path = p.is_absolute() ? p : base_dir / p;
    }
    s.number("power_mW", cfg.trap.beam.power.value);
    s.number("waist_um", cfg.trap.beam.waist.value);
    s.number("scan_min_cm1", cfg.trap.scan_min_cm1);
    s.number("scan_max_cm1", cfg.trap.scan_max_cm1);
    s.number("scan_step_cm1", cfg.trap.scan_step_cm1);
    s.number("min_detuning_cm1", cfg.trap.min_detuning_cm1);
    s.finish();
  }
  if (root.has("register")) {
    Section s = root.child("register");
    s.number("field_G", cfg.reg.timing.field.value);
    s.number("rabi_kHz", cfg.reg.timing.rabi.value);
    s.integer("atoms", cfg.reg.timing.atoms);
    s.number("readout_us", cfg.reg.timing.readout_time.value);
    s.number("pump_us", cfg.reg.timing.pump_time.value);
    s.number("phase_error_target", cfg.reg.phase_error_target);
    s.integer("seed", cfg.reg.seed);
    s.finish();
  }
  cfg.reg.timing.hyperfine = cfg.hyperfine;
  if (root.has("loading")) {
    Section s = root.child("loading");
    s.number("lattice_period_um", cfg.loading.lattice_period, 1e-6);
    s.number("atom_density_cm3", cfg.loading.atom_density, 1e6);
    s.number("bottle_diameter_um", cfg.loading.bottle_diameter, 1e-6);
    s.integer("lattice_extent", cfg.loading.lattice_extent);
    s.integer("trials", cfg.loading.trials);
    s.integer("seed", cfg.loading.seed);
    s.integer("threads", cfg.loading.threads);
    s.integer("register_size", cfg.loading.register_size);
    std::string purge = "pair_loss";
    s.string("purge", purge);
    if (purge == "pair_loss") {
      cfg.loading.purge = PurgeModel::kPairLoss;
    } else if (purge == "odd_survivor") {
      cfg.loading.purge = PurgeModel::kOddSurvivor;
    } else {
      s.fail("purge", "expected 'pair_loss' or 'odd_survivor', got '" + purge + "'");
    }
    s.finish();
  }
  std::string out;
  root.string("output_dir", out);
  if (!out.empty()) cfg.output_dir = out;
  root.finish();

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": invalid JSON: " + e.what());
  }
  return parse_run_config(doc, path.parent_path());
}

}  // namespace hoqc::cli
