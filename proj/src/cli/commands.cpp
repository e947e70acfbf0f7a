#include "hoqc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hoqc::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
  const fs::path path = cfg.output_dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(10);
  return out;
}

void write_json(const RunConfig& cfg, const std::string& name, const json& doc) {
  std::ofstream out = open_output(cfg, name);
  out << doc.dump(2) << '\n';
}

void row(std::ostream& log, const std::string& name, double value, const std::string& unit) {
  log << "  " << std::left << std::setw(26) << name << std::right << std::setw(14)
      << std::setprecision(6) << value << "  " << unit << '\n';
}

}  // namespace

RunConfig resolve_config(const CommandOptions& options) {
  RunConfig cfg = options.config ? load_run_config(*options.config) : RunConfig{};
  if (options.out) cfg.output_dir = *options.out;
  if (options.seed) {
    cfg.loading.seed = *options.seed;
    cfg.reg.seed = *options.seed;
  }
  if (options.threads) cfg.loading.threads = *options.threads;
  if (options.dim) cfg.scaling.dim = *options.dim;
  cfg.validate();
  return cfg;
}

json cmd_scaling(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const ArchitectureReport r = architecture_report(cfg.scaling, cfg.ensemble);
  ScalingParams p2 = cfg.scaling;
  p2.dim = 2;
  ScalingParams p3 = cfg.scaling;
  p3.dim = 3;

  json doc;
  doc["inputs"] = {{"n", cfg.scaling.n},
                   {"k_delta", cfg.scaling.k_delta},
                   {"k1", cfg.scaling.k1},
                   {"tau0_s", cfg.scaling.tau0},
                   {"error_target", cfg.scaling.error_target},
                   {"dim", cfg.scaling.dim},
                   {"atoms", cfg.ensemble.atoms},
                   {"filling", cfg.ensemble.filling},
                   {"d_min_ensemble_m", cfg.ensemble.d_min},
                   {"site_pitch_m", cfg.ensemble.site_pitch},
                   {"register_size", cfg.ensemble.register_size}};
  doc["single_atom"] = {
      {"n_max_2d", n_max_closed_form(p2)},
      {"n_max_2d_continuous", n_max_closed_form_continuous(p2)},
      {"n_max_3d", n_max_closed_form(p3)},
      {"n_max_3d_continuous", n_max_closed_form_continuous(p3)},
      {"n_max_selected", n_max_closed_form(cfg.scaling)},
  };
  doc["intermediate"] = {{"c6_J_m6", r.c6.value},
                         {"tau_s", r.tau.value},
                         {"optimal_interaction_rad_s", r.optimal_interaction.value},
                         {"r_max_m", r.r_max.value},
                         {"d_min_m", r.d_min.value},
                         {"ensemble_diameter_m", r.ensemble_diameter.value},
                         {"array_side_m", r.array_side.value},
                         {"k1_eff", r.k1_eff}};
  doc["ensemble"] = {{"dim", r.dim},
                     {"sites_continuous", r.sites_continuous},
                     {"n_sites", r.n_sites},
                     {"register_size", r.register_size},
                     {"qubits_total", r.qubits_total}};
  write_json(cfg, "scaling_report.json", doc);

  log << "Rydberg-gate scaling (n = " << cfg.scaling.n << ", E = " << cfg.scaling.error_target
      << ", dim = " << cfg.scaling.dim << ")\n";
  row(log, "c6", r.c6.value, "J m^6");
  row(log, "tau", r.tau.in(Unit::kMicrosecond), "us");
  row(log, "optimal_interaction", r.optimal_interaction.value, "rad/s");
  row(log, "r_max", r.r_max.in(Unit::kMicrometer), "um");
  row(log, "d_min", r.d_min.in(Unit::kMicrometer), "um");
  row(log, "n_max_2d", static_cast<double>(n_max_closed_form(p2)), "atoms");
  row(log, "n_max_3d", static_cast<double>(n_max_closed_form(p3)), "atoms");
  row(log, "ensemble_diameter", r.ensemble_diameter.in(Unit::kMicrometer), "um");
  row(log, "site_pitch", r.site_pitch.in(Unit::kMicrometer), "um");
  row(log, "n_sites", static_cast<double>(r.n_sites), "sites");
  row(log, "register_size", static_cast<double>(r.register_size), "qubits/site");
  row(log, "qubits_total", static_cast<double>(r.qubits_total), "qubits");
  return doc;
}

void cmd_structure(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const HyperfineConfig& hf = cfg.hyperfine;
  const RegisterMap map = build_register_map();
  const Quantity field{cfg.structure.field_g, Unit::kGauss};

  {
    std::ofstream out = open_output(cfg, "register_map.csv");
    out << "bit,zero_F,zero_m,one_F,one_m,splitting_GHz,differential_shift_MHz\n";
    for (const QubitAssignment& q : map.qubits) {
      out << q.index << ',' << q.zero.f << ',' << q.zero.m << ',' << q.one.f << ',' << q.one.m
          << ',' << qubit_splitting(map, q.index, hf, field).value << ','
          << qubit_differential_shift(map, q.index, hf, field).value << '\n';
    }
  }
  {
    std::ofstream out = open_output(cfg, "g_factors.csv");
    out << "F,g_F,hyperfine_energy_MHz\n";
    for (int f = hf.f_min(); f <= hf.f_max(); ++f) {
      out << f << ',' << lande_gf(hf, f) << ',' << hyperfine_energy(hf, f).value << '\n';
    }
  }
  {
    std::ofstream out = open_output(cfg, "splittings.csv");
    out << "F_low,F_high,splitting_GHz\n";
    for (int f = hf.f_min(); f < hf.f_max(); ++f) {
      const double ghz = (hyperfine_energy(hf, f + 1).value - hyperfine_energy(hf, f).value) / 1e3;
      out << f << ',' << f + 1 << ',' << ghz << '\n';
    }
  }
  {
    std::ofstream out = open_output(cfg, "selectivity_vs_B.csv");
    out << "field_G,rotation_F5_kHz,rotation_F7_kHz,rotation_F9_kHz,rotation_F11_kHz,"
           "shelving_worst_MHz\n";
    const long steps = std::lround(std::floor(cfg.structure.field_max_g / cfg.structure.field_step_g));
    for (long k = 0; k <= steps; ++k) {
      const Quantity b{static_cast<double>(k) * cfg.structure.field_step_g, Unit::kGauss};
      out << b.value;
      for (int f : {5, 7, 9, 11}) out << ',' << rotation_selectivity(hf, f, b).value;
      out << ',' << worst_shelving_selectivity(hf, b).value << '\n';
    }
  }
  {
    std::ofstream out = open_output(cfg, "transitions.csv");
    write_catalog_csv(out, default_transition_catalog());
  }

  log << "Holmium ground-state structure (I = " << hf.nuclear_spin << ", J = " << hf.electronic_j
      << ")\n";
  for (int f = hf.f_min(); f <= hf.f_max(); ++f) row(log, "g_F(F=" + std::to_string(f) + ")", lande_gf(hf, f), "");
  row(log, "rotation_selectivity_F11", rotation_selectivity(hf, 11, {1.0, Unit::kGauss}).value, "kHz/G");
  row(log, "register_bits", map.size(), "bits");
  log << "  wrote register_map.csv, g_factors.csv, splittings.csv, selectivity_vs_B.csv, "
         "transitions.csv to "
      << cfg.output_dir.string() << '\n';
}

TrapSpectrum cmd_trap(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path table_path = cfg.level_table_path.empty() ? default_level_table() : cfg.level_table_path;
  const LevelTable levels = load_levels(table_path);
  std::vector<double> grid;
  const TrapScan& scan = cfg.trap;
  const long steps = std::lround(std::floor((scan.scan_max_cm1 - scan.scan_min_cm1) / scan.scan_step_cm1 + 1e-9));
  for (long k = 0; k <= steps; ++k) grid.push_back(scan.scan_min_cm1 + static_cast<double>(k) * scan.scan_step_cm1);

  SpectrumOptions options;
  options.min_detuning_cm1 = scan.min_detuning_cm1;
  const TrapSpectrum spectrum = trap_spectrum(levels, scan.beam, grid, options);
  {
    std::ofstream out = open_output(cfg, "trap_spectrum.csv");
    write_spectrum_csv(out, spectrum);
  }

  long flagged = 0;
  for (const SpectrumPoint& p : spectrum.points) flagged += p.flag.empty() ? 0 : 1;
  log << "Dipole trap spectrum from " << table_path.string() << '\n';
  row(log, "levels_used", spectrum.levels_used, "levels");
  row(log, "grid_points", static_cast<double>(spectrum.points.size()), "points");
  row(log, "flagged_points", static_cast<double>(flagged), "points");
  row(log, "peak_intensity", peak_intensity(scan.beam).value, "W/m^2");
  for (const std::string& w : levels.warnings) log << "  warning: " << w << '\n';
  for (const std::string& w : spectrum.coverage_warnings) log << "  warning: " << w << '\n';
  return spectrum;
}

json cmd_register(const RunConfig& cfg, const fs::path& script, std::ostream& log) {
  cfg.validate();
  std::ifstream in(script);
  if (!in) throw std::runtime_error("script file not found: " + script.string());
  std::ostringstream text;
  text << in.rdbuf();

  ScriptContext ctx;
  ctx.timing = cfg.reg.timing;
  ctx.timing.hyperfine = cfg.hyperfine;
  ctx.phase_error_target = cfg.reg.phase_error_target;
  ctx.seed = cfg.reg.seed;
  ctx.default_budget = cfg.reg.timing.atoms;
  const ScriptRun run = run_script(parse_script(text.str()), ctx);

  {
    std::ofstream out = open_output(cfg, "register_trace.jsonl");
    for (const json& rec : run.trace) out << rec.dump() << '\n';
  }
  json report{{"operations", run.trace.size()}, {"seed", cfg.reg.seed}};
  report["final_state"] = run.final_state ? state_summary(*run.final_state) : json(nullptr);
  write_json(cfg, "register_report.json", report);

  log << "Register script " << script.string() << ": " << run.trace.size() << " operations\n";
  for (const json& rec : run.trace) {
    if (rec.at("op") == "measure") {
      log << "  line " << rec.at("line").get<int>() << ": measure bit " << rec.at("bit").get<int>()
          << " -> " << rec.at("outcome").get<int>() << '\n';
    }
  }
  return report;
}

LoadingStats cmd_loading(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const LoadingStats s = simulate_loading(cfg.loading);
  const double lambda = s.filling;
  const double p_kept = cfg.loading.purge == PurgeModel::kPairLoss
                            ? lambda * std::exp(-lambda)
                            : 0.5 * (1.0 - std::exp(-2.0 * lambda));

  json doc{{"purge", cfg.loading.purge == PurgeModel::kPairLoss ? "pair_loss" : "odd_survivor"},
           {"seed", cfg.loading.seed},
           {"trials", s.trials},
           {"filling", lambda},
           {"lattice_density_m3", lattice_density({cfg.loading.lattice_period, Unit::kMeter}).value},
           {"lattice_sites", s.lattice_sites},
           {"sites_in_sphere", s.sites_in_sphere},
           {"mean_K", s.mean_k},
           {"std_K", s.std_k},
           {"mean_K_prepurge", s.mean_k_prepurge},
           {"std_K_prepurge", s.std_k_prepurge},
           {"analytic_mean_K", p_kept * static_cast<double>(s.sites_in_sphere)},
           {"multi_occupancy_fraction", s.multi_occupancy_fraction},
           {"double_occupancy_prob", double_occupancy_prob(lambda)},
           {"occupancy_histogram", s.occupancy_histogram},
           {"rabi_spread_per_qubit", s.rabi_spread_per_qubit}};
  write_json(cfg, "loading_stats.json", doc);
  {
    std::ofstream out = open_output(cfg, "k_histogram.csv");
    write_k_histogram_csv(out, s);
  }

  log << "Ensemble loading, " << s.trials << " trials\n";
  row(log, "filling", lambda, "atoms/site");
  row(log, "sites_in_sphere", static_cast<double>(s.sites_in_sphere), "sites");
  row(log, "mean_K", s.mean_k, "atoms");
  row(log, "std_K", s.std_k, "atoms");
  row(log, "mean_K_prepurge", s.mean_k_prepurge, "atoms");
  row(log, "multi_occupancy_fraction", s.multi_occupancy_fraction, "");
  return s;
}

}  // namespace hoqc::cli
