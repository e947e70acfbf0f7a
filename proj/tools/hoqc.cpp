#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hoqc/cli/commands.hpp"

namespace {

using hoqc::cli::CommandOptions;

void add_common(CLI::App* sub, CommandOptions& opt, std::string& config, std::string& out) {
  sub->add_option("--config", config, "JSON run configuration");
  sub->add_option("--out", out, "output directory");
  sub->add_option("--seed", opt.seed, "RNG seed");
  sub->add_option("--threads", opt.threads, "worker threads for loading")->check(CLI::PositiveNumber);
  sub->add_option("--dim", opt.dim, "lattice dimension")->check(CLI::IsMember({2, 3}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaling, structure, trap, register and loading models for a holmium "
               "ensemble quantum processor"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::string config;
  std::string out;
  std::string script;

  CLI::App* scaling = app.add_subcommand("scaling", "gate range and connected-site budgets");
  CLI::App* structure = app.add_subcommand("structure", "hyperfine, Zeeman and register tables");
  CLI::App* trap = app.add_subcommand("trap", "dipole trap depth and scattering spectrum");
  CLI::App* reg = app.add_subcommand("register", "run a register script");
  CLI::App* loading = app.add_subcommand("loading", "Monte Carlo ensemble loading");
  for (CLI::App* sub : {scaling, structure, trap, reg, loading}) add_common(sub, opt, config, out);
  reg->add_option("--script", script, "register script")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config.empty()) opt.config = config;
    if (!out.empty()) opt.out = out;
    const hoqc::cli::RunConfig cfg = hoqc::cli::resolve_config(opt);
    if (scaling->parsed()) {
      hoqc::cli::cmd_scaling(cfg, std::cout);
    } else if (structure->parsed()) {
      hoqc::cli::cmd_structure(cfg, std::cout);
    } else if (trap->parsed()) {
      hoqc::cli::cmd_trap(cfg, std::cout);
    } else if (reg->parsed()) {
      hoqc::cli::cmd_register(cfg, script, std::cout);
    } else if (loading->parsed()) {
      hoqc::cli::cmd_loading(cfg, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "hoqc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
