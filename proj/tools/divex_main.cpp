#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "divex/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Diversity-driven selection of exploration strategies"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir = "out";
  std::string format = "csv";
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("--config", config_file, "JSON experiment configuration")
      ->required()
      ->check(CLI::ExistingFile);
  auto* seed_opt =
      run->add_option("--seed", seed, "Override the configured master seed");
  run->add_option("--out", out_dir, "Output directory")
      ->capture_default_str();
  run->add_option("--format", format, "Summary flavour")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json", "plotdata"}));

  std::vector<double> d_list;
  std::vector<double> p_grid;
  int reps = 0;
  std::string sweep_out = "out";
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate fixed mixtures and the adaptive selector");
  sweep_cmd->add_option("--config", config_file, "JSON experiment configuration")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd
      ->add_option("--d", d_list, "Goal-babbling perturbation ratios to sweep")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--p-grid", p_grid, "Fixed mixture probabilities")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--reps", reps, "Override the configured repetitions");
  sweep_cmd->add_option("--out", sweep_out, "Output directory")
      ->capture_default_str();

  std::string in_dir;
  std::string report_out;
  auto* report_cmd = app.add_subcommand(
      "report", "Rebuild summary tables and plot data from a run directory");
  report_cmd->add_option("--in", in_dir, "Directory written by `run`")
      ->required()
      ->check(CLI::ExistingDirectory);
  report_cmd->add_option("--out", report_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      divex::ExperimentConfig cfg = divex::load_experiment(config_file);
      if (seed_opt->count() > 0) cfg.master_seed = seed;
      divex::run_and_emit(cfg, out_dir, divex::parse_report_format(format));
    } else if (sweep_cmd->parsed()) {
      const divex::ExperimentConfig cfg = divex::load_experiment(config_file);
      divex::SweepSpec spec;
      spec.d_values = d_list;
      spec.p_grid = p_grid;
      spec.repetitions = reps;
      divex::sweep_and_emit(cfg, spec, sweep_out);
    } else {
      divex::report_directory(in_dir, report_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
