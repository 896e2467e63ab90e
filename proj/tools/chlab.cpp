// Command-line driver: `chlab run --config <path> [--experiments e1,e2] [--out dir] [--workers N] [--resolution-x2]`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chlab/config.hpp"
#include "chlab/runner.hpp"

namespace {

constexpr const char* kOutputEnv = "CHLAB_OUTPUT_DIR";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chlab::Error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camassa-Holm non-uniform dependence laboratory"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run experiments and write CSV, plot and summary files");
  std::string config_path;
  std::string experiments;
  std::string out_dir;
  unsigned workers = 0;
  bool resolution_x2 = false;
  bool print_config = false;
  run_cmd->add_option("--config", config_path, "key = value configuration file")->required();
  run_cmd->add_option("--experiments", experiments, "comma list of e1..e5, or all");
  run_cmd->add_option("--out", out_dir, std::string("output directory (falls back to $") + kOutputEnv + ")");
  run_cmd->add_option("--workers", workers, "worker threads; 0 uses available parallelism");
  run_cmd->add_flag("--resolution-x2", resolution_x2, "double every grid (resolution robustness rerun)");
  run_cmd->add_flag("--print-config", print_config, "print the effective configuration and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    chlab::RunConfig cfg = chlab::parse_config(read_file(config_path));
    if (!experiments.empty()) cfg.experiments = chlab::parse_experiment_list(experiments);
    if (!out_dir.empty()) {
      cfg.output_dir = out_dir;
    } else if (const char* env = std::getenv(kOutputEnv); env && *env) {
      cfg.output_dir = env;
    }
    if (run_cmd->count("--workers")) cfg.workers = workers;
    if (resolution_x2) cfg.ladder.resolution *= 2;
    chlab::validate(cfg);

    if (print_config) {
      std::cout << chlab::serialize_config(cfg);
      return 0;
    }
    const auto result = chlab::run(cfg, std::cerr);
    std::size_t passed = 0;
    for (const auto& v : result.verdicts) passed += v.pass ? 1 : 0;
    std::cout << passed << "/" << result.verdicts.size() << " verdicts pass"
              << (result.complete ? "" : " (run incomplete: " + result.error + ")") << '\n';
    return result.exit_status;
  } catch (const chlab::Error& e) {
    std::cerr << "chlab: " << e.what() << '\n';
    return 2;
  }
}
