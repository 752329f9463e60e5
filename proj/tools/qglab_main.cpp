#include <iostream>

#include <CLI11.hpp>

#include "qglab/commands.hpp"
#include "qglab/errors.hpp"
#include "qglab/parallel.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qglab: quantum ergodicity experiments on regular quantum graphs"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::optional<int> grid_n, threads;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Configuration file (section.key = value lines)");
    cmd->add_option("--out", out_dir, "Output directory for CSV artifacts");
    cmd->add_option("--grid-n", grid_n, "Override run.grid_n");
    cmd->add_option("--seed", seed, "Override graph.seed");
    cmd->add_option("--threads", threads, "Override run.threads");
  };
  auto* bands = app.add_subcommand("bands", "Band edges, Dirichlet points and limit densities of the tree");
  auto* spectrum = app.add_subcommand("spectrum", "Band eigenpairs of one finite graph");
  auto* sweep = app.add_subcommand("sweep", "Quantum variance over a sequence of graph sizes");
  auto* validate = app.add_subcommand("validate", "Identity suite with pass/fail report");
  for (auto* cmd : {bands, spectrum, sweep, validate}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    qglab::ExperimentConfig cfg = config_path.empty() ? qglab::parse_config("") : qglab::load_config(config_path);
    if (grid_n) cfg.grid_n = *grid_n;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    cfg.validate();
    qglab::set_thread_count(cfg.threads);

    if (bands->parsed()) return qglab::cmd_bands(cfg, out_dir, std::cout);
    if (spectrum->parsed()) return qglab::cmd_spectrum(cfg, out_dir, std::cout);
    if (sweep->parsed()) return qglab::cmd_sweep(cfg, out_dir, std::cout);
    return qglab::cmd_validate(cfg, out_dir, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qglab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}
