// foloc: forced-oscillation source location from node angular-speed series.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "foloc/error.hpp"
#include "foloc/experiment.hpp"
#include "foloc/io.hpp"

namespace fs = std::filesystem;
using namespace foloc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_numerical = 2;
constexpr int exit_no_source = 3;

struct CommonOptions {
  std::string config;
  std::optional<double> coupling;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario;
  std::optional<std::string> out;
  std::optional<std::size_t> source_node;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--K", o.coupling, "homogeneous coupling on every line");
  cmd->add_option("--sigma", o.sigma, "noise standard deviation");
  cmd->add_option("--seed", o.seed, "run a single seed");
  cmd->add_option("--scenario", o.scenario, "single | resonance | multi | custom");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--source-node", o.source_node, "pin the (first) source node");
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
}

ExperimentSpec resolve_spec(const CommonOptions& o) {
  ExperimentSpec spec = o.config.empty() ? ExperimentSpec{} : parse_experiment_spec(read_text_file(o.config));
  if (o.coupling) spec.grid.coupling = *o.coupling;
  if (o.sigma) spec.scenario.base.sigma = *o.sigma;
  if (o.seed) spec.seeds = {*o.seed};
  if (o.scenario) spec.scenario.kind = parse_scenario_kind(*o.scenario);
  if (o.out) spec.output_dir = *o.out;
  if (o.source_node) spec.scenario.source_node = *o.source_node;
  if (o.workers) spec.workers = *o.workers;
  spec.validate();
  return spec;
}

struct Prepared {
  PreparedGrid grid;
  Scenario scenario;
};

Prepared prepare(const ExperimentSpec& spec) {
  auto grid = prepare_grid(spec.grid);
  auto scenario = build_scenario(spec.scenario.kind, grid, spec.scenario.base.seed, spec.scenario);
  return {std::move(grid), std::move(scenario)};
}

Trajectory simulate_first_seed(const ExperimentSpec& spec, const Prepared& p) {
  ScenarioConfig cfg = p.scenario.config;
  cfg.seed = derive_seed(p.scenario.config.seed, spec.seeds.front(), 0, 0);
  return simulate(p.grid.model, p.grid.state, cfg);
}

void print_sources(const Scenario& s) {
  std::cout << "sources:";
  for (const auto& src : s.config.sources) std::cout << ' ' << src.node << '@' << src.f << "Hz";
  if (s.resonator) std::cout << "  resonator: " << *s.resonator;
  std::cout << '\n';
}

int cmd_simulate(const CommonOptions& o) {
  const auto spec = resolve_spec(o);
  const auto p = prepare(spec);
  const auto traj = simulate_first_seed(spec, p);
  const fs::path dir = spec.output_dir;
  write_trajectory_csv(dir / "trajectory.csv", traj);
  ScenarioConfig cfg = p.scenario.config;
  cfg.seed = derive_seed(p.scenario.config.seed, spec.seeds.front(), 0, 0);
  write_text_file(dir / "scenario.json", scenario_to_json(cfg));
  write_manifest(dir, {"trajectory.csv", "scenario.json"}, spec);
  print_sources(p.scenario);
  std::cout << "wrote " << (dir / "trajectory.csv").string() << '\n';
  return exit_ok;
}

int cmd_mecf(const CommonOptions& o, const std::string& input, std::vector<std::size_t> nodes) {
  const auto spec = resolve_spec(o);
  Trajectory traj;
  if (!input.empty()) {
    traj = read_trajectory_csv(input);
  } else {
    const auto p = prepare(spec);
    traj = simulate_first_seed(spec, p);
    if (nodes.empty()) {
      for (const auto& s : p.scenario.config.sources) nodes.push_back(s.node);
    }
  }
  const auto fields = assemble_fields(traj.omega, spec.mecf, spec.workers);
  const fs::path dir = spec.output_dir;
  std::vector<std::string> artifacts;
  for (auto node : nodes) {
    if (node >= fields.size()) throw InvalidInput("--node " + std::to_string(node) + " out of range");
    const auto stem = "fields/field_" + std::to_string(node);
    write_field_csv(dir / (stem + ".csv"), fields[node]);
    write_text_file(dir / (stem + ".json"), field_sidecar_json(fields[node], node));
    artifacts.push_back(stem + ".csv");
    artifacts.push_back(stem + ".json");
  }
  write_distance_csv(dir / "distances.csv", field_distance_matrix(fields, spec.workers));
  artifacts.push_back("distances.csv");
  write_manifest(dir, artifacts, spec);
  std::cout << "d_max " << fields.front().d_max() << ", " << fields.size() << " fields, wrote "
            << (dir / "distances.csv").string() << '\n';
  return exit_ok;
}

int cmd_locate(const CommonOptions& o, const std::string& distances) {
  const auto spec = resolve_spec(o);
  LocatorOptions opts = spec.locator;
  opts.tsne.seed = spec.seeds.front();
  LocationReport report;
  if (!distances.empty()) {
    report = locate_from_field_distances(read_distance_csv(distances), opts);
  } else {
    const auto p = prepare(spec);
    print_sources(p.scenario);
    report = run_seed(p.grid, p.scenario, spec.mecf, spec.locator,
                      derive_seed(p.scenario.config.seed, spec.seeds.front(), 0, 0),
                      spec.seeds.front(), spec.workers)
                 .report;
  }
  const fs::path dir = spec.output_dir;
  write_embedding_csv(dir / "embedding.csv", report.embedding);
  write_text_file(dir / "report.json", location_report_to_json(report, opts));
  write_manifest(dir, {"embedding.csv", "report.json"}, spec);
  std::cout << "threshold " << report.threshold << ", outliers:";
  for (auto n : report.outliers) std::cout << ' ' << n;
  std::cout << '\n';
  return report.outliers.empty() ? exit_no_source : exit_ok;
}

int cmd_experiment(const CommonOptions& o) {
  const auto spec = resolve_spec(o);
  const auto p = prepare(spec);
  print_sources(p.scenario);
  const auto result = run_experiment(spec, p.grid, p.scenario);
  write_experiment_artifacts(spec, result);
  for (const auto& r : result.runs) {
    std::cout << "seed " << r.seed << ": outliers";
    for (auto n : r.report.outliers) std::cout << ' ' << n;
    std::cout << (r.exact ? "  (exact)" : "") << '\n';
  }
  std::cout << "majority:";
  for (auto n : result.majority_outliers) std::cout << ' ' << n;
  std::cout << "\nwrote " << (fs::path(spec.output_dir) / "report.json").string() << '\n';
  return result.majority_outliers.empty() ? exit_no_source : exit_ok;
}

int cmd_sweep(const CommonOptions& o) {
  auto spec = resolve_spec(o);
  std::vector<double> ks = spec.sweep_k, sigmas = spec.sweep_sigma;
  if (o.coupling) ks = {*o.coupling};
  if (o.sigma) sigmas = {*o.sigma};
  const auto result = run_sweep(spec, ks, sigmas);
  const fs::path dir = spec.output_dir;
  write_text_file(dir / "sweep.csv", sweep_csv(result));
  write_text_file(dir / "sweep.json", sweep_json(result));
  write_manifest(dir, {"sweep.csv", "sweep.json"}, spec);
  std::cout << sweep_csv(result);
  return exit_ok;
}

int cmd_fourier(const CommonOptions& o) {
  const auto spec = resolve_spec(o);
  const auto p = prepare(spec);
  print_sources(p.scenario);
  const auto base = run_fourier_baseline(spec, p.grid, p.scenario);
  const fs::path dir = spec.output_dir;
  write_spectra_csv(dir / "spectra.csv", base.spectra);
  write_text_file(dir / "fourier.json", fourier_verdict_to_json(base.verdict));
  write_manifest(dir, {"spectra.csv", "fourier.json"}, spec);
  std::cout << "candidates:";
  for (auto n : base.verdict.candidates) std::cout << ' ' << n;
  std::cout << (base.verdict.ambiguous ? "  (ambiguous)" : "") << '\n';
  return base.verdict.candidates.empty() ? exit_no_source : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forced-oscillation source location on oscillator-network grids"};
  app.require_subcommand(1);

  CommonOptions sim_o, mecf_o, loc_o, exp_o, sweep_o, fft_o;
  std::string mecf_input, loc_distances;
  std::vector<std::size_t> mecf_nodes;

  auto* sim = app.add_subcommand("simulate", "simulate the first seed and write the omega trajectory");
  add_common(sim, sim_o);
  auto* mecf = app.add_subcommand("mecf", "build per-node fields and their distance matrix");
  add_common(mecf, mecf_o);
  mecf->add_option("--input", mecf_input, "trajectory CSV (default: simulate)")->check(CLI::ExistingFile);
  mecf->add_option("--node", mecf_nodes, "export the field of these nodes");
  auto* loc = app.add_subcommand("locate", "embed and flag outliers for one seed");
  add_common(loc, loc_o);
  loc->add_option("--distances", loc_distances, "distance CSV from `mecf` (default: full pipeline)")
      ->check(CLI::ExistingFile);
  auto* exp = app.add_subcommand("experiment", "all seeds, artifacts and majority vote");
  add_common(exp, exp_o);
  auto* sweep = app.add_subcommand("sweep", "K x sigma robustness grid");
  add_common(sweep, sweep_o);
  auto* fft = app.add_subcommand("fourier", "spectral peak-picking baseline");
  add_common(fft, fft_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*sim) return cmd_simulate(sim_o);
    if (*mecf) return cmd_mecf(mecf_o, mecf_input, mecf_nodes);
    if (*loc) return cmd_locate(loc_o, loc_distances);
    if (*exp) return cmd_experiment(exp_o);
    if (*sweep) return cmd_sweep(sweep_o);
    if (*fft) return cmd_fourier(fft_o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_invalid;
}
