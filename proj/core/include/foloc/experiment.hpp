#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foloc/fourier.hpp"
#include "foloc/grid_model.hpp"
#include "foloc/locator.hpp"
#include "foloc/mecf.hpp"
#include "foloc/simulator.hpp"
#include "foloc/topology.hpp"

namespace foloc {

enum class ScenarioKind { single, resonance, multi, custom };

ScenarioKind parse_scenario_kind(std::string_view name);
std::string_view to_string(ScenarioKind kind);

/// Where the grid comes from. Generated grids use `coupling` on every line;
/// for file topologies a set `coupling` overrides every line (homogeneous K).
struct GridSpec {
  std::optional<std::filesystem::path> topology_file;
  TopologyKind kind = TopologyKind::rewired_lattice;
  std::size_t nodes = 120;
  std::size_t edges = 165;
  std::uint64_t topology_seed = 7;
  std::optional<double> coupling = 15.0;
  std::optional<std::filesystem::path> params_file;
  std::uint64_t params_seed = 1;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::single;
  /// Scenario template: sigma, duration, dt, seed, model/noise switches, and
  /// for the custom kind the explicit sources.
  ScenarioConfig base;
  double gamma = 1.0;
  /// Pins the (first) source node instead of drawing it.
  std::optional<std::size_t> source_node;
};

struct ExperimentSpec {
  GridSpec grid;
  ScenarioSpec scenario;
  MECFParams mecf;
  LocatorOptions locator;
  double dominance_ratio = 2.0;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> sweep_k{15, 18, 21, 24, 27, 30};
  std::vector<double> sweep_sigma{0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::filesystem::path output_dir = "foloc-out";
  std::size_t workers = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

/// Parses the experiment configuration document; absent keys keep defaults.
ExperimentSpec parse_experiment_spec(std::string_view json_text);
/// Resolved configuration, suitable for embedding in a manifest.
std::string experiment_spec_to_json(const ExperimentSpec& spec, int indent = 2);

/// Model with solved equilibrium plus its linearization and modes.
struct PreparedGrid {
  GridModel model;
  StateMatrix state;
  ModalStructure modes;
};

PreparedGrid prepare_grid(const GridModel& model);
PreparedGrid prepare_grid(const GridSpec& spec);

/**
 * omega-amplitude response matrix at frequency f: column s is the steady
 * omega response of every node to a unit drive on node s's omega row.
 * Requires the structural [0 I] upper blocks.
 */
Eigen::MatrixXcd omega_response_matrix(const StateMatrix& state, double f);

struct Scenario {
  ScenarioKind kind = ScenarioKind::single;
  ScenarioConfig config;
  std::optional<std::size_t> resonator;
  double resonance_ratio = 0.0;  ///< predicted |omega_resonator| / |omega_source|
};

/**
 * Scenario construction on a prepared grid.
 *
 *  - single: one source at f = 0.5 Hz on a seeded non-leaf, non-articulation node.
 *  - multi: two non-adjacent such nodes driven at 0.2 Hz and 0.4 Hz.
 *  - resonance: a (source, mode) pair whose mode is dominated by a node at
 *    least three hops from the source, driven at that mode's frequency
 *    (0.1 to 2 Hz). The pair whose predicted resonator/source omega amplitude
 *    ratio is closest to 1 wins. Throws InvalidInput("no qualifying mode")
 *    when none exists.
 *  - custom: the sources listed in the template.
 */
Scenario build_scenario(ScenarioKind kind, const PreparedGrid& grid, std::uint64_t seed,
                        const ScenarioSpec& settings);

struct SeedOutcome {
  std::uint64_t seed = 0;
  LocationReport report;
  std::size_t degenerate_pairs = 0;
  bool all_sources_flagged = false;
  bool exact = false;  ///< outliers == sources
  bool resonator_flagged = false;
};

struct ExperimentResult {
  Scenario scenario;
  std::vector<SeedOutcome> runs;
  std::vector<std::size_t> majority_outliers;  ///< flagged in more than half the seeds
  std::size_t d_max = 0;
  Trajectory first_trajectory;  ///< kept for artifact export
};

/// Noise and t-SNE stream for one seed of one run.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Simulate -> fields -> distances -> t-SNE -> Chebyshev rule, one seed.
SeedOutcome run_seed(const PreparedGrid& grid, const Scenario& scenario, const MECFParams& mecf,
                     const LocatorOptions& locator, std::uint64_t noise_seed,
                     std::uint64_t tsne_seed, std::size_t workers = 0,
                     Trajectory* trajectory_out = nullptr);

/// Full experiment, in memory. Each seed drives both the noise and t-SNE.
ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec, const PreparedGrid& grid,
                                const Scenario& scenario);

std::string experiment_report_json(const ExperimentSpec& spec, const ExperimentResult& result);

/// manifest.json in `dir`: artifact paths relative to `dir` plus the resolved config.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& artifacts,
                    const ExperimentSpec& spec);

/// Writes trajectory, source fields + sidecars, per-seed embeddings and
/// reports, the summary report, and manifest.json into spec.output_dir.
void write_experiment_artifacts(const ExperimentSpec& spec, const ExperimentResult& result);

struct SweepCell {
  double coupling = 0.0;
  double sigma = 0.0;
  std::vector<bool> located;            ///< every source flagged, per seed
  std::vector<bool> resonator_flagged;  ///< per seed (resonance scenario)
  bool majority = false;
  double success_rate = 0.0;
  std::string error;  ///< non-empty when the cell failed
};

struct SweepResult {
  ScenarioKind kind = ScenarioKind::single;
  std::vector<double> k_values;
  std::vector<double> sigma_values;
  std::vector<SweepCell> cells;  ///< row-major: k index, then sigma index
  std::vector<std::size_t> sources;
  std::optional<std::size_t> resonator;

  const SweepCell& cell(std::size_t k_index, std::size_t sigma_index) const {
    return cells.at(k_index * sigma_values.size() + sigma_index);
  }
};

/**
 * Robustness sweep over homogeneous coupling and noise. The scenario is built
 * once on the configured grid; each cell rebuilds the grid with its K and
 * reruns every seed. Cell failures are recorded, never propagated.
 */
SweepResult run_sweep(const ExperimentSpec& spec, const std::vector<double>& k_values,
                      const std::vector<double>& sigma_values);

/// CSV `K,sigma,success_rate,majority,resonator_flag_rate,error`.
std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);

struct FourierBaseline {
  Scenario scenario;
  SpectrumSet spectra;
  FourierVerdict verdict;
};

/// One simulation (first seed) and the spectral peak-picking verdict.
FourierBaseline run_fourier_baseline(const ExperimentSpec& spec);
FourierBaseline run_fourier_baseline(const ExperimentSpec& spec, const PreparedGrid& grid,
                                     const Scenario& scenario);

}  // namespace foloc
