#include "foloc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "foloc/error.hpp"
#include "foloc/io.hpp"
#include "foloc/parallel.hpp"
#include "json_convert.hpp"

namespace foloc {

using detail::json;

ScenarioKind parse_scenario_kind(std::string_view name) {
  if (name == "single") return ScenarioKind::single;
  if (name == "resonance") return ScenarioKind::resonance;
  if (name == "multi") return ScenarioKind::multi;
  if (name == "custom") return ScenarioKind::custom;
  throw InvalidInput("unknown scenario kind '" + std::string(name) + "'");
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::single: return "single";
    case ScenarioKind::resonance: return "resonance";
    case ScenarioKind::multi: return "multi";
    case ScenarioKind::custom: return "custom";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  if (seeds.empty()) throw InvalidInput("experiment: seeds must be non-empty");
  if (!(dominance_ratio >= 1.0)) throw InvalidInput("experiment: dominance_ratio must be >= 1");
  if (!(locator.threshold_k > 0.0)) throw InvalidInput("experiment: threshold_k must be positive");
  if (locator.tsne.iterations < 1) throw InvalidInput("experiment: t-SNE iterations must be >= 1");
  auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(sweep_k) || !increasing(sweep_sigma)) {
    throw InvalidInput("experiment: sweep grids must be strictly increasing");
  }
  if (scenario.kind == ScenarioKind::custom && scenario.base.sources.empty()) {
    throw InvalidInput("experiment: custom scenario needs explicit sources");
  }
  if (!(scenario.gamma > 0.0)) throw InvalidInput("experiment: gamma must be positive");
}

ExperimentSpec parse_experiment_spec(std::string_view json_text) {
  const json root = detail::parse_json(json_text);
  if (!root.is_object()) throw InvalidInput("experiment config must be a JSON object");
  ExperimentSpec spec;
  try {
    if (root.contains("grid")) {
      const auto& g = root.at("grid");
      if (g.contains("topology")) {
        const auto& t = g.at("topology");
        if (t.contains("file")) {
          spec.grid.topology_file = t.at("file").get<std::string>();
          spec.grid.coupling.reset();
        }
        if (t.contains("kind")) spec.grid.kind = parse_topology_kind(t.at("kind").get<std::string>());
        spec.grid.nodes = detail::get_or<std::size_t>(t, "nodes", spec.grid.nodes);
        spec.grid.edges = detail::get_or<std::size_t>(t, "edges", spec.grid.edges);
        spec.grid.topology_seed = detail::get_or<std::uint64_t>(t, "seed", spec.grid.topology_seed);
      }
      if (g.contains("coupling")) {
        if (g.at("coupling").is_null()) {
          spec.grid.coupling.reset();
        } else {
          spec.grid.coupling = g.at("coupling").get<double>();
        }
      }
      if (g.contains("params_file")) spec.grid.params_file = g.at("params_file").get<std::string>();
      spec.grid.params_seed = detail::get_or<std::uint64_t>(g, "params_seed", spec.grid.params_seed);
    }
    if (root.contains("scenario")) {
      const auto& s = root.at("scenario");
      detail::merge_scenario(s, spec.scenario.base);
      if (s.contains("kind")) spec.scenario.kind = parse_scenario_kind(s.at("kind").get<std::string>());
      spec.scenario.gamma = detail::get_or<double>(s, "gamma", spec.scenario.gamma);
      if (s.contains("source_node") && !s.at("source_node").is_null()) {
        spec.scenario.source_node = s.at("source_node").get<std::size_t>();
      }
    }
    if (root.contains("mecf")) detail::merge_mecf(root.at("mecf"), spec.mecf);
    if (root.contains("locator")) {
      detail::merge_locator(root.at("locator"), spec.locator);
      spec.dominance_ratio = detail::get_or<double>(root.at("locator"), "dominance_ratio",
                                                    spec.dominance_ratio);
    }
    if (root.contains("seeds")) spec.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
    if (root.contains("sweep")) {
      const auto& w = root.at("sweep");
      if (w.contains("K")) spec.sweep_k = w.at("K").get<std::vector<double>>();
      if (w.contains("sigma")) spec.sweep_sigma = w.at("sigma").get<std::vector<double>>();
    }
    if (root.contains("output_dir")) spec.output_dir = root.at("output_dir").get<std::string>();
    spec.workers = detail::get_or<std::size_t>(root, "workers", spec.workers);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("experiment config: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string experiment_spec_to_json(const ExperimentSpec& spec, int indent) {
  json topology;
  if (spec.grid.topology_file) {
    topology = {{"file", spec.grid.topology_file->string()}};
  } else {
    topology = {{"kind", std::string(to_string(spec.grid.kind))},
                {"nodes", spec.grid.nodes},
                {"edges", spec.grid.edges},
                {"seed", spec.grid.topology_seed}};
  }
  json grid = {{"topology", topology}, {"params_seed", spec.grid.params_seed}};
  grid["coupling"] = spec.grid.coupling ? json(*spec.grid.coupling) : json(nullptr);
  if (spec.grid.params_file) grid["params_file"] = spec.grid.params_file->string();

  json scenario = detail::to_json(spec.scenario.base);
  scenario["kind"] = std::string(to_string(spec.scenario.kind));
  scenario["gamma"] = spec.scenario.gamma;
  scenario["source_node"] = spec.scenario.source_node ? json(*spec.scenario.source_node) : json(nullptr);

  json locator = detail::to_json(spec.locator);
  locator["dominance_ratio"] = spec.dominance_ratio;

  json root = {{"grid", grid},
               {"scenario", scenario},
               {"mecf", detail::to_json(spec.mecf)},
               {"locator", locator},
               {"seeds", spec.seeds},
               {"sweep", {{"K", spec.sweep_k}, {"sigma", spec.sweep_sigma}}},
               {"output_dir", spec.output_dir.string()}};
  return root.dump(indent);
}

PreparedGrid prepare_grid(const GridModel& model) {
  auto solved = with_solved_equilibrium(model);
  auto state = build_state_matrix(solved);
  auto modes = modal_analysis(state);
  return PreparedGrid{std::move(solved), std::move(state), std::move(modes)};
}

PreparedGrid prepare_grid(const GridSpec& spec) {
  std::optional<GridTopology> topology;
  if (spec.topology_file) {
    topology = load_topology(*spec.topology_file);
    if (spec.coupling) topology = topology->with_uniform_coupling(*spec.coupling);
  } else {
    topology = generate_topology(spec.kind, spec.nodes, spec.edges, spec.topology_seed,
                                 spec.coupling.value_or(15.0));
  }
  const auto n = topology->node_count();
  NodeParams params = spec.params_file ? load_node_params(*spec.params_file, n)
                                       : NodeParams::defaults(n, spec.params_seed);
  return prepare_grid(GridModel(std::move(*topology), std::move(params)));
}

Eigen::MatrixXcd omega_response_matrix(const StateMatrix& state, double f) {
  const auto n = static_cast<Eigen::Index>(state.node_count());
  const auto& phi = state.phi;
  if (!phi.topLeftCorner(n, n).isZero(0.0) || !phi.topRightCorner(n, n).isIdentity(0.0)) {
    throw InvalidInput("omega_response_matrix: state matrix lacks the [0 I] upper blocks");
  }
  if (!(f > 0.0)) throw InvalidInput("omega_response_matrix: frequency must be positive");
  const std::complex<double> iw(0.0, 2.0 * M_PI * f);
  // i w omega = A21 delta + A22 omega + b with delta = omega / (i w).
  Eigen::MatrixXcd a = -phi.bottomRightCorner(n, n).cast<std::complex<double>>() -
                       phi.bottomLeftCorner(n, n).cast<std::complex<double>>() / iw;
  a.diagonal().array() += iw;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible()) throw NumericalError("omega_response_matrix: singular at this frequency");
  return lu.inverse();
}

namespace {

std::vector<std::size_t> eligible_sources(const GridTopology& topo, std::uint64_t seed) {
  const auto articulation = topo.articulation_points();
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    if (topo.degree(i) >= 2 && !articulation[i]) nodes.push_back(i);
  }
  if (nodes.empty()) {
    nodes.resize(topo.node_count());
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  }
  std::mt19937_64 rng(seed);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  return nodes;
}

void check_pinned(const std::optional<std::size_t>& node, std::size_t count) {
  if (node && *node >= count) {
    throw InvalidInput("scenario: source node " + std::to_string(*node) + " out of range");
  }
}

}  // namespace

Scenario build_scenario(ScenarioKind kind, const PreparedGrid& grid, std::uint64_t seed,
                        const ScenarioSpec& settings) {
  const auto& topo = grid.model.topology();
  const auto n = topo.node_count();
  check_pinned(settings.source_node, n);
  Scenario out;
  out.kind = kind;
  out.config = settings.base;
  out.config.sources.clear();
  const auto candidates = eligible_sources(topo, seed);
  const double gamma = settings.gamma;

  switch (kind) {
    case ScenarioKind::single: {
      const auto node = settings.source_node.value_or(candidates.front());
      out.config.sources.push_back({node, gamma, 0.5, 0.0});
      break;
    }
    case ScenarioKind::multi: {
      const auto first = settings.source_node.value_or(candidates.front());
      const auto hops = topo.hop_distances(first);
      std::optional<std::size_t> second;
      for (auto c : candidates) {
        if (c != first && hops[c] >= 2) {
          second = c;
          break;
        }
      }
      if (!second) throw InvalidInput("scenario: no second source node available");
      out.config.sources.push_back({first, gamma, 0.2, 0.0});
      out.config.sources.push_back({*second, gamma, 0.4, 0.0});
      break;
    }
    case ScenarioKind::resonance: {
      constexpr std::size_t min_hops = 3;
      std::vector<std::size_t> pool = candidates;
      if (settings.source_node) pool = {*settings.source_node};
      std::vector<std::vector<std::size_t>> hops;
      hops.reserve(pool.size());
      for (auto s : pool) hops.push_back(topo.hop_distances(s));

      double best_score = -std::numeric_limits<double>::infinity();
      std::size_t best_source = 0, best_resonator = 0;
      double best_f = 0.0, best_ratio = 0.0;
      for (const auto& mode : grid.modes.modes) {
        if (mode.eigenvalue.imag() <= 0.0) continue;
        if (mode.frequency_hz < 0.1 || mode.frequency_hz > 2.0) continue;
        const auto r = mode.dominant_node;
        bool any = false;
        for (std::size_t c = 0; c < pool.size(); ++c) any = any || hops[c][r] >= min_hops;
        if (!any) continue;
        const Eigen::MatrixXcd resp = omega_response_matrix(grid.state, mode.frequency_hz);
        for (std::size_t c = 0; c < pool.size(); ++c) {
          const auto s = pool[c];
          if (hops[c][r] < min_hops) continue;
          const double ratio = std::abs(resp(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s))) /
                               std::abs(resp(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)));
          const double score = -std::abs(std::log(ratio));
          if (score > best_score) {
            best_score = score;
            best_source = s;
            best_resonator = r;
            best_f = mode.frequency_hz;
            best_ratio = ratio;
          }
        }
      }
      if (!std::isfinite(best_score)) throw InvalidInput("build_scenario: no qualifying mode");
      out.config.sources.push_back({best_source, gamma, best_f, 0.0});
      out.resonator = best_resonator;
      out.resonance_ratio = best_ratio;
      break;
    }
    case ScenarioKind::custom:
      if (settings.base.sources.empty()) throw InvalidInput("scenario: custom kind needs sources");
      out.config.sources = settings.base.sources;
      break;
  }
  out.config.validate(n);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  h = mix(h ^ a);
  h = mix(h ^ b);
  return mix(h ^ c);
}

SeedOutcome run_seed(const PreparedGrid& grid, const Scenario& scenario, const MECFParams& mecf,
                     const LocatorOptions& locator, std::uint64_t noise_seed,
                     std::uint64_t tsne_seed, std::size_t workers, Trajectory* trajectory_out) {
  ScenarioConfig cfg = scenario.config;
  cfg.seed = noise_seed;
  Trajectory traj = simulate(grid.model, grid.state, cfg);
  const auto fields = assemble_fields(traj.omega, mecf, workers);
  const Eigen::MatrixXd dist = field_distance_matrix(fields, workers);

  LocatorOptions opts = locator;
  opts.tsne.seed = tsne_seed;
  SeedOutcome out;
  out.seed = tsne_seed;
  for (const auto& f : fields) out.degenerate_pairs += f.degenerate_pairs;
  out.report = locate_from_field_distances(dist, opts);

  std::set<std::size_t> sources;
  for (const auto& s : cfg.sources) sources.insert(s.node);
  const std::set<std::size_t> flagged(out.report.outliers.begin(), out.report.outliers.end());
  out.all_sources_flagged = std::includes(flagged.begin(), flagged.end(), sources.begin(), sources.end());
  out.exact = flagged == sources;
  out.resonator_flagged = scenario.resonator && flagged.count(*scenario.resonator) > 0;
  if (trajectory_out) *trajectory_out = std::move(traj);
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const PreparedGrid& grid,
                                const Scenario& scenario) {
  spec.validate();
  ExperimentResult result;
  result.scenario = scenario;
  result.d_max = resolve_dmax(spec.mecf, scenario.config.sample_count());
  std::map<std::size_t, std::size_t> votes;
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    const auto seed = spec.seeds[i];
    const auto noise_seed = derive_seed(scenario.config.seed, seed, 0, 0);
    auto outcome = run_seed(grid, scenario, spec.mecf, spec.locator, noise_seed, seed, spec.workers,
                            i == 0 ? &result.first_trajectory : nullptr);
    for (auto node : outcome.report.outliers) ++votes[node];
    result.runs.push_back(std::move(outcome));
  }
  for (const auto& [node, count] : votes) {
    if (2 * count > spec.seeds.size()) result.majority_outliers.push_back(node);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  const auto grid = prepare_grid(spec.grid);
  const auto scenario = build_scenario(spec.scenario.kind, grid, spec.scenario.base.seed, spec.scenario);
  return run_experiment(spec, grid, scenario);
}

namespace {

json scenario_json(const Scenario& s) {
  json j = {{"kind", std::string(to_string(s.kind))}, {"config", detail::to_json(s.config)}};
  j["resonator"] = s.resonator ? json(*s.resonator) : json(nullptr);
  if (s.resonator) j["predicted_resonance_ratio"] = s.resonance_ratio;
  return j;
}

}  // namespace

std::string experiment_report_json(const ExperimentSpec& spec, const ExperimentResult& result) {
  json runs = json::array();
  std::size_t exact = 0, flagged_all = 0;
  for (const auto& r : result.runs) {
    runs.push_back({{"seed", r.seed},
                    {"outliers", r.report.outliers},
                    {"threshold", r.report.threshold},
                    {"avg_distances", detail::to_json(r.report.avg_distances)},
                    {"all_sources_flagged", r.all_sources_flagged},
                    {"exact", r.exact},
                    {"resonator_flagged", r.resonator_flagged},
                    {"degenerate_pairs", r.degenerate_pairs}});
    exact += r.exact ? 1 : 0;
    flagged_all += r.all_sources_flagged ? 1 : 0;
  }
  json mecf = detail::to_json(spec.mecf);
  mecf["d_max_effective"] = result.d_max;
  json locator = detail::to_json(spec.locator);
  locator["dominance_ratio"] = spec.dominance_ratio;
  json j = {{"scenario", scenario_json(result.scenario)},
            {"mecf", mecf},
            {"locator", locator},
            {"seeds", spec.seeds},
            {"runs", runs},
            {"majority_outliers", result.majority_outliers},
            {"exact_runs", exact},
            {"located_runs", flagged_all},
            {"metadata", {{"tool", "foloc"}, {"format", 1}}}};
  return j.dump(2);
}

void write_experiment_artifacts(const ExperimentSpec& spec, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir = spec.output_dir;
  fs::create_directories(dir);
  std::vector<std::string> artifacts;
  auto record = [&](const fs::path& rel) { artifacts.push_back(rel.generic_string()); };

  write_trajectory_csv(dir / "trajectory.csv", result.first_trajectory);
  record("trajectory.csv");

  std::set<std::size_t> highlighted;
  for (const auto& s : result.scenario.config.sources) highlighted.insert(s.node);
  if (result.scenario.resonator) highlighted.insert(*result.scenario.resonator);
  for (auto node : highlighted) {
    const Eigen::VectorXd row = result.first_trajectory.omega.row(static_cast<Eigen::Index>(node)).transpose();
    const auto field = assemble_field(std::span<const double>(row.data(), row.size()), spec.mecf);
    const auto stem = "fields/field_" + std::to_string(node);
    write_field_csv(dir / (stem + ".csv"), field);
    write_text_file(dir / (stem + ".json"), field_sidecar_json(field, node));
    record(stem + ".csv");
    record(stem + ".json");
  }
  for (const auto& r : result.runs) {
    LocatorOptions opts = spec.locator;
    opts.tsne.seed = r.seed;
    const auto stem = "seed_" + std::to_string(r.seed);
    write_embedding_csv(dir / "embeddings" / (stem + ".csv"), r.report.embedding);
    write_text_file(dir / "reports" / (stem + ".json"), location_report_to_json(r.report, opts));
    record("embeddings/" + stem + ".csv");
    record("reports/" + stem + ".json");
  }
  write_text_file(dir / "report.json", experiment_report_json(spec, result));
  record("report.json");

  write_manifest(dir, artifacts, spec);
}

void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& artifacts,
                    const ExperimentSpec& spec) {
  json manifest = {{"artifacts", artifacts},
                   {"config", json::parse(experiment_spec_to_json(spec))},
                   {"metadata", {{"tool", "foloc"}, {"format", 1}}}};
  write_text_file(dir / "manifest.json", manifest.dump(2));
}

SweepResult run_sweep(const ExperimentSpec& spec, const std::vector<double>& k_values,
                      const std::vector<double>& sigma_values) {
  spec.validate();
  auto increasing = [](const std::vector<double>& v) {
    return !v.empty() && std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(k_values) || !increasing(sigma_values)) {
    throw InvalidInput("sweep: K and sigma grids must be non-empty and strictly increasing");
  }
  const auto base = prepare_grid(spec.grid);
  const auto scenario = build_scenario(spec.scenario.kind, base, spec.scenario.base.seed, spec.scenario);

  SweepResult result;
  result.kind = spec.scenario.kind;
  result.k_values = k_values;
  result.sigma_values = sigma_values;
  for (const auto& s : scenario.config.sources) result.sources.push_back(s.node);
  result.resonator = scenario.resonator;

  const std::size_t nk = k_values.size(), ns = sigma_values.size(), nseeds = spec.seeds.size();
  result.cells.resize(nk * ns);

  // Grid per K; a failure here marks the whole row.
  std::vector<std::optional<PreparedGrid>> grids(nk);
  std::vector<std::string> grid_errors(nk);
  for (std::size_t ki = 0; ki < nk; ++ki) {
    try {
      grids[ki] = prepare_grid(base.model.with_uniform_coupling(k_values[ki]));
    } catch (const Error& e) {
      grid_errors[ki] = e.what();
    }
  }

  struct Verdict {
    bool located = false;
    bool resonator = false;
    std::string error;
  };
  std::vector<Verdict> verdicts(nk * ns * nseeds);
  parallel_for(
      verdicts.size(),
      [&](std::size_t task) {
        const std::size_t ki = task / (ns * nseeds);
        const std::size_t si = (task / nseeds) % ns;
        const std::size_t j = task % nseeds;
        auto& v = verdicts[task];
        if (!grids[ki]) {
          v.error = grid_errors[ki];
          return;
        }
        Scenario cell = scenario;
        cell.config.sigma = sigma_values[si];
        const auto stream = derive_seed(spec.seeds[j], ki, si, j);
        try {
          const auto outcome = run_seed(*grids[ki], cell, spec.mecf, spec.locator, stream, stream, 1);
          v.located = outcome.all_sources_flagged;
          v.resonator = outcome.resonator_flagged;
        } catch (const Error& e) {
          v.error = e.what();
        }
      },
      spec.workers);

  for (std::size_t ki = 0; ki < nk; ++ki) {
    for (std::size_t si = 0; si < ns; ++si) {
      auto& cell = result.cells[ki * ns + si];
      cell.coupling = k_values[ki];
      cell.sigma = sigma_values[si];
      std::size_t hits = 0;
      for (std::size_t j = 0; j < nseeds; ++j) {
        const auto& v = verdicts[(ki * ns + si) * nseeds + j];
        cell.located.push_back(v.located);
        cell.resonator_flagged.push_back(v.resonator);
        if (!v.error.empty() && cell.error.empty()) cell.error = v.error;
        hits += v.located ? 1 : 0;
      }
      cell.success_rate = static_cast<double>(hits) / static_cast<double>(nseeds);
      cell.majority = 2 * hits > nseeds;
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "K,sigma,success_rate,majority,resonator_flag_rate,error\n";
  for (const auto& c : result.cells) {
    const auto flagged = std::count(c.resonator_flagged.begin(), c.resonator_flagged.end(), true);
    const double rate = c.resonator_flagged.empty()
                            ? 0.0
                            : static_cast<double>(flagged) / static_cast<double>(c.resonator_flagged.size());
    std::string error = c.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << c.coupling << ',' << c.sigma << ',' << c.success_rate << ',' << (c.majority ? 1 : 0)
        << ',' << rate << ',' << error << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result) {
  json cells = json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"K", c.coupling},
                     {"sigma", c.sigma},
                     {"located", c.located},
                     {"resonator_flagged", c.resonator_flagged},
                     {"majority", c.majority},
                     {"success_rate", c.success_rate},
                     {"error", c.error}});
  }
  json j = {{"scenario", std::string(to_string(result.kind))},
            {"K", result.k_values},
            {"sigma", result.sigma_values},
            {"sources", result.sources},
            {"cells", cells}};
  j["resonator"] = result.resonator ? json(*result.resonator) : json(nullptr);
  return j.dump(2);
}

FourierBaseline run_fourier_baseline(const ExperimentSpec& spec, const PreparedGrid& grid,
                                     const Scenario& scenario) {
  spec.validate();
  FourierBaseline out;
  out.scenario = scenario;
  ScenarioConfig cfg = scenario.config;
  cfg.seed = derive_seed(scenario.config.seed, spec.seeds.front(), 0, 0);
  const auto traj = simulate(grid.model, grid.state, cfg);
  out.spectra = fourier_spectrum(traj);
  out.verdict = fourier_locate(out.spectra, spec.dominance_ratio);
  return out;
}

FourierBaseline run_fourier_baseline(const ExperimentSpec& spec) {
  const auto grid = prepare_grid(spec.grid);
  const auto scenario = build_scenario(spec.scenario.kind, grid, spec.scenario.base.seed, spec.scenario);
  return run_fourier_baseline(spec, grid, scenario);
}

}  // namespace foloc
