#include "foloc/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "json_convert.hpp"

namespace foloc {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t";
  for (Eigen::Index i = 0; i < traj.omega.rows(); ++i) out << ",node_" << i;
  out << '\n';
  for (Eigen::Index k = 0; k < traj.omega.cols(); ++k) {
    out << static_cast<double>(k) * traj.dt;
    for (Eigen::Index i = 0; i < traj.omega.rows(); ++i) out << ',' << traj.omega(i, k);
    out << '\n';
  }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open trajectory file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(path.string() + ": empty trajectory file");
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "t") {
    throw InvalidInput(path.string() + ": expected header t,node_0,...");
  }
  const std::size_t nodes = header.size() - 1;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != nodes + 1) {
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(nodes + 1) + " columns");
    }
    std::vector<double> values(nodes);
    try {
      times.push_back(std::stod(cells[0]));
      for (std::size_t i = 0; i < nodes; ++i) values[i] = std::stod(cells[i + 1]);
    } catch (const std::exception&) {
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
    rows.push_back(std::move(values));
  }
  if (rows.size() < 2) throw InvalidInput(path.string() + ": need at least two samples");
  Trajectory traj;
  traj.dt = times[1] - times[0];
  if (!(traj.dt > 0.0)) throw InvalidInput(path.string() + ": time column must increase");
  const auto n = static_cast<Eigen::Index>(nodes);
  const auto t = static_cast<Eigen::Index>(rows.size());
  traj.omega.resize(n, t);
  for (Eigen::Index k = 0; k < t; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      traj.omega(i, k) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
  }
  traj.delta = Eigen::MatrixXd::Zero(n, t);
  return traj;
}

void write_field_csv(const std::filesystem::path& path, const MotifField& field) {
  auto out = open_out(path);
  out << "d";
  for (Eigen::Index c = 0; c < field.values.cols(); ++c) out << ",c" << c;
  out << '\n';
  for (Eigen::Index r = 0; r < field.values.rows(); ++r) {
    out << (r + 1);
    for (Eigen::Index c = 0; c < field.values.cols(); ++c) out << ',' << field.values(r, c);
    out << '\n';
  }
}

std::string field_sidecar_json(const MotifField& field, std::size_t node) {
  const auto info = compute_dmax(field.series_length, field.params.m, field.params.tau,
                                 field.params.n);
  detail::json j = {{"node", node},
                    {"params", detail::to_json(field.params)},
                    {"series_length", field.series_length},
                    {"rows", field.values.rows()},
                    {"cols", field.values.cols()},
                    {"d_max",
                     {{"formula", info.formula},
                      {"feasibility_cap", info.feasibility_cap},
                      {"effective", field.d_max()}}},
                    {"diagnostics", {{"degenerate_pairs", field.degenerate_pairs}}}};
  return j.dump(2);
}

void write_embedding_csv(const std::filesystem::path& path, const Embedding2D& emb) {
  auto out = open_out(path);
  out << "node,x,y\n";
  for (Eigen::Index i = 0; i < emb.points.rows(); ++i) {
    out << i << ',' << emb.points(i, 0) << ',' << emb.points(i, 1) << '\n';
  }
}

void write_spectra_csv(const std::filesystem::path& path, const SpectrumSet& spectra) {
  auto out = open_out(path);
  out << "frequency";
  for (Eigen::Index i = 0; i < spectra.magnitudes.rows(); ++i) out << ",node_" << i;
  out << '\n';
  for (Eigen::Index k = 0; k < spectra.magnitudes.cols(); ++k) {
    out << spectra.frequencies[k];
    for (Eigen::Index i = 0; i < spectra.magnitudes.rows(); ++i) {
      out << ',' << spectra.magnitudes(i, k);
    }
    out << '\n';
  }
}

void write_distance_csv(const std::filesystem::path& path, const Eigen::MatrixXd& distances) {
  auto out = open_out(path);
  out << "node";
  for (Eigen::Index j = 0; j < distances.cols(); ++j) out << ",node_" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < distances.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < distances.cols(); ++j) out << ',' << distances(i, j);
    out << '\n';
  }
}

Eigen::MatrixXd read_distance_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open distance file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(path.string() + ": empty distance file");
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "node") {
    throw InvalidInput(path.string() + ": expected header node,node_0,...");
  }
  const auto n = static_cast<Eigen::Index>(header.size() - 1);
  Eigen::MatrixXd d(n, n);
  Eigen::Index row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (row >= n || cells.size() != static_cast<std::size_t>(n) + 1) {
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    }
    try {
      for (Eigen::Index j = 0; j < n; ++j) d(row, j) = std::stod(cells[static_cast<std::size_t>(j) + 1]);
    } catch (const std::exception&) {
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
    ++row;
  }
  if (row != n) throw InvalidInput(path.string() + ": expected " + std::to_string(n) + " rows");
  return d;
}

std::string scenario_to_json(const ScenarioConfig& scenario, int indent) {
  return detail::to_json(scenario).dump(indent);
}

ScenarioConfig scenario_from_json(std::string_view text) {
  ScenarioConfig c;
  detail::merge_scenario(detail::parse_json(text), c);
  return c;
}

std::string mecf_params_to_json(const MECFParams& params, int indent) {
  return detail::to_json(params).dump(indent);
}

MECFParams mecf_params_from_json(std::string_view text) {
  MECFParams p;
  detail::merge_mecf(detail::parse_json(text), p);
  return p;
}

std::string location_report_to_json(const LocationReport& report, const LocatorOptions& options,
                                     int indent) {
  detail::json j = {{"avg_distances", detail::to_json(report.avg_distances)},
                    {"threshold", report.threshold},
                    {"outliers", report.outliers},
                    {"seed", options.tsne.seed},
                    {"params", detail::to_json(options)}};
  return j.dump(indent);
}

std::string fourier_verdict_to_json(const FourierVerdict& verdict, int indent) {
  detail::json peaks = detail::json::array();
  for (const auto& p : verdict.peaks) {
    peaks.push_back({{"bin", p.bin},
                     {"frequency_hz", p.frequency_hz},
                     {"leader", p.leader},
                     {"leader_magnitude", p.leader_magnitude},
                     {"runner_up", p.runner_up},
                     {"runner_up_magnitude", p.runner_up_magnitude},
                     {"ambiguous", p.ambiguous}});
  }
  detail::json j = {{"peaks", peaks},
                    {"candidates", verdict.candidates},
                    {"ambiguous", verdict.ambiguous}};
  return j.dump(indent);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto out = open_out(path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace foloc
