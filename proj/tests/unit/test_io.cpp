#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "foloc/error.hpp"
#include "foloc/io.hpp"

using namespace foloc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "foloc_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("trajectory CSV round trip is lossless") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Trajectory t;
  t.dt = 0.01;
  t.omega.resize(3, 50);
  for (Eigen::Index i = 0; i < t.omega.size(); ++i) t.omega.data()[i] = nd(rng);
  t.delta = Eigen::MatrixXd::Zero(3, 50);
  const auto path = scratch("traj.csv");
  write_trajectory_csv(path, t);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,node_0,node_1,node_2");
  const auto back = read_trajectory_csv(path);
  CHECK(back.omega == t.omega);
  CHECK(back.dt == doctest::Approx(0.01));
}

TEST_CASE("malformed trajectory files") {
  const auto path = scratch("bad.csv");
  std::ofstream(path) << "t,node_0\n0,1\n0.01,abc\n";
  CHECK_THROWS_WITH_AS(read_trajectory_csv(path), doctest::Contains(":3"), InvalidInput);
  std::ofstream(path) << "time,a\n";
  CHECK_THROWS_AS(read_trajectory_csv(path), InvalidInput);
  CHECK_THROWS_AS(read_trajectory_csv(scratch("missing.csv")), InvalidInput);
}

TEST_CASE("field CSV and sidecar") {
  std::vector<double> x(40);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.3 * static_cast<double>(i));
  const auto field = assemble_field(x, MECFParams{});
  const auto path = scratch("field.csv");
  write_field_csv(path, field);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header.rfind("d,c0,c1", 0) == 0);
  CHECK(first.rfind("1,", 0) == 0);
  const auto side = nlohmann::json::parse(field_sidecar_json(field, 4));
  CHECK(side["node"] == 4);
  CHECK(side["d_max"]["effective"] == field.d_max());
  CHECK(side["diagnostics"]["degenerate_pairs"] == 0);
}

TEST_CASE("distance CSV round trip") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1.25, 2.5, 1.25, 0, 1.0 / 3.0, 2.5, 1.0 / 3.0, 0;
  const auto path = scratch("dist.csv");
  write_distance_csv(path, d);
  CHECK(read_distance_csv(path) == d);
}

TEST_CASE("scenario JSON mirrors the fields") {
  ScenarioConfig c;
  c.sources = {{3, 1.5, 0.2, 0.25}};
  c.sigma = 0.1;
  c.seed = 77;
  c.noise_mode = NoiseMode::measurement;
  const auto text = scenario_to_json(c);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"sources", "sigma", "duration", "dt", "seed", "model_kind", "noise_mode"})
    CHECK(j.contains(key));
  const auto back = scenario_from_json(text);
  CHECK(back.sources[0].node == 3);
  CHECK(back.sources[0].phase == 0.25);
  CHECK(back.seed == 77);
  CHECK(back.noise_mode == NoiseMode::measurement);
  CHECK(scenario_to_json(back) == text);
  CHECK_THROWS_AS(scenario_from_json("{\"sigma\": \"high\"}"), InvalidInput);
  CHECK_THROWS_AS(scenario_from_json("[1,2"), InvalidInput);
}

TEST_CASE("MECF params JSON") {
  MECFParams p;
  CHECK(nlohmann::json::parse(mecf_params_to_json(p))["d_max"] == "auto");
  p.d_max = 12;
  const auto back = mecf_params_from_json(mecf_params_to_json(p));
  CHECK(back.d_max == std::optional<std::size_t>(12));
  CHECK_THROWS_AS(mecf_params_from_json("{\"d_max\": \"lots\"}"), InvalidInput);
}

TEST_CASE("location report JSON") {
  LocationReport r;
  r.avg_distances = Eigen::Vector3d(0.2, 0.3, 0.9);
  r.threshold = 0.8;
  r.outliers = {2};
  LocatorOptions o;
  o.tsne.seed = 5;
  const auto j = nlohmann::json::parse(location_report_to_json(r, o));
  CHECK(j["outliers"] == nlohmann::json::array({2}));
  CHECK(j["seed"] == 5);
  CHECK(j["params"]["perplexity"] == 30.0);
  CHECK(j["avg_distances"].size() == 3);
}
