#include <benchmark/benchmark.h>

#include <random>

#include "foloc/experiment.hpp"

using namespace foloc;

namespace {

Eigen::MatrixXd noise_series(Eigen::Index nodes, Eigen::Index samples) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd m(nodes, samples);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = nd(rng);
  return m;
}

const PreparedGrid& desk() {
  static const PreparedGrid grid = prepare_grid(GridSpec{});
  return grid;
}

void BM_AssembleField(benchmark::State& state) {
  const Eigen::VectorXd x = noise_series(1, state.range(0)).row(0).transpose();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_field({x.data(), static_cast<std::size_t>(x.size())}, {}));
}
BENCHMARK(BM_AssembleField)->Arg(600)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_FieldDistanceMatrix(benchmark::State& state) {
  const auto fields = assemble_fields(noise_series(state.range(0), 3000), {}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(field_distance_matrix(fields, 1));
}
BENCHMARK(BM_FieldDistanceMatrix)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_Tsne(benchmark::State& state) {
  const auto pts = noise_series(state.range(0), 10);
  Eigen::MatrixXd d(pts.rows(), pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = 0; j < pts.rows(); ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  for (auto _ : state) benchmark::DoNotOptimize(tsne_layout(d, {}));
}
BENCHMARK(BM_Tsne)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_SimulateDesk(benchmark::State& state) {
  ScenarioConfig c;
  c.sources = {{13, 1.0, 0.5, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(desk().model, desk().state, c));
}
BENCHMARK(BM_SimulateDesk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
