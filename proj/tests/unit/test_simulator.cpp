#include <doctest.h>

#include <cmath>

#include "foloc/error.hpp"
#include "foloc/simulator.hpp"
#include "oracles/linear_response.hpp"

using namespace foloc;

namespace {

GridModel ring_model(std::size_t n, double k, std::uint64_t seed = 1) {
  const auto topo = generate_topology(TopologyKind::rewired_lattice, n, n + n / 3, seed, k);
  return with_solved_equilibrium(GridModel(topo, NodeParams::defaults(n, seed)));
}

ScenarioConfig quiet(std::vector<FOSource> sources, double duration = 30.0) {
  ScenarioConfig c;
  c.sources = std::move(sources);
  c.sigma = 0.0;
  c.duration = duration;
  return c;
}

double tail_amplitude(const Eigen::MatrixXd& omega, Eigen::Index row, Eigen::Index from) {
  const auto seg = omega.row(row).tail(omega.cols() - from);
  return 0.5 * (seg.maxCoeff() - seg.minCoeff());
}

}  // namespace

TEST_CASE("forcing signal") {
  CHECK(fo_signal({0, 1.0, 0.5, 0.0}, 0.0) == doctest::Approx(1.0));
  CHECK(fo_signal({0, 1.0, 0.5, 0.0}, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fo_signal({0, 2.0, 0.5, 0.5}, 0.0) == doctest::Approx(-2.0));
}

TEST_CASE("scenario validation") {
  ScenarioConfig c;
  c.sources = {{0, 1.0, 0.5, 0.0}, {0, 1.0, 0.2, 0.0}};
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.sources = {{7, 1.0, 0.5, 0.0}};
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.sources = {{1, -1.0, 0.5, 0.0}};
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.sources = {{1, 1.0, 0.5, 0.0}};
  c.sigma = -0.1;
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.sigma = 0.1;
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.dt = 0.01;
  CHECK_NOTHROW(c.validate(4));
  CHECK(c.sample_count() == 3000);
}

TEST_CASE("no input, no motion") {
  const auto model = ring_model(8, 15);
  const auto traj = simulate(model, build_state_matrix(model), quiet({}, 5.0));
  CHECK(traj.omega.cols() == 500);
  CHECK(traj.omega.isZero(0.0));
  CHECK(traj.delta.isZero(0.0));
  ScenarioConfig nl = quiet({}, 5.0);
  nl.model_kind = ModelKind::nonlinear;
  const auto tn = simulate(model, build_state_matrix(model), nl);
  CHECK(tn.omega.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("scalar transfer function") {
  // One node, no coupling: omega' = -omega + cos(2 pi f t).
  const auto st = StateMatrix::from_matrix((Eigen::Matrix2d() << 0, 1, 0, -1).finished());
  for (double f : {0.1, 0.5, 2.0}) {
    const auto resp = steady_state_response(st, {0, 1.0, f, 0.0});
    CHECK(std::abs(resp[1]) == doctest::Approx(1.0 / std::sqrt(1.0 + std::pow(2 * M_PI * f, 2))));
  }
  const auto traj = simulate_linear(st, quiet({{0, 1.0, 0.5, 0.0}}));
  CHECK(tail_amplitude(traj.omega, 0, 2000) ==
        doctest::Approx(1.0 / std::sqrt(1.0 + M_PI * M_PI)).epsilon(1e-3));
}

TEST_CASE("simulated amplitudes follow the transfer function") {
  const auto model = ring_model(10, 15, 3);
  const auto st = build_state_matrix(model);
  const FOSource src{4, 1.0, 0.5, 0.0};
  const auto traj = simulate(model, st, quiet({src}));
  const auto resp = steady_state_response(st, src);
  const auto ref = oracle::steady_amplitude(st.phi, Eigen::VectorXd::Unit(20, 14), 2 * M_PI * 0.5);
  for (Eigen::Index i = 0; i < 10; ++i) {
    const double predicted = std::abs(resp[10 + i]);
    CHECK(predicted == doctest::Approx(std::abs(ref[10 + i])).epsilon(1e-10));
    CHECK(tail_amplitude(traj.omega, i, 2000) == doctest::Approx(predicted).epsilon(0.02));
  }
}

TEST_CASE("high-frequency roll-off") {
  const auto model = ring_model(10, 15, 3);
  const auto st = build_state_matrix(model);
  double previous = std::numeric_limits<double>::infinity();
  for (double f = 5.0; f <= 40.0; f *= 2.0) {
    const double a = std::abs(steady_state_response(st, {2, 1.0, f, 0.0})[12]);
    CHECK(a < previous);
    previous = a;
  }
}

TEST_CASE("lightly damped resonance amplifies") {
  NodeParams params{Eigen::Vector2d(1, 1), Eigen::Vector2d(0.02, 0.02), Eigen::Vector2d(0, 0)};
  const auto model = with_solved_equilibrium(GridModel(GridTopology(2, {{0, 1, 2.0}}), params));
  const auto st = build_state_matrix(model);
  const double f0 = std::sqrt(4.0) / (2 * M_PI);
  const double at = std::abs(steady_state_response(st, {0, 1.0, f0, 0.0})[3]);
  const double off = std::abs(steady_state_response(st, {0, 1.0, 5.0 * f0, 0.0})[3]);
  CHECK(at > 5.0 * off);
}

TEST_CASE("matrix exponential agreement") {
  const auto topo = GridTopology(4, {{0, 1, 15}, {1, 2, 15}, {2, 3, 15}, {0, 3, 15}, {0, 2, 15}});
  const auto model = with_solved_equilibrium(GridModel(topo, NodeParams::defaults(4, 2)));
  const auto st = build_state_matrix(model);
  const FOSource src{1, 1.0, 0.5, 0.0};
  const auto traj = simulate_linear(st, quiet({src}));
  const Eigen::VectorXd b = Eigen::VectorXd::Unit(8, 5);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < traj.omega.cols(); k += 50) {
    const auto y = oracle::forced_solution(st.phi, b, 2 * M_PI * 0.5, static_cast<double>(k) * 0.01);
    worst = std::max(worst, (traj.omega.col(k) - y.tail(4)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (traj.delta.col(k) - y.head(4)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("linearity and superposition") {
  const auto model = ring_model(12, 15, 4);
  const auto st = build_state_matrix(model);
  const FOSource a{2, 1.0, 0.5, 0.0}, b{7, 0.7, 0.2, 0.25};
  const auto ta = simulate_linear(st, quiet({a}, 10.0));
  FOSource a3 = a;
  a3.gamma = 3.0;
  const auto t3 = simulate_linear(st, quiet({a3}, 10.0));
  CHECK((t3.omega - 3.0 * ta.omega).cwiseAbs().maxCoeff() < 1e-12);
  const auto tb = simulate_linear(st, quiet({b}, 10.0));
  const auto tab = simulate_linear(st, quiet({a, b}, 10.0));
  CHECK((tab.omega - ta.omega - tb.omega).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("seeded noise is reproducible") {
  const auto model = ring_model(12, 15, 4);
  const auto st = build_state_matrix(model);
  ScenarioConfig c;
  c.sources = {{3, 1.0, 0.5, 0.0}};
  c.duration = 5.0;
  c.seed = 9;
  const auto t1 = simulate(model, st, c);
  const auto t2 = simulate(model, st, c);
  CHECK(t1.omega == t2.omega);
  c.seed = 10;
  CHECK(simulate(model, st, c).omega != t1.omega);
}

TEST_CASE("measurement noise leaves the dynamics clean") {
  const auto model = ring_model(12, 15, 4);
  const auto st = build_state_matrix(model);
  ScenarioConfig c = quiet({{3, 1.0, 0.5, 0.0}}, 10.0);
  const auto clean = simulate(model, st, c);
  c.sigma = 0.1;
  c.noise_mode = NoiseMode::measurement;
  const auto noisy = simulate(model, st, c);
  const Eigen::MatrixXd diff = noisy.omega - clean.omega;
  const double sd = std::sqrt(diff.array().square().mean());
  CHECK(sd == doctest::Approx(0.1).epsilon(0.05));
  CHECK(noisy.delta == clean.delta);
}

TEST_CASE("nonlinear model tracks the linearization for small forcing") {
  const auto model = ring_model(10, 15, 5);
  const auto st = build_state_matrix(model);
  ScenarioConfig c = quiet({{3, 0.05, 0.5, 0.0}});
  const auto lin = simulate(model, st, c);
  c.model_kind = ModelKind::nonlinear;
  const auto nl = simulate(model, st, c);
  CHECK((lin.omega - nl.omega).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("strong forcing breaks synchrony") {
  NodeParams params{Eigen::Vector2d(1, 1), Eigen::Vector2d(0.1, 0.1), Eigen::Vector2d(0, 0)};
  const auto model = with_solved_equilibrium(GridModel(GridTopology(2, {{0, 1, 1.0}}), params));
  ScenarioConfig c = quiet({{0, 20.0, 0.05, 0.0}}, 20.0);
  c.model_kind = ModelKind::nonlinear;
  CHECK_THROWS_AS(simulate(model, build_state_matrix(model), c), LossOfSynchrony);
}

TEST_CASE("model and noise names") {
  CHECK(parse_model_kind("nonlinear") == ModelKind::nonlinear);
  CHECK(to_string(NoiseMode::measurement) == "measurement");
  CHECK_THROWS_AS(parse_noise_mode("pink"), InvalidInput);
}
