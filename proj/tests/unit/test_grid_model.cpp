#include <doctest.h>

#include <cmath>
#include <sstream>

#include "foloc/error.hpp"
#include "foloc/grid_model.hpp"

using namespace foloc;

namespace {

GridModel two_node(double p, double k, Eigen::Vector2d alpha = {1, 1}, Eigen::Vector2d beta = {1, 1}) {
  NodeParams params{alpha, beta, Eigen::Vector2d(p, -p)};
  return GridModel(GridTopology(2, {{0, 1, k}}), params);
}

}  // namespace

TEST_CASE("two-node equilibrium angle") {
  const auto delta = solve_equilibrium(two_node(1.0, 2.0));
  CHECK(delta[0] == 0.0);
  CHECK(delta[0] - delta[1] == doctest::Approx(std::asin(0.5)).epsilon(1e-12));
  CHECK(delta[0] - delta[1] == doctest::Approx(0.5236).epsilon(1e-4));
}

TEST_CASE("zero injections give the flat state") {
  const auto topo = GridTopology(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {0, 3, 3}});
  NodeParams params{Eigen::VectorXd::Ones(4), Eigen::VectorXd::Ones(4), Eigen::VectorXd::Zero(4)};
  const auto delta = solve_equilibrium(GridModel(topo, params));
  CHECK(delta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("overloaded line has no synchronous state") {
  CHECK_THROWS_WITH_AS(solve_equilibrium(two_node(3.0, 2.0)), doctest::Contains("no synchronous state"),
                       NoSynchronousState);
}

TEST_CASE("node parameter validation") {
  CHECK_THROWS_AS(GridModel(GridTopology(2, {{0, 1, 1}}),
                            NodeParams{Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 0)}),
                  InvalidInput);
  CHECK_THROWS_AS(GridModel(GridTopology(2, {{0, 1, 1}}),
                            NodeParams{Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 0)}),
                  InvalidInput);
  const auto d = NodeParams::defaults(120, 1);
  CHECK(d.power.sum() == 0.0);
  CHECK((d.power.array() == 1.0).count() == 60);
  CHECK(d.alpha.isOnes());
  std::istringstream in("1,2,0.5,-1\n0,1,1,1\n");
  const auto parsed = parse_node_params(in, 2);
  CHECK(parsed.alpha[1] == 2.0);
  CHECK(parsed.beta[1] == 0.5);
  std::istringstream missing("0,1,1,0\n");
  CHECK_THROWS_AS(parse_node_params(missing, 2), InvalidInput);
}

TEST_CASE("equilibrium attachment checks the residual") {
  const auto model = two_node(1.0, 2.0);
  CHECK_THROWS_AS(model.with_equilibrium(Eigen::Vector2d(0.0, 0.1)), InvalidInput);
  const auto solved = with_solved_equilibrium(model);
  REQUIRE(solved.equilibrium());
  CHECK(power_flow_residual(solved.topology(), solved.params().power, *solved.equilibrium())
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("Laplacian and state matrix blocks") {
  const auto model = with_solved_equilibrium(two_node(0.0, 5.0));
  const auto lap = linearized_laplacian(model.topology(), *model.equilibrium());
  CHECK(lap.isApprox((Eigen::Matrix2d() << 5, -5, -5, 5).finished()));
  const auto st = build_state_matrix(model);
  CHECK(st.phi.topLeftCorner(2, 2).isZero(0.0));
  CHECK(st.phi.topRightCorner(2, 2).isIdentity(0.0));
  CHECK(st.phi.bottomLeftCorner(2, 2).isApprox((Eigen::Matrix2d() << -5, 5, 5, -5).finished()));
  CHECK(st.phi.bottomRightCorner(2, 2).isApprox(-Eigen::Matrix2d::Identity()));
  CHECK_THROWS_AS(build_state_matrix(two_node(0.0, 5.0)), InvalidInput);
}

TEST_CASE("Laplacian rows sum to zero at a loaded equilibrium") {
  const auto topo = generate_topology(TopologyKind::rewired_lattice, 30, 40, 2, 8.0);
  const auto model = with_solved_equilibrium(GridModel(topo, NodeParams::defaults(30, 5)));
  const auto lap = linearized_laplacian(model.topology(), *model.equilibrium());
  CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((lap - lap.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("three-node path spectrum") {
  const auto topo = GridTopology(3, {{0, 1, 1}, {1, 2, 1}});
  NodeParams params{Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3)};
  const auto st = build_state_matrix(with_solved_equilibrium(GridModel(topo, params)));
  const Eigen::VectorXcd ev = st.phi.eigenvalues();
  int zeros = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    CHECK(ev[i].real() <= 1e-12);
    if (std::abs(ev[i]) < 1e-9) ++zeros;
  }
  CHECK(zeros == 1);  // the uniform phase shift; its partner sits at -beta/alpha
}

TEST_CASE("two-node undamped mode frequency") {
  // P = K sin(pi/6) puts the line at 30 degrees.
  const auto model = with_solved_equilibrium(two_node(1.0, 2.0, {1, 1}, {1e-12, 1e-12}));
  const auto modes = modal_analysis(build_state_matrix(model));
  const double expected = std::sqrt(2.0 * 2.0 * std::cos(M_PI / 6.0)) / (2.0 * M_PI);
  CHECK(modes.modes.back().frequency_hz == doctest::Approx(expected).epsilon(1e-6));
  CHECK(modes.modes.back().frequency_hz == doctest::Approx(0.296).epsilon(1e-3));
}

TEST_CASE("modal structure invariants") {
  const auto topo = generate_topology(TopologyKind::rewired_lattice, 120, 165, 7);
  const auto model = with_solved_equilibrium(GridModel(topo, NodeParams::defaults(120, 1)));
  const auto modes = modal_analysis(build_state_matrix(model));
  REQUIRE(modes.modes.size() == 240);
  int positive = 0, negative = 0;
  for (std::size_t i = 0; i < modes.modes.size(); ++i) {
    const auto& m = modes.modes[i];
    CHECK(m.eigenvalue.real() <= 1e-9);
    CHECK(m.frequency_hz >= 0.0);
    CHECK(m.frequency_hz < 5.0);
    CHECK(m.shape.norm() == doctest::Approx(1.0));
    if (i > 0) CHECK(m.frequency_hz >= modes.modes[i - 1].frequency_hz);
    positive += m.eigenvalue.imag() > 1e-9;
    negative += m.eigenvalue.imag() < -1e-9;
  }
  CHECK(positive == negative);
}

TEST_CASE("resonant frequency pick") {
  // The lighter node swings harder in the single oscillatory mode.
  const auto model = with_solved_equilibrium(two_node(0.0, 4.0, {2, 1}));
  const auto modes = modal_analysis(build_state_matrix(model));
  const auto pick = pick_resonant_frequency(modes, 0);
  CHECK(pick.resonator == 1);
  CHECK(pick.frequency_hz == doctest::Approx(modes.modes.back().frequency_hz));
  CHECK_THROWS_WITH_AS(pick_resonant_frequency(modes, 1), doctest::Contains("no qualifying mode"),
                       InvalidInput);

  const auto topo = generate_topology(TopologyKind::rewired_lattice, 120, 165, 7);
  const auto desk = with_solved_equilibrium(GridModel(topo, NodeParams::defaults(120, 1)));
  const auto desk_modes = modal_analysis(build_state_matrix(desk));
  std::size_t leaf = 0;
  while (topo.degree(leaf) != 1) ++leaf;
  const auto p = pick_resonant_frequency(desk_modes, leaf);
  CHECK(p.resonator != leaf);
  CHECK(p.frequency_hz > 0.0);
  CHECK(p.frequency_hz < 5.0);
}
