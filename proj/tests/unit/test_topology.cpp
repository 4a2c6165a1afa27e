#include <doctest.h>

#include <numeric>
#include <sstream>

#include "foloc/error.hpp"
#include "foloc/topology.hpp"

using namespace foloc;

TEST_CASE("edge list parsing") {
  std::istringstream in("# three-node path\n0,1,2.5\n\n2,1,1.0  # reversed is fine\n");
  const auto topo = parse_topology(in, "path.csv");
  CHECK(topo.node_count() == 3);
  REQUIRE(topo.edge_count() == 2);
  CHECK(topo.edges()[1] == Edge{1, 2, 1.0});
  CHECK(topo.degree(1) == 2);
}

TEST_CASE("edge list errors name the line") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_topology(in, "g.csv");
  };
  CHECK_THROWS_WITH_AS(parse("0,1,1\n1,1,1\n"), doctest::Contains("g.csv:2"), InvalidInput);
  CHECK_THROWS_AS(parse("0,1,1\n0,1,2\n"), InvalidInput);         // duplicate
  CHECK_THROWS_AS(parse("0,1,-1\n"), InvalidInput);               // non-positive coupling
  CHECK_THROWS_AS(parse("0,1\n"), InvalidInput);                  // short record
  CHECK_THROWS_AS(parse("0,x,1\n"), InvalidInput);                // not a number
  CHECK_THROWS_WITH_AS(parse("0,1,1\n2,3,1\n"), doctest::Contains("disconnected"), InvalidInput);
  CHECK_THROWS_AS(parse("# nothing\n"), InvalidInput);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(GridTopology(2, {{0, 2, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(GridTopology(2, {{0, 0, 1.0}}), InvalidInput);
  CHECK_NOTHROW(GridTopology(2, {{1, 0, 1.0}}));
  CHECK(GridTopology(2, {{1, 0, 1.0}}).edges()[0].from == 0);
}

TEST_CASE("hop distances and articulation points") {
  // 0-1-2-3 path with a triangle 3-4-5.
  GridTopology topo(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  const auto hops = topo.hop_distances(0);
  CHECK(hops == std::vector<std::size_t>{0, 1, 2, 3, 4, 4});
  const auto cut = topo.articulation_points();
  CHECK(cut == std::vector<bool>{false, true, true, true, false, false});
}

TEST_CASE("uniform coupling") {
  GridTopology topo(3, {{0, 1, 1.0}, {1, 2, 4.0}});
  const auto u = topo.with_uniform_coupling(15.0);
  for (const auto& e : u.edges()) CHECK(e.coupling == 15.0);
  CHECK_THROWS_AS(topo.with_uniform_coupling(0.0), InvalidInput);
}

TEST_CASE("generators") {
  SUBCASE("desk lattice: 120 nodes, 165 lines, connected") {
    const auto g = generate_topology(TopologyKind::rewired_lattice, 120, 165, 7);
    CHECK(g.node_count() == 120);
    CHECK(g.edge_count() == 165);
    CHECK(is_connected(120, g.edges()));
    const auto hops = g.hop_distances(0);
    CHECK(std::none_of(hops.begin(), hops.end(),
                       [](std::size_t h) { return h == std::numeric_limits<std::size_t>::max(); }));
  }
  SUBCASE("ring") {
    const auto g = generate_topology(TopologyKind::ring, 10, 10, 1);
    for (std::size_t i = 0; i < 10; ++i) CHECK(g.degree(i) == 2);
    CHECK_THROWS_AS(generate_topology(TopologyKind::ring, 10, 11, 1), InvalidInput);
  }
  SUBCASE("random regular degrees differ by at most one") {
    const auto g = generate_topology(TopologyKind::random_regular, 40, 60, 3);
    CHECK(g.edge_count() == 60);
    for (std::size_t i = 0; i < 40; ++i) CHECK(g.degree(i) == 3);
  }
  SUBCASE("deterministic in the seed") {
    const auto a = generate_topology(TopologyKind::rewired_lattice, 50, 70, 11);
    const auto b = generate_topology(TopologyKind::rewired_lattice, 50, 70, 11);
    CHECK(a.edges() == b.edges());
  }
  SUBCASE("infeasible edge counts") {
    CHECK_THROWS_AS(generate_topology(TopologyKind::rewired_lattice, 10, 8, 1), InvalidInput);
    CHECK_THROWS_AS(generate_topology(TopologyKind::random_regular, 5, 11, 1), InvalidInput);
  }
  SUBCASE("kind names") {
    CHECK(parse_topology_kind("rewired-lattice") == TopologyKind::rewired_lattice);
    CHECK(to_string(TopologyKind::random_regular) == "random-regular");
    CHECK_THROWS_AS(parse_topology_kind("mesh"), InvalidInput);
  }
}
