#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace foloc {

/// Undirected weighted line. Stored with from < to.
struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  double coupling = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Connected, simple, symmetric coupling graph of an oscillator network.
 *
 * Construction validates: no self-loops, no duplicate lines, strictly
 * positive couplings, every index below node_count, and connectivity.
 * Edges are normalized so that from < to.
 */
class GridTopology {
 public:
  GridTopology(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbor lists; entry i holds (neighbor, coupling) pairs.
  const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const noexcept {
    return adjacency_;
  }

  std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }

  /// Same graph with every coupling replaced by `coupling`.
  GridTopology with_uniform_coupling(double coupling) const;

  /// Hop distances from `source` (breadth-first search).
  std::vector<std::size_t> hop_distances(std::size_t source) const;

  /// Nodes whose removal disconnects the graph.
  std::vector<bool> articulation_points() const;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

/// True when the undirected graph on `node_count` nodes is connected.
bool is_connected(std::size_t node_count, const std::vector<Edge>& edges);

/**
 * Parse an edge-list CSV: one `i,j,K` record per line, zero-based indices,
 * `#` starts a comment, blank lines ignored. Node count is 1 + largest index.
 * Errors name the offending line.
 */
GridTopology parse_topology(std::istream& in, std::string_view origin = "<stream>");
GridTopology load_topology(const std::filesystem::path& path);

enum class TopologyKind { ring, random_regular, rewired_lattice };

TopologyKind parse_topology_kind(std::string_view name);
std::string_view to_string(TopologyKind kind);

/**
 * Synthetic stand-in grids. All kinds are deterministic in `seed` and return
 * exactly `node_count` nodes and `edge_count` lines with uniform `coupling`.
 *
 *  - ring: the cycle 0-1-...-(n-1)-0; requires edge_count == node_count.
 *  - random_regular: near-regular degree sequence (degrees differ by at most
 *    one) paired uniformly at random, retried until simple and connected.
 *  - rewired_lattice: ring lattice with nearest neighbors plus evenly spread
 *    second-neighbor chords, each line rewired with probability 0.1 while
 *    keeping the graph simple and connected.
 */
GridTopology generate_topology(TopologyKind kind, std::size_t node_count, std::size_t edge_count,
                               std::uint64_t seed, double coupling = 15.0);

}  // namespace foloc
