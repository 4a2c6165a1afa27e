#include "foloc/topology.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "foloc/error.hpp"

namespace foloc {

namespace {

std::vector<std::vector<std::size_t>> plain_adjacency(std::size_t node_count,
                                                      const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(node_count);
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  return adj;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_connected(std::size_t node_count, const std::vector<Edge>& edges) {
  if (node_count == 0) return false;
  const auto adj = plain_adjacency(node_count, edges);
  std::vector<bool> seen(node_count, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == node_count;
}

GridTopology::GridTopology(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)), adjacency_(node_count) {
  if (node_count_ == 0) throw InvalidInput("topology: node_count must be positive");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges_) {
    if (e.from == e.to) {
      throw InvalidInput("topology: self-loop at node " + std::to_string(e.from));
    }
    if (e.from > e.to) std::swap(e.from, e.to);
    if (e.to >= node_count_) {
      throw InvalidInput("topology: edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                         ") references a node outside [0," + std::to_string(node_count_) + ")");
    }
    if (!(e.coupling > 0.0)) {
      throw InvalidInput("topology: non-positive coupling on edge (" + std::to_string(e.from) +
                         "," + std::to_string(e.to) + ")");
    }
    if (!seen.emplace(e.from, e.to).second) {
      throw InvalidInput("topology: duplicate edge (" + std::to_string(e.from) + "," +
                         std::to_string(e.to) + ")");
    }
    adjacency_[e.from].emplace_back(e.to, e.coupling);
    adjacency_[e.to].emplace_back(e.from, e.coupling);
  }
  if (!is_connected(node_count_, edges_)) throw InvalidInput("topology: disconnected graph");
}

GridTopology GridTopology::with_uniform_coupling(double coupling) const {
  auto edges = edges_;
  for (auto& e : edges) e.coupling = coupling;
  return GridTopology(node_count_, std::move(edges));
}

std::vector<std::size_t> GridTopology::hop_distances(std::size_t source) const {
  constexpr auto unreachable = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(node_count_, unreachable);
  std::queue<std::size_t> queue;
  dist.at(source) = 0;
  queue.push(source);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop();
    for (const auto& [w, k] : adjacency_[v]) {
      if (dist[w] == unreachable) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

std::vector<bool> GridTopology::articulation_points() const {
  // Tarjan low-link; graphs here are small enough for recursion.
  std::vector<std::size_t> disc(node_count_, 0), low(node_count_, 0);
  std::vector<bool> result(node_count_, false);
  std::size_t timer = 0;
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t v, std::size_t parent) {
    disc[v] = low[v] = ++timer;
    std::size_t children = 0;
    for (const auto& [w, k] : adjacency_[v]) {
      if (disc[w] == 0) {
        ++children;
        visit(w, v);
        low[v] = std::min(low[v], low[w]);
        if (parent != node_count_ && low[w] >= disc[v]) result[v] = true;
      } else if (w != parent) {
        low[v] = std::min(low[v], disc[w]);
      }
    }
    if (parent == node_count_ && children > 1) result[v] = true;
  };
  visit(0, node_count_);
  return result;
}

GridTopology parse_topology(std::istream& in, std::string_view origin) {
  std::vector<Edge> edges;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return InvalidInput(std::string(origin) + ":" + std::to_string(line_no) + ": " + why +
                          " in record '" + line + "'");
    };
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long i = -1, j = -1;
    double k = 0.0;
    std::string extra;
    if (!(fields >> i >> j >> k)) throw fail("expected i,j,K");
    if (fields >> extra) throw fail("trailing field");
    if (i < 0 || j < 0) throw fail("negative node index");
    if (!(k > 0.0)) throw fail("non-positive coupling");
    if (i == j) throw fail("self-loop");
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), k});
    max_index = std::max({max_index, static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  if (edges.empty()) throw InvalidInput(std::string(origin) + ": no edge records");
  try {
    return GridTopology(max_index + 1, std::move(edges));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(origin) + ": " + e.what());
  }
}

GridTopology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open topology file " + path.string());
  return parse_topology(in, path.string());
}

TopologyKind parse_topology_kind(std::string_view name) {
  if (name == "ring") return TopologyKind::ring;
  if (name == "random-regular") return TopologyKind::random_regular;
  if (name == "rewired-lattice") return TopologyKind::rewired_lattice;
  throw InvalidInput("unknown topology kind '" + std::string(name) + "'");
}

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::ring: return "ring";
    case TopologyKind::random_regular: return "random-regular";
    case TopologyKind::rewired_lattice: return "rewired-lattice";
  }
  return "?";
}

namespace {

std::vector<Edge> random_regular_edges(std::size_t n, std::size_t m, std::mt19937_64& rng,
                                       double coupling) {
  constexpr int max_attempts = 2000;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t base = 2 * m / n;
    const std::size_t extra = 2 * m % n;
    std::vector<std::size_t> stubs;
    stubs.reserve(2 * m);
    for (std::size_t r = 0; r < n; ++r) {
      const auto deg = base + (r < extra ? 1 : 0);
      for (std::size_t c = 0; c < deg; ++c) stubs.push_back(order[r]);
    }
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
      auto a = stubs[s], b = stubs[s + 1];
      if (a == b) { simple = false; break; }
      if (a > b) std::swap(a, b);
      if (!seen.emplace(a, b).second) { simple = false; break; }
      edges.push_back({a, b, coupling});
    }
    if (simple && is_connected(n, edges)) return edges;
  }
  throw NumericalError("generate_topology: random-regular generation failed to reach a connected "
                       "simple graph after " + std::to_string(max_attempts) + " attempts");
}

std::vector<Edge> rewired_lattice_edges(std::size_t n, std::size_t m, std::mt19937_64& rng,
                                        double coupling) {
  constexpr double rewire_probability = 0.1;
  std::set<std::pair<std::size_t, std::size_t>> present;
  std::vector<Edge> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    if (!present.emplace(a, b).second) return false;
    edges.push_back({a, b, coupling});
    return true;
  };
  // Ring backbone (a path when only n-1 lines are requested).
  for (std::size_t i = 0; i + 1 < n; ++i) add(i, i + 1);
  if (m >= n && n > 2) add(n - 1, 0);
  // Chords at growing offsets, spread evenly around the ring.
  for (std::size_t offset = 2; edges.size() < m && offset <= n / 2; ++offset) {
    const std::size_t wanted = std::min(m - edges.size(), n);
    for (std::size_t k = 0; k < wanted && edges.size() < m; ++k) {
      const std::size_t i = k * n / wanted;
      add(i, (i + offset) % n);
    }
    for (std::size_t i = 0; i < n && edges.size() < m; ++i) add(i, (i + offset) % n);
  }
  if (edges.size() != m) {
    throw InvalidInput("generate_topology: infeasible edge count for rewired-lattice");
  }

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    if (coin(rng) >= rewire_probability) continue;
    const auto old = edges[idx];
    const auto target = pick(rng);
    auto a = old.from, b = target;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (present.count({a, b})) continue;
    edges[idx] = {a, b, coupling};
    if (!is_connected(n, edges)) {
      edges[idx] = old;
      continue;
    }
    present.erase({old.from, old.to});
    present.emplace(a, b);
  }
  return edges;
}

}  // namespace

GridTopology generate_topology(TopologyKind kind, std::size_t node_count, std::size_t edge_count,
                               std::uint64_t seed, double coupling) {
  const auto n = node_count;
  if (n < 2) throw InvalidInput("generate_topology: infeasible: need at least 2 nodes");
  if (edge_count + 1 < n) {
    throw InvalidInput("generate_topology: infeasible: " + std::to_string(edge_count) +
                       " edges < n-1 = " + std::to_string(n - 1));
  }
  if (edge_count > n * (n - 1) / 2) {
    throw InvalidInput("generate_topology: infeasible: more edges than a complete graph holds");
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  switch (kind) {
    case TopologyKind::ring:
      if (edge_count != n || n < 3) {
        throw InvalidInput("generate_topology: infeasible: a ring on n nodes has exactly n edges");
      }
      for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, coupling});
      break;
    case TopologyKind::random_regular:
      edges = random_regular_edges(n, edge_count, rng, coupling);
      break;
    case TopologyKind::rewired_lattice:
      edges = rewired_lattice_edges(n, edge_count, rng, coupling);
      break;
  }
  return GridTopology(n, std::move(edges));
}

}  // namespace foloc
