#include "foloc/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "foloc/error.hpp"

namespace foloc {

void NodeParams::validate(std::size_t node_count) const {
  const auto n = static_cast<Eigen::Index>(node_count);
  if (alpha.size() != n || beta.size() != n || power.size() != n) {
    throw InvalidInput("node params: expected " + std::to_string(node_count) + " entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(alpha[i] > 0.0) || !(beta[i] > 0.0)) {
      throw InvalidInput("node params: alpha and beta must be positive at node " +
                         std::to_string(i));
    }
  }
  if (std::abs(power.sum()) > 1e-9) {
    throw InvalidInput("node params: injections do not balance (sum P = " +
                       std::to_string(power.sum()) + ")");
  }
}

NodeParams NodeParams::defaults(std::size_t node_count, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(node_count);
  NodeParams p{Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n)};
  std::vector<std::size_t> order(node_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t half = node_count / 2;
  for (std::size_t k = 0; k < half; ++k) {
    p.power[static_cast<Eigen::Index>(order[k])] = 1.0;
    p.power[static_cast<Eigen::Index>(order[half + k])] = -1.0;
  }
  return p;
}

NodeParams parse_node_params(std::istream& in, std::size_t node_count, std::string_view origin) {
  const auto n = static_cast<Eigen::Index>(node_count);
  NodeParams p{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  std::vector<bool> seen(node_count, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string record = line;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long i = -1;
    double a = 0, b = 0, pw = 0;
    auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    if (!(fields >> i >> a >> b >> pw)) {
      throw InvalidInput(where + "expected i,alpha,beta,P in record '" + record + "'");
    }
    if (i < 0 || static_cast<std::size_t>(i) >= node_count) {
      throw InvalidInput(where + "node index out of range in record '" + record + "'");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      throw InvalidInput(where + "duplicate node in record '" + record + "'");
    }
    seen[static_cast<std::size_t>(i)] = true;
    p.alpha[i] = a;
    p.beta[i] = b;
    p.power[i] = pw;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidInput(std::string(origin) + ": missing records for some nodes");
  }
  p.validate(node_count);
  return p;
}

NodeParams load_node_params(const std::filesystem::path& path, std::size_t node_count) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open node-parameter file " + path.string());
  return parse_node_params(in, node_count, path.string());
}

Eigen::VectorXd power_flow_residual(const GridTopology& topology, const Eigen::VectorXd& power,
                                    const Eigen::VectorXd& delta) {
  Eigen::VectorXd r = power;
  for (const auto& e : topology.edges()) {
    const auto i = static_cast<Eigen::Index>(e.from);
    const auto j = static_cast<Eigen::Index>(e.to);
    const double flow = e.coupling * std::sin(delta[i] - delta[j]);
    r[i] -= flow;
    r[j] += flow;
  }
  return r;
}

GridModel::GridModel(GridTopology topology, NodeParams params)
    : topology_(std::move(topology)), params_(std::move(params)) {
  params_.validate(topology_.node_count());
}

GridModel GridModel::with_equilibrium(Eigen::VectorXd delta) const {
  if (delta.size() != static_cast<Eigen::Index>(node_count())) {
    throw InvalidInput("equilibrium: phase vector has the wrong length");
  }
  const auto r = power_flow_residual(topology_, params_.power, delta);
  if (r.cwiseAbs().maxCoeff() >= 1e-9) {
    throw InvalidInput("equilibrium: power-flow residual exceeds 1e-9");
  }
  GridModel copy = *this;
  copy.equilibrium_ = std::move(delta);
  return copy;
}

GridModel GridModel::with_uniform_coupling(double coupling) const {
  return GridModel(topology_.with_uniform_coupling(coupling), params_);
}

Eigen::MatrixXd linearized_laplacian(const GridTopology& topology, const Eigen::VectorXd& delta) {
  const auto n = static_cast<Eigen::Index>(topology.node_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : topology.edges()) {
    const auto i = static_cast<Eigen::Index>(e.from);
    const auto j = static_cast<Eigen::Index>(e.to);
    const double w = e.coupling * std::cos(delta[i] - delta[j]);
    lap(i, j) -= w;
    lap(j, i) -= w;
    lap(i, i) += w;
    lap(j, j) += w;
  }
  return lap;
}

Eigen::VectorXd solve_equilibrium(const GridModel& model, const EquilibriumOptions& options) {
  const auto n = static_cast<Eigen::Index>(model.node_count());
  const auto& topo = model.topology();
  const auto& power = model.params().power;
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  if (n == 1) return delta;

  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd r = power_flow_residual(topo, power, delta);
    if (r.cwiseAbs().maxCoeff() < options.tolerance) {
      // A converged state with a line past 90 degrees is not a stable synchronous state.
      for (const auto& e : topo.edges()) {
        const double diff = delta[static_cast<Eigen::Index>(e.from)] -
                            delta[static_cast<Eigen::Index>(e.to)];
        if (std::cos(diff) <= 0.0) {
          throw NoSynchronousState("solve_equilibrium: no synchronous state (line " +
                                   std::to_string(e.from) + "-" + std::to_string(e.to) +
                                   " beyond 90 degrees)");
        }
      }
      return delta;
    }
    if (it == options.max_iterations) break;
    // d r / d delta = -L; drop node 0 to fix the gauge.
    const Eigen::MatrixXd lap = linearized_laplacian(topo, delta);
    const Eigen::MatrixXd reduced = lap.bottomRightCorner(n - 1, n - 1);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(reduced);
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd step = lu.solve(r.tail(n - 1));
    if (!step.allFinite()) break;
    delta.tail(n - 1) += step;
  }
  throw NoSynchronousState("solve_equilibrium: no synchronous state (Newton did not converge in " +
                           std::to_string(options.max_iterations) + " iterations)");
}

GridModel with_solved_equilibrium(const GridModel& model) {
  return model.with_equilibrium(solve_equilibrium(model));
}

StateMatrix StateMatrix::from_matrix(Eigen::MatrixXd phi) {
  if (phi.rows() != phi.cols() || phi.rows() % 2 != 0 || phi.rows() == 0) {
    throw InvalidInput("state matrix must be square with even dimension");
  }
  StateMatrix s{std::move(phi), {}};
  s.inverse_inertia = Eigen::VectorXd::Ones(s.phi.rows() / 2);
  return s;
}

StateMatrix build_state_matrix(const GridModel& model) {
  if (!model.equilibrium()) throw InvalidInput("build_state_matrix: equilibrium unset");
  const auto n = static_cast<Eigen::Index>(model.node_count());
  const auto& p = model.params();
  const Eigen::MatrixXd lap = linearized_laplacian(model.topology(), *model.equilibrium());
  const Eigen::VectorXd inv_h = p.alpha.cwiseInverse();

  StateMatrix s;
  s.phi = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.phi.topRightCorner(n, n).setIdentity();
  s.phi.bottomLeftCorner(n, n) = -(inv_h.asDiagonal() * lap);
  s.phi.bottomRightCorner(n, n) = -(inv_h.cwiseProduct(p.beta)).asDiagonal().toDenseMatrix();
  s.inverse_inertia = inv_h;
  return s;
}

ModalStructure modal_analysis(const StateMatrix& state) {
  const auto dim = state.phi.rows();
  const auto n = dim / 2;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(state.phi, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("modal_analysis: eigensolver did not converge");
  }
  ModalStructure out;
  out.modes.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Mode mode;
    mode.eigenvalue = solver.eigenvalues()[k];
    mode.frequency_hz = std::abs(mode.eigenvalue.imag()) / (2.0 * M_PI);
    const double mag = std::abs(mode.eigenvalue);
    mode.damping_ratio = mag > 0.0 ? -mode.eigenvalue.real() / mag : 1.0;
    mode.shape = solver.eigenvectors().col(k);
    const double norm = mode.shape.norm();
    if (norm > 0.0) mode.shape /= norm;
    Eigen::Index dom = 0;
    mode.shape.tail(n).cwiseAbs().maxCoeff(&dom);
    mode.dominant_node = static_cast<std::size_t>(dom);
    out.modes.push_back(std::move(mode));
  }
  std::stable_sort(out.modes.begin(), out.modes.end(), [](const Mode& a, const Mode& b) {
    if (a.frequency_hz != b.frequency_hz) return a.frequency_hz < b.frequency_hz;
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() > b.eigenvalue.real();
    return a.eigenvalue.imag() > b.eigenvalue.imag();
  });
  return out;
}

ResonancePick pick_resonant_frequency(const ModalStructure& modes, std::size_t exclude_node) {
  const Mode* best = nullptr;
  for (const auto& m : modes.modes) {
    if (m.eigenvalue.imag() <= 0.0) continue;  // one representative per conjugate pair
    if (m.dominant_node == exclude_node) continue;
    if (best == nullptr || m.damping_ratio < best->damping_ratio) best = &m;
  }
  if (best == nullptr) throw InvalidInput("pick_resonant_frequency: no qualifying mode");
  return {best->frequency_hz, best->dominant_node};
}

}  // namespace foloc
