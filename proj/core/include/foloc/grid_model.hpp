#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "foloc/topology.hpp"

namespace foloc {

/// Per-node physical parameters of the swing equation.
struct NodeParams {
  Eigen::VectorXd alpha;  ///< inertia coefficients, > 0
  Eigen::VectorXd beta;   ///< damping constants, > 0
  Eigen::VectorXd power;  ///< injections, sum to zero

  std::size_t size() const noexcept { return static_cast<std::size_t>(power.size()); }

  /// Throws InvalidInput unless sizes agree, alpha/beta are positive and power balances.
  void validate(std::size_t node_count) const;

  /**
   * alpha = beta = 1 everywhere and a seeded half/half split of +1 / -1
   * injections. An odd node count leaves one (seeded) node at zero.
   */
  static NodeParams defaults(std::size_t node_count, std::uint64_t seed);
};

/// Parse `i,alpha,beta,P` records. Every node must appear exactly once.
NodeParams parse_node_params(std::istream& in, std::size_t node_count,
                             std::string_view origin = "<stream>");
NodeParams load_node_params(const std::filesystem::path& path, std::size_t node_count);

/// Power-flow residual P_i - sum_j K_ij sin(delta_i - delta_j).
Eigen::VectorXd power_flow_residual(const GridTopology& topology, const Eigen::VectorXd& power,
                                    const Eigen::VectorXd& delta);

/// Oscillator-network model of a grid: topology, parameters, optional equilibrium.
class GridModel {
 public:
  GridModel(GridTopology topology, NodeParams params);

  const GridTopology& topology() const noexcept { return topology_; }
  const NodeParams& params() const noexcept { return params_; }
  std::size_t node_count() const noexcept { return topology_.node_count(); }

  const std::optional<Eigen::VectorXd>& equilibrium() const noexcept { return equilibrium_; }

  /// Copy with `delta` attached; rejects phases whose residual exceeds 1e-9.
  GridModel with_equilibrium(Eigen::VectorXd delta) const;

  /// Copy with all couplings set to `coupling` and the equilibrium cleared.
  GridModel with_uniform_coupling(double coupling) const;

 private:
  GridTopology topology_;
  NodeParams params_;
  std::optional<Eigen::VectorXd> equilibrium_;
};

struct EquilibriumOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;
};

/**
 * Newton's method on the power-flow residual from a flat start, gauge fixed
 * by delta_0 = 0. Throws NoSynchronousState when the iteration does not
 * converge or lands on a state with a line beyond 90 degrees.
 */
Eigen::VectorXd solve_equilibrium(const GridModel& model, const EquilibriumOptions& options = {});

/// Shorthand: solve and attach.
GridModel with_solved_equilibrium(const GridModel& model);

/// Weighted Laplacian linearized at `delta`: L_ij = -K_ij cos(d_i - d_j), rows sum to zero.
Eigen::MatrixXd linearized_laplacian(const GridTopology& topology, const Eigen::VectorXd& delta);

/**
 * Linearized state matrix over Y = [delta; omega]:
 *
 *     [  0         I      ]
 *     [ -H^-1 L   -H^-1 D ]
 *
 * `inverse_inertia` keeps diag(H^-1) so forcing can optionally be scaled the
 * same way the linearization scales injected power.
 */
struct StateMatrix {
  Eigen::MatrixXd phi;
  Eigen::VectorXd inverse_inertia;

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(phi.rows() / 2); }

  /// Wrap a raw 2N x 2N matrix; inverse inertia defaults to ones.
  static StateMatrix from_matrix(Eigen::MatrixXd phi);
};

StateMatrix build_state_matrix(const GridModel& model);

struct Mode {
  std::complex<double> eigenvalue;
  double frequency_hz = 0.0;   ///< |Im(lambda)| / 2pi
  double damping_ratio = 1.0;  ///< -Re(lambda)/|lambda|; 1 for the zero eigenvalue
  Eigen::VectorXcd shape;      ///< unit Euclidean norm, length 2N
  std::size_t dominant_node = 0;
};

struct ModalStructure {
  std::vector<Mode> modes;  ///< ascending natural frequency
};

ModalStructure modal_analysis(const StateMatrix& state);

struct ResonancePick {
  double frequency_hz = 0.0;
  std::size_t resonator = 0;
};

/**
 * Least-damped underdamped mode whose dominant node differs from
 * `exclude_node`. Throws InvalidInput("no qualifying mode") otherwise.
 */
ResonancePick pick_resonant_frequency(const ModalStructure& modes, std::size_t exclude_node);

}  // namespace foloc
