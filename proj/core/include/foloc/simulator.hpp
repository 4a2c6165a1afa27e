#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <vector>

#include "foloc/grid_model.hpp"

namespace foloc {

/// Sinusoidal forced-oscillation injection at one node.
struct FOSource {
  std::size_t node = 0;
  double gamma = 1.0;  ///< amplitude, per-unit
  double f = 0.5;      ///< Hz
  double phase = 0.0;  ///< cycles: argument is 2pi(f t + phase)
};

/// gamma * cos(2pi (f t + phase)).
double fo_signal(const FOSource& src, double t) noexcept;

enum class ModelKind { linear, nonlinear };
enum class NoiseMode {
  process,      ///< sigma*sqrt(dt)*N(0,1) added to every omega row each step
  measurement,  ///< noise-free dynamics, sigma*N(0,1) added to each recorded omega sample
};

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);
NoiseMode parse_noise_mode(std::string_view name);
std::string_view to_string(NoiseMode mode);

struct ScenarioConfig {
  std::vector<FOSource> sources;
  double sigma = 0.05;
  double duration = 30.0;  ///< seconds
  double dt = 0.01;        ///< seconds
  std::uint64_t seed = 1;
  ModelKind model_kind = ModelKind::linear;
  NoiseMode noise_mode = NoiseMode::process;
  /// Divide forcing and process noise by the node inertia in the linear model.
  bool scale_forcing_by_inertia = false;

  /// round(duration / dt)
  std::size_t sample_count() const;

  /// Throws InvalidInput on non-positive duration/dt, negative sigma,
  /// invalid or repeated source nodes, or sources with gamma/f <= 0.
  void validate(std::size_t node_count) const;
};

/**
 * Sampled response of every node. Column k holds the state at t = k * dt,
 * k = 0 .. T-1, with column 0 the (zero-deviation) initial condition.
 */
struct Trajectory {
  double dt = 0.01;
  Eigen::MatrixXd omega;  ///< N x T angular-speed deviations, rad/s
  Eigen::MatrixXd delta;  ///< N x T phase deviations, rad

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(omega.rows()); }
  std::size_t sample_count() const noexcept { return static_cast<std::size_t>(omega.cols()); }
};

/**
 * Integrates Y' = Phi Y + forcing + noise from Y(0) = 0.
 *
 * The drift (including the sinusoidal forcing) advances with classical RK4;
 * process noise enters as an Euler-Maruyama increment on the omega rows after
 * each drift step. Throws Divergence once any |state| exceeds 1e6.
 */
Trajectory simulate_linear(const StateMatrix& state, const ScenarioConfig& scenario);

/**
 * Integrates the swing equation with the forcing added to P_i, starting at
 * the solved equilibrium. Reports deviations from (delta*, 0). Same RK4 +
 * Euler-Maruyama splitting as simulate_linear. Throws LossOfSynchrony when a
 * line's phase difference departs more than 2pi from equilibrium, Divergence
 * on non-finite or unbounded state.
 */
Trajectory simulate_nonlinear(const GridModel& model, const ScenarioConfig& scenario);

/// Dispatches on scenario.model_kind.
Trajectory simulate(const GridModel& model, const StateMatrix& state,
                    const ScenarioConfig& scenario);

/**
 * Steady periodic response (i 2pi f I - Phi)^-1 b with b = gamma e^{i 2pi phase}
 * at the source's omega row. |entry| is the oscillation amplitude of that
 * state. Throws NumericalError when the system is singular (exact resonance).
 */
Eigen::VectorXcd steady_state_response(const StateMatrix& state, const FOSource& src);

}  // namespace foloc
