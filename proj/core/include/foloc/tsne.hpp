#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace foloc {

/// Exact t-SNE on a precomputed distance matrix.
struct TsneOptions {
  double perplexity = 30.0;
  int iterations = 1000;
  std::uint64_t seed = 42;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iteration = 250;
  double init_stddev = 1e-4;
  double perplexity_tolerance = 1e-5;
  int perplexity_search_steps = 50;
};

/// 2-D point set with [0,1] per-axis coordinates.
struct Embedding2D {
  Eigen::MatrixXd points;  ///< N x 2
  std::uint64_t seed = 0;
  double perplexity = 0.0;
  int iterations = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(points.rows()); }
};

/**
 * Conditional Gaussian affinities calibrated by binary search on the
 * precision so each row's perplexity matches the target, then symmetrized
 * and normalized to sum to one. Input distances are squared internally.
 */
Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& distances, const TsneOptions& options);

/**
 * Raw 2-D layout (not normalized). Gradient descent with momentum and
 * per-coordinate gains, early exaggeration, seeded Gaussian start.
 * Deterministic for a fixed seed. An all-zero distance matrix yields all
 * points at the origin.
 *
 * Throws InvalidInput on non-square, asymmetric, negative or non-finite
 * distances, a non-zero diagonal, fewer than 3 points, or a perplexity
 * outside [1, N-1).
 */
Eigen::MatrixXd tsne_layout(const Eigen::MatrixXd& distances, const TsneOptions& options = {});

/// Per-axis min-max scaling to [0, 1]; a constant axis maps to zero.
Embedding2D normalize_embedding(const Eigen::MatrixXd& points);

/// tsne_layout followed by normalize_embedding.
Embedding2D tsne_embed(const Eigen::MatrixXd& distances, const TsneOptions& options = {});

}  // namespace foloc
