#pragma once

#include <Eigen/Dense>
#include <vector>

#include "foloc/tsne.hpp"

namespace foloc {

struct AverageDistances {
  Eigen::MatrixXd distances;  ///< N x N Euclidean, symmetric, zero diagonal
  Eigen::VectorXd average;    ///< row sums / (N-1)
};

/// Pairwise Euclidean distances of the embedded points and their per-node means.
AverageDistances average_distances(const Eigen::MatrixXd& points);

/// mean(avg) + k * std(avg), population standard deviation.
double chebyshev_threshold(const Eigen::VectorXd& avg, double k = 5.0);

/// Indices i with avg[i] > threshold, ascending. May be empty.
std::vector<std::size_t> locate(const Eigen::VectorXd& avg, double threshold);

struct LocatorOptions {
  TsneOptions tsne;
  /// Scale the t-SNE layout to [0,1] per axis before measuring distances.
  bool normalize_first = true;
  double threshold_k = 5.0;
};

struct LocationReport {
  Embedding2D embedding;
  Eigen::MatrixXd distance_matrix;
  Eigen::VectorXd avg_distances;
  double threshold = 0.0;
  std::vector<std::size_t> outliers;
};

/// Embed the field distances, then flag nodes whose average distance exceeds
/// the Chebyshev threshold.
LocationReport locate_from_field_distances(const Eigen::MatrixXd& field_distances,
                                           const LocatorOptions& options);

}  // namespace foloc
