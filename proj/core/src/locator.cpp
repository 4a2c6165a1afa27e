#include "foloc/locator.hpp"

#include <cmath>

#include "foloc/error.hpp"

namespace foloc {

AverageDistances average_distances(const Eigen::MatrixXd& points) {
  const auto n = points.rows();
  if (n < 2) throw InvalidInput("average_distances: need at least 2 points");
  AverageDistances out;
  out.distances = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (points.row(i) - points.row(j)).norm();
      out.distances(i, j) = v;
      out.distances(j, i) = v;
    }
  }
  out.average = out.distances.rowwise().sum() / static_cast<double>(n - 1);
  return out;
}

double chebyshev_threshold(const Eigen::VectorXd& avg, double k) {
  if (avg.size() < 2) throw InvalidInput("chebyshev_threshold: need at least 2 values");
  const double mean = avg.mean();
  const double var = (avg.array() - mean).square().mean();
  return mean + k * std::sqrt(var);
}

std::vector<std::size_t> locate(const Eigen::VectorXd& avg, double threshold) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < avg.size(); ++i) {
    if (avg[i] > threshold) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

LocationReport locate_from_field_distances(const Eigen::MatrixXd& field_distances,
                                           const LocatorOptions& options) {
  LocationReport report;
  const Eigen::MatrixXd layout = tsne_layout(field_distances, options.tsne);
  report.embedding = normalize_embedding(layout);
  report.embedding.seed = options.tsne.seed;
  report.embedding.perplexity = options.tsne.perplexity;
  report.embedding.iterations = options.tsne.iterations;
  auto stats = average_distances(options.normalize_first ? report.embedding.points : layout);
  report.distance_matrix = std::move(stats.distances);
  report.avg_distances = std::move(stats.average);
  report.threshold = chebyshev_threshold(report.avg_distances, options.threshold_k);
  report.outliers = locate(report.avg_distances, report.threshold);
  return report;
}

}  // namespace foloc
