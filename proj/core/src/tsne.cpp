#include "foloc/tsne.hpp"

#include <cfloat>
#include <cmath>
#include <random>
#include <string>

#include "foloc/error.hpp"

namespace foloc {

namespace {

void validate_distances(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw InvalidInput("tsne: distance matrix must be square");
  if (d.rows() < 3) throw InvalidInput("tsne: need at least 3 points");
  if (!d.allFinite()) throw InvalidInput("tsne: non-finite distance");
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw InvalidInput("tsne: non-zero diagonal");
    for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
      if (d(i, j) < 0.0) throw InvalidInput("tsne: negative distance");
      if (std::abs(d(i, j) - d(j, i)) > 1e-12 * scale) {
        throw InvalidInput("tsne: distance matrix is not symmetric");
      }
    }
  }
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

void validate_perplexity(double perplexity, Eigen::Index n) {
  if (!(perplexity >= 1.0) || !(perplexity < static_cast<double>(n - 1))) {
    throw InvalidInput("tsne: perplexity infeasible (" + std::to_string(perplexity) +
                       " not in [1, N-1) for N=" + std::to_string(n) + ")");
  }
}

}  // namespace

Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& distances, const TsneOptions& options) {
  const auto n = distances.rows();
  Eigen::MatrixXd sq = distances.cwiseProduct(distances);
  const double max_sq = sq.maxCoeff();
  if (max_sq > 0.0) sq /= max_sq;

  const double target_entropy = std::log(options.perplexity);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0;
    double lo = -DBL_MAX, hi = DBL_MAX;
    Eigen::VectorXd row(n);
    for (int step = 0; step < options.perplexity_search_steps; ++step) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        row[j] = (j == i) ? 0.0 : std::exp(-beta * sq(i, j));
        sum += row[j];
      }
      if (sum <= 0.0) sum = DBL_MIN;
      double weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) weighted += sq(i, j) * row[j];
      const double entropy = std::log(sum) + beta * weighted / sum;
      row /= sum;
      const double diff = entropy - target_entropy;
      if (std::abs(diff) < options.perplexity_tolerance) break;
      if (diff > 0.0) {
        lo = beta;
        beta = (hi == DBL_MAX) ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = (lo == -DBL_MAX) ? beta / 2.0 : (beta + lo) / 2.0;
      }
    }
    p.row(i) = row.transpose();
  }
  Eigen::MatrixXd joint = p + p.transpose();
  joint /= joint.sum();
  return joint;
}

Eigen::MatrixXd tsne_layout(const Eigen::MatrixXd& distances, const TsneOptions& options) {
  validate_distances(distances);
  const auto n = distances.rows();
  validate_perplexity(options.perplexity, n);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, 2);
  if (distances.maxCoeff() == 0.0) return y;

  Eigen::MatrixXd p = joint_probabilities(distances, options);
  p *= options.early_exaggeration;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, options.init_stddev);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i, 0) = normal(rng);
    y(i, 1) = normal(rng);
  }

  Eigen::MatrixXd update = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  Eigen::MatrixXd grad(n, 2);
  Eigen::MatrixXd num(n, n);
  double momentum = options.initial_momentum;

  for (int iter = 0; iter < options.iterations; ++iter) {
    // Student-t affinities q_ij = num_ij / sum(num).
    double sum_num = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      num(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double dx = y(i, 0) - y(j, 0);
        const double dy = y(i, 1) - y(j, 1);
        const double v = 1.0 / (1.0 + dx * dx + dy * dy);
        num(i, j) = num(j, i) = v;
        sum_num += 2.0 * v;
      }
    }
    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double mult = 4.0 * (p(i, j) - num(i, j) / sum_num) * num(i, j);
        grad(i, 0) += mult * (y(i, 0) - y(j, 0));
        grad(i, 1) += mult * (y(i, 1) - y(j, 1));
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        const bool flip = sign(grad(i, c)) != sign(update(i, c));
        gains(i, c) = flip ? gains(i, c) + 0.2 : gains(i, c) * 0.8;
        if (gains(i, c) < 0.01) gains(i, c) = 0.01;
        update(i, c) = momentum * update(i, c) - options.learning_rate * gains(i, c) * grad(i, c);
        y(i, c) += update(i, c);
      }
    }
    y.rowwise() -= y.colwise().mean();

    if (iter + 1 == options.exaggeration_iterations) p /= options.early_exaggeration;
    if (iter + 1 == options.momentum_switch_iteration) momentum = options.final_momentum;
  }
  return y;
}

Embedding2D normalize_embedding(const Eigen::MatrixXd& points) {
  if (points.cols() != 2 || points.rows() < 1) {
    throw InvalidInput("normalize_embedding: expected a non-empty N x 2 point set");
  }
  Embedding2D out;
  out.points = points;
  for (Eigen::Index c = 0; c < 2; ++c) {
    const double lo = points.col(c).minCoeff();
    const double hi = points.col(c).maxCoeff();
    if (hi > lo) {
      out.points.col(c) = (points.col(c).array() - lo) / (hi - lo);
    } else {
      out.points.col(c).setZero();
    }
  }
  return out;
}

Embedding2D tsne_embed(const Eigen::MatrixXd& distances, const TsneOptions& options) {
  auto emb = normalize_embedding(tsne_layout(distances, options));
  emb.seed = options.seed;
  emb.perplexity = options.perplexity;
  emb.iterations = options.iterations;
  return emb;
}

}  // namespace foloc
