#include "foloc/mecf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foloc/error.hpp"
#include "foloc/parallel.hpp"

namespace foloc {

namespace {

// Relative spread below which a motif counts as constant.
constexpr double kDegenerateSpread = 1e-24;

std::size_t embedded_rows(std::size_t series_length, std::size_t m, std::size_t tau) {
  const std::size_t span = (m - 1) * tau;
  return series_length > span ? series_length - span : 0;
}

bool degenerate(double centered_ss, double raw_ss) {
  return raw_ss == 0.0 || centered_ss <= kDegenerateSpread * raw_ss;
}

}  // namespace

void MECFParams::validate(std::size_t series_length) const {
  if (m < 2) throw InvalidInput("mecf: embedding dimension m must be >= 2");
  if (tau < 1) throw InvalidInput("mecf: time delay tau must be >= 1");
  if (n < 2) throw InvalidInput("mecf: motif length n must be >= 2");
  if (d_max && *d_max < 1) throw InvalidInput("mecf: d_max must be >= 1");
  if (d_max_ceiling < 1) throw InvalidInput("mecf: d_max ceiling must be >= 1");
  if (embedded_rows(series_length, m, tau) <= n) {
    throw InvalidInput("mecf: series too short (T=" + std::to_string(series_length) +
                       " needs T - (m-1)tau > n)");
  }
}

DmaxInfo compute_dmax(std::size_t series_length, std::size_t m, std::size_t tau, std::size_t n) {
  const std::size_t rows = embedded_rows(series_length, m, tau);
  if (n < 2 || rows <= n) {
    throw InvalidInput("compute_dmax: series too short (T=" + std::to_string(series_length) + ")");
  }
  DmaxInfo info;
  info.formula = 1 + (rows - (n + 1)) / (n - 1);
  info.feasibility_cap = (rows - 1) / n;
  info.effective = std::min(info.formula, info.feasibility_cap);
  return info;
}

std::size_t resolve_dmax(const MECFParams& params, std::size_t series_length) {
  params.validate(series_length);
  const auto info = compute_dmax(series_length, params.m, params.tau, params.n);
  if (params.d_max) return std::min(*params.d_max, info.feasibility_cap);
  return std::min(info.effective, params.d_max_ceiling);
}

Eigen::MatrixXd delay_embed(std::span<const double> x, std::size_t m, std::size_t tau) {
  if (m < 2) throw InvalidInput("delay_embed: m must be >= 2");
  if (tau < 1) throw InvalidInput("delay_embed: tau must be >= 1");
  const std::size_t rows = embedded_rows(x.size(), m, tau);
  if (rows == 0) throw InvalidInput("delay_embed: series too short");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m));
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t j = 0; j < m; ++j) {
      out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = x[t + j * tau];
    }
  }
  return out;
}

Eigen::MatrixXd motif(const Eigen::MatrixXd& embedded, std::size_t n, std::size_t d,
                      std::size_t s) {
  if (n < 1 || d < 1) throw InvalidInput("motif: n and d must be positive");
  const auto rows = static_cast<std::size_t>(embedded.rows());
  if (s + (n - 1) * d >= rows) {
    throw InvalidInput("motif: start " + std::to_string(s) + " out of range");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), embedded.cols());
  for (std::size_t k = 0; k < n; ++k) {
    out.row(static_cast<Eigen::Index>(k)) = embedded.row(static_cast<Eigen::Index>(s + k * d));
  }
  return out;
}

double corr2d(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0) {
    throw InvalidInput("corr2d: shape mismatch");
  }
  const Eigen::ArrayXXd ca = a.array() - a.mean();
  const Eigen::ArrayXXd cb = b.array() - b.mean();
  const double saa = ca.square().sum();
  const double sbb = cb.square().sum();
  if (degenerate(saa, a.array().square().sum()) || degenerate(sbb, b.array().square().sum())) {
    throw DegenerateMotif("corr2d: degenerate motif (zero spread)");
  }
  const double r = (ca * cb).sum() / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> motif_correlation_sequence(const Eigen::MatrixXd& embedded, std::size_t n,
                                               std::size_t d, std::size_t* degenerate_count) {
  if (n < 2 || d < 1) throw InvalidInput("motif_correlation_sequence: n >= 2 and d >= 1 required");
  const auto rows = static_cast<std::size_t>(embedded.rows());
  const auto m = static_cast<std::size_t>(embedded.cols());
  if (rows < n * d + 1) return {};
  const std::size_t pairs = rows - n * d;
  const std::size_t starts = pairs + d;  // motifs M_d(s) for s in [0, pairs + d)
  const double count = static_cast<double>(n * m);

  auto entry = [&](std::size_t s, std::size_t k, std::size_t j) {
    return embedded(static_cast<Eigen::Index>(s + k * d), static_cast<Eigen::Index>(j));
  };

  std::vector<double> mean(starts), spread(starts);
  std::vector<bool> flat(starts);
  for (std::size_t s = 0; s < starts; ++s) {
    double sum = 0.0, raw = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        const double v = entry(s, k, j);
        sum += v;
        raw += v * v;
      }
    }
    const double mu = sum / count;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        const double c = entry(s, k, j) - mu;
        ss += c * c;
      }
    }
    mean[s] = mu;
    spread[s] = ss;
    flat[s] = degenerate(ss, raw);
  }

  std::vector<double> seq(pairs, 0.0);
  for (std::size_t s = 0; s < pairs; ++s) {
    const std::size_t u = s + d;
    if (flat[s] || flat[u]) {
      if (degenerate_count) ++*degenerate_count;
      continue;
    }
    double cross = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        cross += (entry(s, k, j) - mean[s]) * (entry(u, k, j) - mean[u]);
      }
    }
    seq[s] = std::clamp(cross / std::sqrt(spread[s] * spread[u]), -1.0, 1.0);
  }
  return seq;
}

MotifField assemble_field(std::span<const double> x, const MECFParams& params) {
  const std::size_t d_max = resolve_dmax(params, x.size());
  const Eigen::MatrixXd embedded = delay_embed(x, params.m, params.tau);
  const auto rows = static_cast<std::size_t>(embedded.rows());
  const std::size_t width = rows - params.n;

  MotifField field;
  field.params = params;
  field.series_length = x.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d_max),
                                            static_cast<Eigen::Index>(width));
  for (std::size_t d = 1; d <= d_max; ++d) {
    const auto seq = motif_correlation_sequence(embedded, params.n, d, &field.degenerate_pairs);
    for (std::size_t s = 0; s < seq.size(); ++s) {
      g(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(s)) = seq[s];
    }
  }
  field.values = g + g.reverse();
  return field;
}

double field_distance(const MotifField& a, const MotifField& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw InvalidInput("field_distance: shape mismatch");
  }
  if (a.params.m != b.params.m || a.params.tau != b.params.tau || a.params.n != b.params.n) {
    throw InvalidInput("field_distance: parameter mismatch");
  }
  return (a.values - b.values).norm();
}

std::vector<MotifField> assemble_fields(const Eigen::MatrixXd& series, const MECFParams& params,
                                        std::size_t workers) {
  const auto count = static_cast<std::size_t>(series.rows());
  std::vector<MotifField> fields(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        const Eigen::VectorXd row = series.row(static_cast<Eigen::Index>(i)).transpose();
        fields[i] = assemble_field(std::span<const double>(row.data(), row.size()), params);
      },
      workers);
  return fields;
}

Eigen::MatrixXd field_distance_matrix(const std::vector<MotifField>& fields, std::size_t workers) {
  const auto count = static_cast<Eigen::Index>(fields.size());
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(count, count);
  if (count == 0) return dist;
  for (const auto& f : fields) {
    if (f.values.rows() != fields[0].values.rows() || f.values.cols() != fields[0].values.cols()) {
      throw InvalidInput("field_distance_matrix: shape mismatch");
    }
  }

  // ||a - b||^2 = ||a||^2 + ||b||^2 - 2 a.b, one blocked GEMM instead of
  // streaming every pair of fields through memory.
  const Eigen::Index len = fields[0].values.size();
  Eigen::MatrixXd stacked(len, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    stacked.col(i) = fields[static_cast<std::size_t>(i)].values.reshaped();
  }
  Eigen::MatrixXd gram(count, count);
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(stacked.transpose());
  const Eigen::VectorXd sq = gram.diagonal();

  // Near-duplicates lose digits to cancellation; recompute those directly.
  constexpr double kRefine = 1e-6;
  std::vector<std::pair<std::size_t, std::size_t>> refine;
  for (Eigen::Index j = 0; j < count; ++j) {
    for (Eigen::Index i = j + 1; i < count; ++i) {
      const double d2 = sq[i] + sq[j] - 2.0 * gram(i, j);
      if (d2 <= kRefine * (sq[i] + sq[j])) {
        refine.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
      dist(i, j) = dist(j, i) = std::sqrt(std::max(d2, 0.0));
    }
  }
  parallel_for(
      refine.size(),
      [&](std::size_t k) {
        const auto [i, j] = refine[k];
        const double v = field_distance(fields[i], fields[j]);
        dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        dist(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      },
      workers);
  return dist;
}

}  // namespace foloc
