#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace foloc {

/**
 * Motif embedding correlation field (MECF) of a scalar series.
 *
 * Index convention: everything here is zero-based. Embedded row t (0-based)
 * corresponds to row t+1 of the usual one-based formulation; motif start s and
 * displacement d map the same way (s_0 = s_1 - 1, d unchanged). With
 * R = T - (m-1) tau embedded rows:
 *
 *   embedded row t     = [x(t), x(t+tau), ..., x(t+(m-1)tau)],  t in [0, R)
 *   motif M_d(s)       = rows s, s+d, ..., s+(n-1)d               (n x m)
 *   sequence_d(s)      = corr2d(M_d(s), M_d(s+d)),                s in [0, R - n d)
 *   G(d-1, s)          = sequence_d(s), zero past its length;     C = R - n columns
 *   F                  = G + rot180(G)
 */
struct MECFParams {
  std::size_t m = 3;    ///< embedding dimension
  std::size_t tau = 2;  ///< delay in samples
  std::size_t n = 3;    ///< motif length
  /// Explicit maximum displacement; nullopt selects it automatically.
  std::optional<std::size_t> d_max;
  /// Upper clamp applied to the automatic choice.
  std::size_t d_max_ceiling = 64;

  /// Throws InvalidInput unless m >= 2, tau >= 1, n >= 2, d_max >= 1 and
  /// the series length satisfies T - (m-1) tau > n.
  void validate(std::size_t series_length) const;
};

struct DmaxInfo {
  std::size_t formula = 0;          ///< 1 + floor((R - (n+1)) / (n-1))
  std::size_t feasibility_cap = 0;  ///< floor((R - 1) / n): largest d with one motif pair
  std::size_t effective = 0;        ///< min of the two
};

DmaxInfo compute_dmax(std::size_t series_length, std::size_t m, std::size_t tau, std::size_t n);

/// Displacement count actually stacked for `params` on a series of this length.
std::size_t resolve_dmax(const MECFParams& params, std::size_t series_length);

/// R x m delay-embedding matrix.
Eigen::MatrixXd delay_embed(std::span<const double> x, std::size_t m, std::size_t tau);

/// n x m motif starting at embedded row s with row spacing d.
Eigen::MatrixXd motif(const Eigen::MatrixXd& embedded, std::size_t n, std::size_t d,
                      std::size_t s);

/// 2D (Pearson) correlation of two equally shaped matrices. Throws
/// DegenerateMotif when either has zero spread.
double corr2d(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Correlations of consecutive motif pairs at displacement d. Degenerate
/// pairs contribute 0 and bump `degenerate` when provided. Empty when no
/// pair fits.
std::vector<double> motif_correlation_sequence(const Eigen::MatrixXd& embedded, std::size_t n,
                                               std::size_t d,
                                               std::size_t* degenerate = nullptr);

struct MotifField {
  Eigen::MatrixXd values;  ///< d_max x C, rows are displacements 1..d_max
  MECFParams params;
  std::size_t series_length = 0;
  std::size_t degenerate_pairs = 0;

  std::size_t d_max() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

MotifField assemble_field(std::span<const double> x, const MECFParams& params);

/// Frobenius distance. Throws InvalidInput on shape or parameter mismatch.
double field_distance(const MotifField& a, const MotifField& b);

/// One field per row of `series` (N x T), computed in parallel.
std::vector<MotifField> assemble_fields(const Eigen::MatrixXd& series, const MECFParams& params,
                                        std::size_t workers = 0);

/// Symmetric N x N matrix of field_distance, zero diagonal, parallel over pairs.
Eigen::MatrixXd field_distance_matrix(const std::vector<MotifField>& fields,
                                      std::size_t workers = 0);

}  // namespace foloc
