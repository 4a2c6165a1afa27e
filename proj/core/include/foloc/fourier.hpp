#pragma once

#include <Eigen/Dense>
#include <vector>

#include "foloc/simulator.hpp"

namespace foloc {

/// One-sided magnitude spectra of every node, jointly scaled to [0, 1].
struct SpectrumSet {
  Eigen::VectorXd frequencies;  ///< bin k at k / (T dt) Hz, k = 0 .. T/2
  Eigen::MatrixXd magnitudes;   ///< N x (T/2 + 1)
};

/// |DFT| of each node's mean-removed omega series, divided by the largest
/// magnitude over all nodes and bins (left at zero when everything is zero).
SpectrumSet fourier_spectrum(const Trajectory& traj);

struct FourierPeak {
  std::size_t bin = 0;
  double frequency_hz = 0.0;
  std::size_t leader = 0;
  double leader_magnitude = 0.0;
  std::size_t runner_up = 0;
  double runner_up_magnitude = 0.0;
  bool ambiguous = false;  ///< runner_up_magnitude * dominance_ratio >= leader_magnitude
};

struct FourierVerdict {
  std::vector<FourierPeak> peaks;
  std::vector<std::size_t> candidates;  ///< distinct peak leaders, ascending
  bool ambiguous = false;               ///< any peak ambiguous
};

/**
 * Peak-picking baseline. Peaks are local maxima (bin >= 1) of the
 * across-node envelope max_i |X_i(k)| that reach `peak_fraction` of the
 * envelope's maximum and stand `line_contrast` times above the envelope's
 * median over the surrounding +-15 bins. The contrast test keeps coherent
 * forcing lines and drops the broad, ragged peaks of noise-driven modes.
 * At each peak the strongest node is the candidate.
 */
FourierVerdict fourier_locate(const SpectrumSet& spectra, double dominance_ratio = 2.0,
                              double peak_fraction = 0.3, double line_contrast = 4.0);

}  // namespace foloc
