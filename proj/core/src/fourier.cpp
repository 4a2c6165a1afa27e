#include "foloc/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>
#include <set>

#include "foloc/error.hpp"

namespace foloc {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

constexpr Eigen::Index kBackgroundHalfWidth = 15;

// Median of the envelope over bins k-w .. k+w (clipped), bin k excluded.
double local_background(const Eigen::VectorXd& envelope, Eigen::Index k) {
  const Eigen::Index lo = std::max<Eigen::Index>(1, k - kBackgroundHalfWidth);
  const Eigen::Index hi = std::min<Eigen::Index>(envelope.size() - 1, k + kBackgroundHalfWidth);
  std::vector<double> w;
  for (Eigen::Index j = lo; j <= hi; ++j)
    if (j != k) w.push_back(envelope[j]);
  if (w.empty()) return 0.0;
  auto mid = w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2);
  std::nth_element(w.begin(), mid, w.end());
  return *mid;
}

}  // namespace

SpectrumSet fourier_spectrum(const Trajectory& traj) {
  const auto n = traj.omega.rows();
  const auto t = traj.omega.cols();
  if (t < 2) throw InvalidInput("fourier_spectrum: need at least 2 samples");
  const auto bins = t / 2 + 1;

  SpectrumSet out;
  out.frequencies.resize(bins);
  for (Eigen::Index k = 0; k < bins; ++k) {
    out.frequencies[k] = static_cast<double>(k) / (static_cast<double>(t) * traj.dt);
  }
  out.magnitudes = Eigen::MatrixXd::Zero(n, bins);

  std::vector<double> input(static_cast<std::size_t>(t));
  std::vector<std::complex<double>> output(static_cast<std::size_t>(bins));
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(t), input.data(),
                                    reinterpret_cast<fftw_complex*>(output.data()),
                                    FFTW_ESTIMATE));
  }
  if (!plan) throw NumericalError("fourier_spectrum: FFTW planning failed");

  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = traj.omega.row(i).mean();
    for (Eigen::Index k = 0; k < t; ++k) input[static_cast<std::size_t>(k)] = traj.omega(i, k) - mean;
    fftw_execute_dft_r2c(plan.get(), input.data(), reinterpret_cast<fftw_complex*>(output.data()));
    for (Eigen::Index k = 0; k < bins; ++k) out.magnitudes(i, k) = std::abs(output[static_cast<std::size_t>(k)]);
  }
  const double peak = out.magnitudes.size() ? out.magnitudes.maxCoeff() : 0.0;
  if (peak > 0.0) out.magnitudes /= peak;
  return out;
}

FourierVerdict fourier_locate(const SpectrumSet& spectra, double dominance_ratio,
                              double peak_fraction, double line_contrast) {
  if (!(dominance_ratio >= 1.0)) throw InvalidInput("fourier_locate: dominance ratio must be >= 1");
  if (!(line_contrast >= 0.0)) throw InvalidInput("fourier_locate: line contrast must be >= 0");
  FourierVerdict verdict;
  const auto& mag = spectra.magnitudes;
  const auto nodes = mag.rows();
  const auto bins = mag.cols();
  if (nodes == 0 || bins < 2) return verdict;

  const Eigen::VectorXd envelope = mag.colwise().maxCoeff().transpose();
  const double top = envelope.tail(bins - 1).maxCoeff();
  if (!(top > 0.0)) return verdict;

  std::set<std::size_t> leaders;
  for (Eigen::Index k = 1; k < bins; ++k) {
    const double v = envelope[k];
    if (v < peak_fraction * top) continue;
    const bool left_ok = k == 1 || v >= envelope[k - 1];
    const bool right_ok = k + 1 == bins || v > envelope[k + 1];
    if (!left_ok || !right_ok) continue;
    if (v < line_contrast * local_background(envelope, k)) continue;

    FourierPeak peak;
    peak.bin = static_cast<std::size_t>(k);
    peak.frequency_hz = spectra.frequencies[k];
    Eigen::Index lead = 0;
    peak.leader_magnitude = mag.col(k).maxCoeff(&lead);
    peak.leader = static_cast<std::size_t>(lead);
    for (Eigen::Index i = 0; i < nodes; ++i) {
      if (i == lead) continue;
      if (mag(i, k) > peak.runner_up_magnitude || peak.runner_up == peak.leader) {
        peak.runner_up_magnitude = mag(i, k);
        peak.runner_up = static_cast<std::size_t>(i);
      }
    }
    peak.ambiguous = nodes > 1 && peak.runner_up_magnitude * dominance_ratio >= peak.leader_magnitude;
    verdict.ambiguous = verdict.ambiguous || peak.ambiguous;
    leaders.insert(peak.leader);
    verdict.peaks.push_back(peak);
  }
  verdict.candidates.assign(leaders.begin(), leaders.end());
  return verdict;
}

}  // namespace foloc
