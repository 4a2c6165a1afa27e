#include "foloc/simulator.hpp"

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "foloc/error.hpp"

namespace foloc {

double fo_signal(const FOSource& src, double t) noexcept {
  return src.gamma * std::cos(2.0 * M_PI * (src.f * t + src.phase));
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linear") return ModelKind::linear;
  if (name == "nonlinear") return ModelKind::nonlinear;
  throw InvalidInput("unknown model_kind '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::linear ? "linear" : "nonlinear";
}

NoiseMode parse_noise_mode(std::string_view name) {
  if (name == "process") return NoiseMode::process;
  if (name == "measurement") return NoiseMode::measurement;
  throw InvalidInput("unknown noise_mode '" + std::string(name) + "'");
}

std::string_view to_string(NoiseMode mode) {
  return mode == NoiseMode::process ? "process" : "measurement";
}

std::size_t ScenarioConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

void ScenarioConfig::validate(std::size_t node_count) const {
  if (!(duration > 0.0)) throw InvalidInput("scenario: duration must be positive");
  if (!(dt > 0.0)) throw InvalidInput("scenario: dt must be positive");
  if (!(sigma >= 0.0)) throw InvalidInput("scenario: sigma must be non-negative");
  if (sample_count() < 2) throw InvalidInput("scenario: duration/dt yields fewer than 2 samples");
  std::set<std::size_t> nodes;
  for (const auto& s : sources) {
    if (s.node >= node_count) {
      throw InvalidInput("scenario: source node " + std::to_string(s.node) + " out of range");
    }
    if (!(s.gamma > 0.0) || !(s.f > 0.0)) {
      throw InvalidInput("scenario: source gamma and f must be positive");
    }
    if (!nodes.insert(s.node).second) {
      throw InvalidInput("scenario: duplicate source node " + std::to_string(s.node));
    }
  }
}

namespace {

constexpr double kBlowUp = 1e6;

class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return normal_(rng_); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

void add_measurement_noise(Trajectory& traj, const ScenarioConfig& scenario,
                           NoiseStream& noise) {
  for (Eigen::Index k = 0; k < traj.omega.cols(); ++k) {
    for (Eigen::Index i = 0; i < traj.omega.rows(); ++i) {
      traj.omega(i, k) += scenario.sigma * noise();
    }
  }
}

bool structural_upper_blocks(const Eigen::MatrixXd& phi) {
  const auto n = phi.rows() / 2;
  return phi.topLeftCorner(n, n).isZero(0.0) &&
         phi.topRightCorner(n, n).isIdentity(0.0);
}

}  // namespace

Trajectory simulate_linear(const StateMatrix& state, const ScenarioConfig& scenario) {
  const auto n = static_cast<Eigen::Index>(state.node_count());
  scenario.validate(state.node_count());
  if (scenario.model_kind != ModelKind::linear) {
    throw InvalidInput("simulate_linear: scenario.model_kind must be linear");
  }
  const std::size_t samples = scenario.sample_count();
  const double dt = scenario.dt;
  const bool process_noise = scenario.noise_mode == NoiseMode::process && scenario.sigma > 0.0;

  Eigen::VectorXd input_scale = Eigen::VectorXd::Ones(n);
  if (scenario.scale_forcing_by_inertia) input_scale = state.inverse_inertia;

  // delta' = omega when the upper blocks are [0 I]; then only the lower half
  // of Phi needs a product per stage.
  const bool fast = structural_upper_blocks(state.phi);
  const Eigen::MatrixXd lower = state.phi.bottomRows(n);

  auto drift = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    if (fast) {
      dy.head(n) = y.tail(n);
      dy.tail(n).noalias() = lower * y;
    } else {
      dy.noalias() = state.phi * y;
    }
    for (const auto& s : scenario.sources) {
      const auto row = n + static_cast<Eigen::Index>(s.node);
      dy[row] += input_scale[static_cast<Eigen::Index>(s.node)] * fo_signal(s, t);
    }
  };

  Trajectory traj;
  traj.dt = dt;
  traj.omega = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(samples));
  traj.delta = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(samples));

  NoiseStream noise(scenario.seed);
  const double noise_scale = scenario.sigma * std::sqrt(dt);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * n);
  Eigen::VectorXd k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);

  for (std::size_t k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k - 1) * dt;
    drift(t, y, k1);
    tmp = y + 0.5 * dt * k1;
    drift(t + 0.5 * dt, tmp, k2);
    tmp = y + 0.5 * dt * k2;
    drift(t + 0.5 * dt, tmp, k3);
    tmp = y + dt * k3;
    drift(t + dt, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (process_noise) {
      for (Eigen::Index i = 0; i < n; ++i) y[n + i] += noise_scale * input_scale[i] * noise();
    }
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > kBlowUp) {
      throw Divergence("simulate_linear: state diverged at step " + std::to_string(k) +
                       " (t = " + std::to_string(static_cast<double>(k) * dt) + " s)");
    }
    const auto col = static_cast<Eigen::Index>(k);
    traj.delta.col(col) = y.head(n);
    traj.omega.col(col) = y.tail(n);
  }
  if (scenario.noise_mode == NoiseMode::measurement && scenario.sigma > 0.0) {
    add_measurement_noise(traj, scenario, noise);
  }
  return traj;
}

Trajectory simulate_nonlinear(const GridModel& model, const ScenarioConfig& scenario) {
  if (!model.equilibrium()) throw InvalidInput("simulate_nonlinear: equilibrium unset");
  if (scenario.model_kind != ModelKind::nonlinear) {
    throw InvalidInput("simulate_nonlinear: scenario.model_kind must be nonlinear");
  }
  const auto n = static_cast<Eigen::Index>(model.node_count());
  scenario.validate(model.node_count());
  const auto& p = model.params();
  const auto& edges = model.topology().edges();
  const Eigen::VectorXd& eq = *model.equilibrium();
  const Eigen::VectorXd inv_alpha = p.alpha.cwiseInverse();
  const std::size_t samples = scenario.sample_count();
  const double dt = scenario.dt;
  const bool process_noise = scenario.noise_mode == NoiseMode::process && scenario.sigma > 0.0;

  // y = [delta; omega] in absolute phases.
  auto drift = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.head(n) = y.tail(n);
    Eigen::VectorXd acc = p.power - p.beta.cwiseProduct(y.tail(n));
    for (const auto& e : edges) {
      const auto i = static_cast<Eigen::Index>(e.from);
      const auto j = static_cast<Eigen::Index>(e.to);
      const double flow = e.coupling * std::sin(y[i] - y[j]);
      acc[i] -= flow;
      acc[j] += flow;
    }
    for (const auto& s : scenario.sources) acc[static_cast<Eigen::Index>(s.node)] += fo_signal(s, t);
    dy.tail(n) = inv_alpha.cwiseProduct(acc);
  };

  Trajectory traj;
  traj.dt = dt;
  traj.omega = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(samples));
  traj.delta = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(samples));

  NoiseStream noise(scenario.seed);
  const double noise_scale = scenario.sigma * std::sqrt(dt);
  Eigen::VectorXd y(2 * n);
  y.head(n) = eq;
  y.tail(n).setZero();
  Eigen::VectorXd k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);

  for (std::size_t k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k - 1) * dt;
    drift(t, y, k1);
    tmp = y + 0.5 * dt * k1;
    drift(t + 0.5 * dt, tmp, k2);
    tmp = y + 0.5 * dt * k2;
    drift(t + 0.5 * dt, tmp, k3);
    tmp = y + dt * k3;
    drift(t + dt, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (process_noise) {
      for (Eigen::Index i = 0; i < n; ++i) y[n + i] += noise_scale * inv_alpha[i] * noise();
    }
    const Eigen::VectorXd dev = y.head(n) - eq;
    if (!y.allFinite() || dev.cwiseAbs().maxCoeff() > kBlowUp ||
        y.tail(n).cwiseAbs().maxCoeff() > kBlowUp) {
      throw Divergence("simulate_nonlinear: state diverged at step " + std::to_string(k));
    }
    for (const auto& e : edges) {
      const auto i = static_cast<Eigen::Index>(e.from);
      const auto j = static_cast<Eigen::Index>(e.to);
      if (std::abs(dev[i] - dev[j]) > 2.0 * M_PI) {
        throw LossOfSynchrony("simulate_nonlinear: loss of synchrony on line " +
                              std::to_string(e.from) + "-" + std::to_string(e.to) +
                              " at step " + std::to_string(k) + " (t = " +
                              std::to_string(static_cast<double>(k) * dt) + " s)");
      }
    }
    const auto col = static_cast<Eigen::Index>(k);
    traj.delta.col(col) = dev;
    traj.omega.col(col) = y.tail(n);
  }
  if (scenario.noise_mode == NoiseMode::measurement && scenario.sigma > 0.0) {
    add_measurement_noise(traj, scenario, noise);
  }
  return traj;
}

Trajectory simulate(const GridModel& model, const StateMatrix& state,
                    const ScenarioConfig& scenario) {
  return scenario.model_kind == ModelKind::linear ? simulate_linear(state, scenario)
                                                  : simulate_nonlinear(model, scenario);
}

Eigen::VectorXcd steady_state_response(const StateMatrix& state, const FOSource& src) {
  const auto dim = state.phi.rows();
  const auto n = dim / 2;
  if (src.node >= static_cast<std::size_t>(n)) {
    throw InvalidInput("steady_state_response: source node out of range");
  }
  const std::complex<double> iw(0.0, 2.0 * M_PI * src.f);
  Eigen::MatrixXcd a = -state.phi.cast<std::complex<double>>();
  a.diagonal().array() += iw;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);
  b[n + static_cast<Eigen::Index>(src.node)] =
      src.gamma * std::exp(std::complex<double>(0.0, 2.0 * M_PI * src.phase));
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible()) {
    throw NumericalError("steady_state_response: singular system (drive frequency " +
                         std::to_string(src.f) + " Hz hits an undamped mode)");
  }
  return lu.solve(b);
}

}  // namespace foloc
