#pragma once

// Closed-form references for the forced linear system Y' = A Y + b cos(w t).

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>

namespace oracle {

// Exact solution at time t from Y(0) = 0 via the augmented system
// z = [Y; cos(w t); sin(w t)], z' = M z, z(t) = expm(M t) z(0).
inline Eigen::VectorXd forced_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                       double w, double t) {
  const auto n = a.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 2, n + 2);
  m.topLeftCorner(n, n) = a;
  m.block(0, n, n, 1) = b;
  m(n, n + 1) = -w;
  m(n + 1, n) = w;
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n + 2);
  z0[n] = 1.0;
  const Eigen::MatrixXd e = (m * t).exp();
  return (e * z0).head(n);
}

// Steady-state complex amplitude (i w I - A)^-1 b, solved with a QR
// factorization (the library uses LU).
inline Eigen::VectorXcd steady_amplitude(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                         double w) {
  Eigen::MatrixXcd sys = -a.cast<std::complex<double>>();
  sys.diagonal().array() += std::complex<double>(0.0, w);
  return sys.colPivHouseholderQr().solve(b.cast<std::complex<double>>());
}

}  // namespace oracle
