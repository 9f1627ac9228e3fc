#include "semigrav/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "semigrav/errors.hpp"

namespace semigrav::quadrature {

namespace {

// Orthonormal Hermite values p_{n-1}(y), p_n(y) for the weight exp(-y^2).
std::pair<double, double> orthonormal_hermite(std::size_t n, double y) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = y * std::sqrt(2.0 / (kd + 1.0)) * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

}  // namespace

Rule gauss_hermite(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_hermite: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = b;
    jacobi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);

  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double y = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    for (int it = 0; it < 3; ++it) {
      const auto [pm1, pn] = orthonormal_hermite(n, y);
      const double dp = std::sqrt(2.0 * nd) * pm1;
      if (dp == 0.0) break;
      y -= pn / dp;
    }
    double sum = 0.0;
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25);
    for (std::size_t k = 0; k < n; ++k) {
      sum += cur * cur;
      const double kd = static_cast<double>(k);
      const double next = y * std::sqrt(2.0 / (kd + 1.0)) * cur - std::sqrt(kd / (kd + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    rule.nodes[i] = y;
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

}  // namespace semigrav::quadrature
