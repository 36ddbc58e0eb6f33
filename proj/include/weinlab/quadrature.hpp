#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "weinlab/errors.hpp"
#include "weinlab/special_functions.hpp"

namespace weinlab {

/// Nodes and weights of a one-dimensional rule: sum_j w_j g(x_j) ~ integral.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b on [-1, 1], a, b > -1.
/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
/// monic recurrence. Exact for polynomials of degree <= 2n-1.
inline QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta = 0.0;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: eigenvalue iteration did not converge");
  }

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                         log_gamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v = solver.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v * v;
  }
  return rule;
}

/// Rule for integral_0^R g(r) r^{2 alpha + 1} dr; weights include r^{2 alpha + 1}.
inline QuadratureRule radial_gauss_jacobi(double alpha, double extent, int n) {
  const double b = 2.0 * alpha + 1.0;
  QuadratureRule ref = gauss_jacobi(n, 0.0, b);
  const double half = extent / 2.0;
  const double scale = std::pow(half, b + 1.0);
  for (int k = 0; k < n; ++k) {
    ref.nodes[k] = half * (1.0 + ref.nodes[k]);
    ref.weights[k] *= scale;
  }
  return ref;
}

/// Trapezoid rule on r_j = j R / n, j = 1..n. The r = 0 node carries
/// weight zero (the integrand vanishes there) and is dropped.
inline QuadratureRule radial_trapezoid(double alpha, double extent, int n) {
  const double h = extent / n;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double r = h * j;
    rule.nodes[j - 1] = r;
    rule.weights[j - 1] = h * std::pow(r, 2.0 * alpha + 1.0) * (j == n ? 0.5 : 1.0);
  }
  return rule;
}

}  // namespace weinlab
