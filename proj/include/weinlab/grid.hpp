#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "weinlab/errors.hpp"
#include "weinlab/quadrature.hpp"
#include "weinlab/special_functions.hpp"

namespace weinlab {

/// Which side of the transform a grid discretizes.
enum class Domain { space, frequency };

enum class RadialRule { trapezoid, gauss_jacobi };

inline std::string to_string(RadialRule rule) {
  return rule == RadialRule::trapezoid ? "trapezoid" : "gauss_jacobi";
}

inline RadialRule parse_radial_rule(const std::string& name) {
  if (name == "trapezoid") return RadialRule::trapezoid;
  if (name == "gauss_jacobi") return RadialRule::gauss_jacobi;
  throw DomainError("unknown radial rule '" + name + "' (expected trapezoid or gauss_jacobi)");
}

inline std::string to_string(Domain domain) {
  return domain == Domain::space ? "space" : "frequency";
}

/// The pair (d, alpha) fixing the half-space R^d x (0, inf), the measure
/// d mu_alpha and the kernel.
struct WeinsteinParams {
  int d = 1;
  double alpha = 0.0;

  void validate() const {
    if (d < 1) throw DomainError("dimension d must be >= 1, got " + std::to_string(d));
    BesselOrder{alpha};
  }

  /// 2 alpha + d + 2: the homogeneity degree of mu_alpha under dilations.
  double homogeneous_dimension() const { return 2.0 * alpha + d + 2.0; }

  /// Density constant of d mu_alpha = C x_{d+1}^{2 alpha + 1} dx,
  /// C = 1 / ((2 pi)^{d/2} 2^alpha Gamma(alpha + 1)).
  double measure_constant() const {
    return std::exp(-0.5 * d * std::log(2.0 * std::numbers::pi) - alpha * std::log(2.0) -
                    log_gamma(alpha + 1.0));
  }

  /// a_alpha in  int phi d mu_alpha = a_alpha int_0^inf phi~(r) r^{2 alpha + d + 1} dr.
  double radial_constant() const {
    return std::exp(-(alpha + 0.5 * d) * std::log(2.0) - log_gamma(alpha + 0.5 * d + 1.0));
  }

  bool operator==(const WeinsteinParams&) const = default;
};

/// Truncation and resolution of a grid.
struct GridSpec {
  double euclid_extent = 8.0;  // L: box [-L, L)^d
  int euclid_points = 64;      // N per axis, even
  double radial_extent = 8.0;  // R: radial nodes in (0, R]
  int radial_points = 48;      // M
  RadialRule radial_rule = RadialRule::gauss_jacobi;

  void validate() const {
    if (!(euclid_extent > 0.0) || !std::isfinite(euclid_extent))
      throw DomainError("euclid extent L must be positive");
    if (!(radial_extent > 0.0) || !std::isfinite(radial_extent))
      throw DomainError("radial extent R must be positive");
    if (euclid_points < 8 || euclid_points % 2 != 0)
      throw DomainError("euclid points N must be even and >= 8, got " +
                        std::to_string(euclid_points));
    if (radial_points < 8)
      throw DomainError("radial points M must be >= 8, got " + std::to_string(radial_points));
  }

  bool operator==(const GridSpec&) const = default;
};

class TensorGrid;
using GridPtr = std::shared_ptr<const TensorGrid>;

/// Tensor discretization of [-L, L)^d x (0, R] (space) or of its FFT dual
/// (frequency). Nodes are ordered euclid-major, radial-fastest:
/// node = e * M + j with e the row-major index over the d Euclidean axes.
/// Immutable after construction.
class TensorGrid {
 public:
  static GridPtr build(const WeinsteinParams& params, const GridSpec& spec,
                       Domain domain = Domain::space) {
    params.validate();
    spec.validate();
    auto radial = std::make_shared<const QuadratureRule>(
        spec.radial_rule == RadialRule::gauss_jacobi
            ? radial_gauss_jacobi(params.alpha, spec.radial_extent, spec.radial_points)
            : radial_trapezoid(params.alpha, spec.radial_extent, spec.radial_points));
    return GridPtr(new TensorGrid(params, spec, domain, std::move(radial)));
  }

  const WeinsteinParams& params() const noexcept { return params_; }
  const GridSpec& spec() const noexcept { return spec_; }
  Domain domain() const noexcept { return domain_; }
  int dim() const noexcept { return params_.d; }

  std::size_t euclid_count() const noexcept { return euclid_count_; }
  std::size_t radial_count() const noexcept { return radial_->nodes.size(); }
  std::size_t size() const noexcept { return euclid_count_ * radial_count(); }

  /// Spacing of the Euclidean axes: 2L/N in space, pi/L in frequency.
  double euclid_spacing() const noexcept {
    return domain_ == Domain::space ? 2.0 * spec_.euclid_extent / spec_.euclid_points
                                    : std::numbers::pi / spec_.euclid_extent;
  }

  /// Coordinate of index i in [0, N) along any Euclidean axis.
  double euclid_coordinate(int i) const noexcept {
    if (domain_ == Domain::space) return -spec_.euclid_extent + i * euclid_spacing();
    return (i - spec_.euclid_points / 2) * euclid_spacing();
  }

  std::span<const double> radial_nodes() const noexcept { return radial_->nodes; }
  /// Weights for integral_0^R g(r) r^{2 alpha + 1} dr.
  std::span<const double> radial_weights() const noexcept { return radial_->weights; }

  /// mu_alpha quadrature weight of every node.
  std::span<const double> weights() const noexcept { return weights_; }
  /// Euclidean norm |x| of the full (d+1)-point of every node.
  std::span<const double> abs_coordinates() const noexcept { return abs_; }

  /// Per-axis indices of Euclidean flat index e (first axis slowest).
  void euclid_indices(std::size_t e, std::span<int> out) const noexcept {
    const auto n = static_cast<std::size_t>(spec_.euclid_points);
    for (int k = dim() - 1; k >= 0; --k) {
      out[k] = static_cast<int>(e % n);
      e /= n;
    }
  }

  /// The (d+1)-coordinate point of a node.
  std::vector<double> point(std::size_t node) const {
    std::vector<double> x(dim() + 1);
    std::vector<int> idx(dim());
    euclid_indices(node / radial_count(), idx);
    for (int k = 0; k < dim(); ++k) x[k] = euclid_coordinate(idx[k]);
    x[dim()] = radial_->nodes[node % radial_count()];
    return x;
  }

  /// Same grid, other side of the transform.
  GridPtr dual() const {
    return GridPtr(new TensorGrid(params_, spec_,
                                  domain_ == Domain::space ? Domain::frequency : Domain::space,
                                  radial_));
  }

  /// Grids are interchangeable iff they agree in every defining field.
  bool operator==(const TensorGrid& other) const noexcept {
    return params_ == other.params_ && spec_ == other.spec_ && domain_ == other.domain_;
  }

  /// C * sum_j w_j: mu_alpha-measure of the radial slab (0, R] per unit
  /// Euclidean volume.
  double radial_slab_measure() const {
    double s = 0.0;
    for (double w : radial_->weights) s += w;
    return params_.measure_constant() * s;
  }

 private:
  TensorGrid(const WeinsteinParams& params, const GridSpec& spec, Domain domain,
             std::shared_ptr<const QuadratureRule> radial)
      : params_(params), spec_(spec), domain_(domain), radial_(std::move(radial)) {
    euclid_count_ = 1;
    for (int k = 0; k < params_.d; ++k) euclid_count_ *= static_cast<std::size_t>(spec_.euclid_points);

    const std::size_t m = radial_count();
    const double cell = std::pow(euclid_spacing(), params_.d) * params_.measure_constant();
    weights_.resize(size());
    abs_.resize(size());
    std::vector<int> idx(params_.d);
    for (std::size_t e = 0; e < euclid_count_; ++e) {
      euclid_indices(e, idx);
      double euclid_sq = 0.0;
      for (int k = 0; k < params_.d; ++k) {
        const double c = euclid_coordinate(idx[k]);
        euclid_sq += c * c;
      }
      for (std::size_t j = 0; j < m; ++j) {
        const double r = radial_->nodes[j];
        weights_[e * m + j] = cell * radial_->weights[j];
        abs_[e * m + j] = std::sqrt(euclid_sq + r * r);
      }
    }
  }

  WeinsteinParams params_;
  GridSpec spec_;
  Domain domain_;
  std::shared_ptr<const QuadratureRule> radial_;
  std::size_t euclid_count_ = 0;
  std::vector<double> weights_;
  std::vector<double> abs_;
};

inline GridPtr build_grid(const WeinsteinParams& params, double L, int N, double R, int M,
                          RadialRule rule = RadialRule::gauss_jacobi) {
  return TensorGrid::build(params, GridSpec{L, N, R, M, rule});
}

}  // namespace weinlab
