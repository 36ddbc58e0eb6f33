#pragma once

// Set specifications:
//   ball(rho)            |x| <= rho
//   box(h)               |x_i| <= h for every coordinate (last one in (0, h])
//   box(h_1,..,h_d,h_r)  per-coordinate half-widths
//   annulus(r0, r1)      r0 <= |x| <= r1
//   union(s1, s2, ...)
//   random(fraction, seed)  each node kept with probability `fraction`
//   full, empty

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "weinlab/expression.hpp"
#include "weinlab/grid_function.hpp"
#include "weinlab/quadrature.hpp"
#include "weinlab/random.hpp"

namespace weinlab {

class SetSpec {
 public:
  static SetSpec parse(const std::string& text) { return SetSpec(parse_expression(text)); }

  explicit SetSpec(Expr expr) : expr_(std::move(expr)) { validate(expr_); }

  std::string to_string() const {
    if (expr_.args.empty() && !expr_.is_number()) return expr_.name;
    return weinlab::to_string(expr_);
  }

  const Expr& expr() const noexcept { return expr_; }

  /// Mask over the nodes of `grid`.
  template <Domain D>
  MeasurableSet<D> build(GridPtr grid) const {
    std::vector<std::uint8_t> mask(grid->size(), 0);
    fill(expr_, *grid, mask);
    return MeasurableSet<D>(std::move(grid), std::move(mask), to_string());
  }

  /// mu_alpha of the continuum shape, computed independently of any grid:
  /// adapted Gauss-Jacobi quadrature for balls and annuli, closed form for
  /// boxes. Empty for random sets and unions.
  std::optional<double> exact_measure(const WeinsteinParams& params) const {
    return exact(expr_, params);
  }

 private:
  static void validate(const Expr& e) {
    if (e.is_number()) throw DomainError("set spec must be a shape, not a number");
    const auto n = e.args.size();
    auto positive = [&](std::size_t k) {
      if (!(e.arg(k) > 0.0)) {
        throw DomainError("'" + e.name + "': argument " + std::to_string(k + 1) +
                          " must be positive");
      }
    };
    if (e.name == "ball") {
      if (n != 1) throw DomainError("ball(rho) takes one argument");
      positive(0);
    } else if (e.name == "box") {
      if (n < 1) throw DomainError("box needs at least one half-width");
      for (std::size_t k = 0; k < n; ++k) positive(k);
    } else if (e.name == "annulus") {
      if (n != 2) throw DomainError("annulus(r0, r1) takes two arguments");
      if (!(e.arg(0) >= 0.0) || !(e.arg(1) > e.arg(0)))
        throw DomainError("annulus(r0, r1) needs 0 <= r0 < r1");
    } else if (e.name == "union") {
      if (n < 1) throw DomainError("union needs at least one member");
      for (const Expr& c : e.args) validate(c);
    } else if (e.name == "random") {
      if (n != 2) throw DomainError("random(fraction, seed) takes two arguments");
      const double f = e.arg(0);
      if (!(f >= 0.0 && f <= 1.0)) throw DomainError("random: fraction must lie in [0, 1]");
      const double s = e.arg(1);
      if (!(s >= 0.0) || s != std::floor(s)) throw DomainError("random: seed must be a non-negative integer");
    } else if (e.name == "full" || e.name == "empty") {
      if (n != 0) throw DomainError("'" + e.name + "' takes no arguments");
    } else {
      throw DomainError("unknown set shape '" + e.name + "'");
    }
  }

  static void fill(const Expr& e, const TensorGrid& grid, std::vector<std::uint8_t>& mask) {
    const auto r = grid.abs_coordinates();
    const std::size_t m = grid.radial_count();
    if (e.name == "ball") {
      const double rho = e.arg(0);
      for (std::size_t n = 0; n < mask.size(); ++n) {
        if (r[n] <= rho) mask[n] = 1;
      }
    } else if (e.name == "annulus") {
      const double r0 = e.arg(0), r1 = e.arg(1);
      for (std::size_t n = 0; n < mask.size(); ++n) {
        if (r[n] >= r0 && r[n] <= r1) mask[n] = 1;
      }
    } else if (e.name == "box") {
      const auto half = box_half_widths(e, grid.dim());
      std::vector<int> idx(grid.dim());
      const auto radial = grid.radial_nodes();
      for (std::size_t eu = 0; eu < grid.euclid_count(); ++eu) {
        grid.euclid_indices(eu, idx);
        bool inside = true;
        for (int k = 0; k < grid.dim() && inside; ++k) {
          inside = std::fabs(grid.euclid_coordinate(idx[k])) <= half[k];
        }
        if (!inside) continue;
        for (std::size_t j = 0; j < m; ++j) {
          if (radial[j] <= half.back()) mask[eu * m + j] = 1;
        }
      }
    } else if (e.name == "union") {
      for (const Expr& c : e.args) fill(c, grid, mask);
    } else if (e.name == "random") {
      Rng rng(static_cast<std::uint64_t>(e.arg(1)));
      const double fraction = e.arg(0);
      for (std::size_t n = 0; n < mask.size(); ++n) {
        if (rng.uniform() < fraction) mask[n] = 1;
      }
    } else if (e.name == "full") {
      std::fill(mask.begin(), mask.end(), std::uint8_t{1});
    }
  }

  static std::vector<double> box_half_widths(const Expr& e, int d) {
    if (e.args.size() == 1) return std::vector<double>(d + 1, e.arg(0));
    if (static_cast<int>(e.args.size()) != d + 1) {
      throw DomainError("box needs 1 or d+1 = " + std::to_string(d + 1) + " half-widths");
    }
    std::vector<double> h(d + 1);
    for (int k = 0; k <= d; ++k) h[k] = e.arg(k);
    return h;
  }

  // mu_alpha(ball rho) = C int_0^rho r^{2a+1} vol_d(sqrt(rho^2 - r^2)) dr.
  // With r = rho (1+t)/2 the integrand is (1-t)^{d/2} (1+t)^{2a+1} times the
  // smooth factor ((3+t)/2)^{d/2}, so Gauss-Jacobi(d/2, 2a+1) resolves it.
  static double ball_measure(const WeinsteinParams& params, double rho) {
    if (rho <= 0.0) return 0.0;
    const int d = params.d;
    const double b = 2.0 * params.alpha + 1.0;
    const QuadratureRule rule = gauss_jacobi(40, 0.5 * d, b);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      acc += rule.weights[k] * std::pow(0.5 * (3.0 + rule.nodes[k]), 0.5 * d);
    }
    // r^{2a+1} = (rho/2)^{2a+1} (1+t)^{2a+1}; rho^2 - r^2 = rho^2 (1-t)(3+t)/4; dr = rho/2 dt.
    const double unit_ball = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
    const double scale = std::pow(0.5 * rho, b + 1.0) * std::pow(rho * rho / 2.0, 0.5 * d);
    return params.measure_constant() * unit_ball * scale * acc;
  }

  static std::optional<double> exact(const Expr& e, const WeinsteinParams& params) {
    if (e.name == "ball") return ball_measure(params, e.arg(0));
    if (e.name == "annulus") return ball_measure(params, e.arg(1)) - ball_measure(params, e.arg(0));
    if (e.name == "empty") return 0.0;
    if (e.name == "box") {
      const auto h = box_half_widths(e, params.d);
      double v = params.measure_constant();
      for (int k = 0; k < params.d; ++k) v *= 2.0 * h[k];
      const double b = 2.0 * params.alpha + 2.0;
      return v * std::pow(h.back(), b) / b;
    }
    return std::nullopt;
  }

  Expr expr_;
};

template <Domain D>
MeasurableSet<D> make_set(const std::string& spec, GridPtr grid) {
  return SetSpec::parse(spec).build<D>(std::move(grid));
}

}  // namespace weinlab
