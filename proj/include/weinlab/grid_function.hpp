#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weinlab/errors.hpp"
#include "weinlab/grid.hpp"

namespace weinlab {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {

inline void require_domain(const TensorGrid& grid, Domain expected) {
  if (grid.domain() != expected) {
    throw GridMismatch("expected a " + to_string(expected) + " grid, got a " +
                       to_string(grid.domain()) + " grid");
  }
}

inline void require_same_grid(const TensorGrid& a, const TensorGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": operands live on different grids");
}

}  // namespace detail

/// Complex samples of a function on every node of a grid. Samples<space> is
/// the stand-in for phi in L^p_alpha; Samples<frequency> for its transform.
template <Domain D>
class Samples {
 public:
  explicit Samples(GridPtr grid) : grid_(std::move(grid)) {
    detail::require_domain(*grid_, D);
    values_.assign(grid_->size(), Complex{});
  }

  Samples(GridPtr grid, std::vector<Complex> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    detail::require_domain(*grid_, D);
    if (values_.size() != grid_->size()) {
      throw GridMismatch("sample count " + std::to_string(values_.size()) +
                         " does not match grid size " + std::to_string(grid_->size()));
    }
    for (const Complex& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError("samples must be finite (found NaN or Inf)");
      }
    }
  }

  /// Samples fn(point) at every node, point = (x_1..x_d, x_{d+1}).
  template <typename Fn>
  static Samples sample(GridPtr grid, Fn&& fn) {
    Samples out(grid);
    for (std::size_t n = 0; n < grid->size(); ++n) out.values_[n] = Complex(fn(grid->point(n)));
    return out;
  }

  const TensorGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  const Complex& operator[](std::size_t n) const noexcept { return values_[n]; }
  Complex& operator[](std::size_t n) noexcept { return values_[n]; }

  Samples& operator+=(const Samples& other) {
    detail::require_same_grid(*grid_, *other.grid_, "operator+=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
    return *this;
  }
  Samples& operator-=(const Samples& other) {
    detail::require_same_grid(*grid_, *other.grid_, "operator-=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
    return *this;
  }
  Samples& operator*=(Complex a) {
    for (Complex& v : values_) v *= a;
    return *this;
  }

  friend Samples operator+(Samples a, const Samples& b) { return a += b; }
  friend Samples operator-(Samples a, const Samples& b) { return a -= b; }
  friend Samples operator*(Complex a, Samples b) { return b *= a; }

  bool is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](Complex v) { return v == Complex{}; });
  }

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
};

using GridFunction = Samples<Domain::space>;
using SpectralFunction = Samples<Domain::frequency>;

/// Boolean mask over the nodes of a grid: the discrete Omega (space) or
/// Sigma (frequency).
template <Domain D>
class MeasurableSet {
 public:
  MeasurableSet(GridPtr grid, std::vector<std::uint8_t> mask, std::string descriptor = {})
      : grid_(std::move(grid)), mask_(std::move(mask)), descriptor_(std::move(descriptor)) {
    detail::require_domain(*grid_, D);
    if (mask_.size() != grid_->size()) throw GridMismatch("mask size does not match grid size");
  }

  static MeasurableSet empty(GridPtr grid) {
    const std::size_t n = grid->size();
    return MeasurableSet(std::move(grid), std::vector<std::uint8_t>(n, 0), "empty");
  }
  static MeasurableSet full(GridPtr grid) {
    const std::size_t n = grid->size();
    return MeasurableSet(std::move(grid), std::vector<std::uint8_t>(n, 1), "full");
  }

  const TensorGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  bool contains(std::size_t node) const noexcept { return mask_[node] != 0; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  MeasurableSet complement() const {
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t n = 0; n < m.size(); ++n) m[n] = mask_[n] ? 0 : 1;
    return MeasurableSet(grid_, std::move(m), "complement(" + descriptor_ + ")");
  }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
  }

 private:
  GridPtr grid_;
  std::vector<std::uint8_t> mask_;
  std::string descriptor_;
};

using SpatialSet = MeasurableSet<Domain::space>;
using SpectralSet = MeasurableSet<Domain::frequency>;

/// mu_alpha of a set: sum of the quadrature weights of its nodes.
template <Domain D>
double measure(const MeasurableSet<D>& set) {
  const auto w = set.grid().weights();
  double total = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (set.contains(n)) total += w[n];
  }
  return total;
}

namespace detail {

inline void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("norm exponent must satisfy p >= 1, got " + std::to_string(p));
  }
}

// (sum_n w_n |v_n|^p)^{1/p}, scaled by the max to avoid under/overflow.
// p = inf returns the grid max (the ess-sup is not observable on a grid).
template <typename Magnitude>
double weighted_norm(std::span<const double> weights, double p, std::size_t n, Magnitude&& mag) {
  std::vector<double> a(n);
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = mag(k);
    peak = std::max(peak, a[k]);
  }
  if (p == kInfinity || peak == 0.0) return peak;
  const double inv = 1.0 / peak;
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t k = 0; k < n; ++k) acc += weights[k] * a[k];
    return acc;
  }
  if (p == 2.0) {
    for (std::size_t k = 0; k < n; ++k) {
      const double x = a[k] * inv;
      acc += weights[k] * x * x;
    }
    return peak * std::sqrt(acc);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] > 0.0) acc += weights[k] * std::pow(a[k] * inv, p);
  }
  return peak * std::pow(acc, 1.0 / p);
}

}  // namespace detail

/// ||f||_{alpha,p} for p in [1, inf].
template <Domain D>
double lp_norm(const Samples<D>& f, double p) {
  detail::require_exponent(p);
  const auto v = f.values();
  return detail::weighted_norm(f.grid().weights(), p, v.size(),
                               [&](std::size_t k) { return std::abs(v[k]); });
}

/// || |x|^s f ||_{alpha,p}, |x| the norm of the full (d+1)-point.
template <Domain D>
double weighted_moment_norm(const Samples<D>& f, double s, double p) {
  if (std::isnan(s) || s < 0.0) throw DomainError("moment exponent s must be >= 0");
  detail::require_exponent(p);
  if (s == 0.0) return lp_norm(f, p);
  const auto v = f.values();
  const auto r = f.grid().abs_coordinates();
  return detail::weighted_norm(f.grid().weights(), p, v.size(),
                               [&](std::size_t k) { return std::pow(r[k], s) * std::abs(v[k]); });
}

/// || g(|x|) f ||_{alpha,p} for an arbitrary radial multiplier g.
template <Domain D, typename Multiplier>
double multiplier_norm(const Samples<D>& f, double p, Multiplier&& g) {
  detail::require_exponent(p);
  const auto v = f.values();
  const auto r = f.grid().abs_coordinates();
  return detail::weighted_norm(f.grid().weights(), p, v.size(),
                               [&](std::size_t k) { return std::abs(g(r[k]) * v[k]); });
}

/// <f, g>_mu = sum_n w_n f_n conj(g_n).
template <Domain D>
Complex inner_product(const Samples<D>& f, const Samples<D>& g) {
  detail::require_same_grid(f.grid(), g.grid(), "inner_product");
  const auto w = f.grid().weights();
  Complex acc{};
  for (std::size_t n = 0; n < f.size(); ++n) acc += w[n] * f[n] * std::conj(g[n]);
  return acc;
}

/// Pointwise product f * chi_A.
template <Domain D>
Samples<D> restrict_to(const Samples<D>& f, const MeasurableSet<D>& set) {
  detail::require_same_grid(f.grid(), set.grid(), "restrict_to");
  Samples<D> out = f;
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (!set.contains(n)) out[n] = Complex{};
  }
  return out;
}

}  // namespace weinlab
