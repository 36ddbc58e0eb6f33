#pragma once

// Discrete Weinstein transform
//   F phi(lambda) = int phi(x) Lambda(x, lambda) d mu_alpha(x),
//   Lambda(lambda, x) = exp(-i <x', lambda'>) j_alpha(x_{d+1} lambda_{d+1}).
// The kernel factorizes, so the transform is a d-dimensional FFT over the
// Euclidean axes followed by a dense M x M normalized-Bessel matrix on the
// radial axis. Radial frequency nodes reuse the radial quadrature nodes, so
// forward and inverse share one (symmetric) matrix.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "weinlab/grid_function.hpp"
#include "weinlab/special_functions.hpp"

namespace weinlab {

/// Lambda_alpha^d(lambda, x) for (d+1)-points; |result| <= 1.
inline Complex kernel(const WeinsteinParams& params, std::span<const double> lambda,
                      std::span<const double> x) {
  const int d = params.d;
  double phase = 0.0;
  for (int k = 0; k < d; ++k) phase += x[k] * lambda[k];
  const double radial = normalized_bessel_j(params.alpha, x[d] * lambda[d]);
  return Complex(std::cos(phase), -std::sin(phase)) * radial;
}

namespace detail {

// FFTW's planner is not thread-safe; execution of an existing plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int d, int n, int howmany, int sign) {
    std::vector<int> dims(d, n);
    std::vector<fftw_complex> scratch(static_cast<std::size_t>(std::pow(n, d)) * howmany);
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_many_dft(d, dims.data(), howmany, scratch.data(), nullptr, howmany, 1,
                               scratch.data(), nullptr, howmany, 1, sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_) throw std::runtime_error("FFTW failed to create a plan");
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute_in_place(std::span<Complex> data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_, p, p);
  }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace detail

/// Precomputed transform for one grid: FFT plans, sign-alternation tables
/// and the radial Bessel matrix. Immutable and shareable across threads.
class WeinsteinTransform {
 public:
  explicit WeinsteinTransform(GridPtr space_grid)
      : space_(std::move(space_grid)),
        frequency_(space_->dual()),
        forward_plan_(space_->dim(), space_->spec().euclid_points,
                      static_cast<int>(space_->radial_count()), FFTW_FORWARD),
        backward_plan_(space_->dim(), space_->spec().euclid_points,
                       static_cast<int>(space_->radial_count()), FFTW_BACKWARD) {
    detail::require_domain(*space_, Domain::space);
    const int d = space_->dim();
    const int n = space_->spec().euclid_points;
    const std::size_t m = space_->radial_count();

    // x_n = -L + n h and lambda_k = (k - N/2) pi / L give
    // exp(-i x_n lambda_k) = (-1)^{k - N/2} (-1)^n exp(-2 pi i n k / N);
    // the inverse direction has the same sign pattern.
    sign_.resize(space_->euclid_count());
    std::vector<int> idx(d);
    for (std::size_t e = 0; e < sign_.size(); ++e) {
      space_->euclid_indices(e, idx);
      int parity = 0;
      for (int k = 0; k < d; ++k) parity += idx[k];
      sign_[e] = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    post_sign_.resize(space_->euclid_count());
    for (std::size_t e = 0; e < post_sign_.size(); ++e) {
      space_->euclid_indices(e, idx);
      int parity = 0;
      for (int k = 0; k < d; ++k) parity += idx[k] - n / 2;
      post_sign_[e] = (((parity % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    }

    const auto r = space_->radial_nodes();
    bessel_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    const BesselOrder order(space_->params().alpha);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        const double v = normalized_bessel_j(order, r[k] * r[j]);
        bessel_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = v;
        bessel_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
      }
    }
  }

  const GridPtr& space_grid() const noexcept { return space_; }
  const GridPtr& frequency_grid() const noexcept { return frequency_; }

  SpectralFunction forward(const GridFunction& f) const {
    detail::require_same_grid(f.grid(), *space_, "forward");
    std::vector<Complex> data(f.values().begin(), f.values().end());
    apply(data, space_->weights(), forward_plan_);
    return SpectralFunction(frequency_, std::move(data));
  }

  /// phi(x) = int G(lambda) Lambda(-x, lambda) d mu_alpha(lambda).
  GridFunction inverse(const SpectralFunction& g) const {
    detail::require_same_grid(g.grid(), *frequency_, "inverse");
    std::vector<Complex> data(g.values().begin(), g.values().end());
    apply(data, frequency_->weights(), backward_plan_);
    return GridFunction(space_, std::move(data));
  }

  /// Largest |eigenvalue| of the weighted radial operator
  /// W^{1/2} B W^{1/2} (C_r included). Equals 1 up to rounding when the grid
  /// resolves R^2 / M; aliasing pushes it above 1.
  double radial_operator_norm() const {
    const std::size_t m = space_->radial_count();
    const auto w = space_->radial_weights();
    const double c = radial_normalization();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            c * std::sqrt(w[k] * w[j]) *
            bessel_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

 private:
  // 1 / (2^alpha Gamma(alpha + 1)): the radial share of the measure constant.
  double radial_normalization() const {
    const double alpha = space_->params().alpha;
    return std::exp(-alpha * std::log(2.0) - log_gamma(alpha + 1.0));
  }

  void apply(std::vector<Complex>& data, std::span<const double> weights,
             const detail::FftPlan& plan) const {
    const std::size_t m = space_->radial_count();
    const std::size_t ne = space_->euclid_count();
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t j = 0; j < m; ++j) data[e * m + j] *= weights[e * m + j] * sign_[e];
    }
    plan.execute_in_place(data);
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t j = 0; j < m; ++j) data[e * m + j] *= post_sign_[e];
    }
    // The Bessel matrix is real: stack real and imaginary parts and do one real product.
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor parts(static_cast<Eigen::Index>(2 * ne), static_cast<Eigen::Index>(m));
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t j = 0; j < m; ++j) {
        parts(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j)) = data[e * m + j].real();
        parts(static_cast<Eigen::Index>(ne + e), static_cast<Eigen::Index>(j)) = data[e * m + j].imag();
      }
    }
    const RowMajor out = parts * bessel_;
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t j = 0; j < m; ++j) {
        data[e * m + j] = Complex(out(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j)),
                                  out(static_cast<Eigen::Index>(ne + e), static_cast<Eigen::Index>(j)));
      }
    }
  }

  GridPtr space_;
  GridPtr frequency_;
  detail::FftPlan forward_plan_;
  detail::FftPlan backward_plan_;
  std::vector<double> sign_;
  std::vector<double> post_sign_;
  Eigen::MatrixXd bessel_;
};

namespace detail {

inline std::shared_ptr<const WeinsteinTransform> cached_transform(const GridPtr& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double, int, double, int, int>,
                  std::shared_ptr<const WeinsteinTransform>>
      cache;
  const auto& p = grid->params();
  const auto& s = grid->spec();
  const auto key = std::make_tuple(p.d, p.alpha, s.euclid_extent, s.euclid_points, s.radial_extent,
                                   s.radial_points, static_cast<int>(s.radial_rule));
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GridPtr space = grid->domain() == Domain::space ? grid : grid->dual();
  auto tr = std::make_shared<const WeinsteinTransform>(std::move(space));
  cache.emplace(key, tr);
  return tr;
}

}  // namespace detail

/// Transform shared by every function on grids equal to `grid` (either side).
inline std::shared_ptr<const WeinsteinTransform> transform_for(const GridPtr& grid) {
  return detail::cached_transform(grid);
}

inline SpectralFunction forward(const GridFunction& f) {
  return transform_for(f.grid_ptr())->forward(f);
}

inline GridFunction inverse(const SpectralFunction& g) {
  return transform_for(g.grid_ptr())->inverse(g);
}

/// ||F f||_{alpha,q} / ||f||_{alpha,p}, q = p/(p-1); at most 1 in the continuum.
inline double hausdorff_young_ratio(const GridFunction& f, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw DomainError("Hausdorff-Young ratio needs p in (1, 2]");
  const double np = lp_norm(f, p);
  if (np == 0.0) throw ZeroFunction("Hausdorff-Young ratio of the zero function");
  const double q = p / (p - 1.0);
  return lp_norm(forward(f), q) / np;
}

/// Conjugate exponent p/(p-1); infinity for p = 1.
inline double conjugate_exponent(double p) { return p == 1.0 ? kInfinity : p / (p - 1.0); }

}  // namespace weinlab
