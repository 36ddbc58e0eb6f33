#pragma once

// Time-limiting P_Omega (multiply by chi_Omega), band-limiting Q_Sigma
// (F(Q_Sigma phi) = chi_Sigma F phi), concentration defects and the
// canonical band-limited approximation.

#include <cmath>
#include <iostream>
#include <string>
#include <utility>

#include "weinlab/grid_function.hpp"
#include "weinlab/transform.hpp"

namespace weinlab {

/// Defects eps_Omega (time, in L^p) and eps_Sigma (frequency, in L^q).
struct ConcentrationLevel {
  double eps_omega = 0.0;
  double eps_sigma = 0.0;

  /// Both defects in [0, 1]; larger values are legal but make the
  /// concentration inequalities vacuous.
  bool sensible() const noexcept {
    return eps_omega >= 0.0 && eps_omega <= 1.0 && eps_sigma >= 0.0 && eps_sigma <= 1.0;
  }
};

inline void require_frequency_set_for(const GridFunction& f, const SpectralSet& sigma) {
  if (!(sigma.grid() == *f.grid().dual())) {
    throw GridMismatch("band set must live on the frequency grid of the function");
  }
}

/// P_Omega f = f chi_Omega.
inline GridFunction project_time(const GridFunction& f, const SpatialSet& omega) {
  return restrict_to(f, omega);
}

/// chi_Sigma F f, i.e. the transform of Q_Sigma f by definition.
inline SpectralFunction band_spectrum(const GridFunction& f, const SpectralSet& sigma) {
  require_frequency_set_for(f, sigma);
  return restrict_to(forward(f), sigma);
}

/// Q_Sigma f = F^{-1}(chi_Sigma F f).
inline GridFunction project_band(const GridFunction& f, const SpectralSet& sigma) {
  return inverse(band_spectrum(f, sigma));
}

/// Q_Sigma f by the direct integral
///   Q_Sigma f(x) = int_Sigma Lambda(-x, lambda) F f(lambda) d mu_alpha(lambda),
/// summed node by node through kernel(). O(size^2); meant for small grids as
/// a cross-check of the FFT route.
inline GridFunction project_band_direct(const GridFunction& f, const SpectralSet& sigma) {
  require_frequency_set_for(f, sigma);
  const TensorGrid& space = f.grid();
  const TensorGrid& freq = sigma.grid();
  const auto& params = space.params();
  const auto wf = freq.weights();
  const auto ws = space.weights();

  // F f on Sigma by direct summation as well.
  std::vector<std::vector<double>> lam(freq.size()), xs(space.size());
  for (std::size_t n = 0; n < space.size(); ++n) xs[n] = space.point(n);
  std::vector<Complex> spectrum(freq.size());
  for (std::size_t k = 0; k < freq.size(); ++k) {
    if (!sigma.contains(k)) continue;
    lam[k] = freq.point(k);
    Complex acc{};
    for (std::size_t n = 0; n < space.size(); ++n) {
      acc += ws[n] * f[n] * kernel(params, xs[n], lam[k]);
    }
    spectrum[k] = acc;
  }

  GridFunction out(f.grid_ptr());
  for (std::size_t n = 0; n < space.size(); ++n) {
    std::vector<double> minus_x = xs[n];
    for (int k = 0; k < params.d; ++k) minus_x[k] = -minus_x[k];
    Complex acc{};
    for (std::size_t k = 0; k < freq.size(); ++k) {
      if (!sigma.contains(k)) continue;
      acc += wf[k] * spectrum[k] * kernel(params, minus_x, lam[k]);
    }
    out[n] = acc;
  }
  return out;
}

/// eps_Omega = ||f - P_Omega f||_p / ||f||_p and
/// eps_Sigma = ||F f - F(Q_Sigma f)||_q / ||F f||_q, q = p/(p-1).
/// p = 1 (q = inf, grid max) is accepted as an extension.
/// `spec` must be F f.
inline ConcentrationLevel concentration_defects(const GridFunction& f, const SpectralFunction& spec,
                                                const SpatialSet& omega, const SpectralSet& sigma,
                                                double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("concentration defects need p in [1, 2]");
  require_frequency_set_for(f, sigma);
  const double norm_f = lp_norm(f, p);
  if (norm_f == 0.0) throw ZeroFunction("concentration defects of the zero function");
  const double q = conjugate_exponent(p);
  const double norm_spec = lp_norm(spec, q);

  ConcentrationLevel level;
  level.eps_omega = lp_norm(restrict_to(f, omega.complement()), p) / norm_f;
  level.eps_sigma =
      norm_spec == 0.0 ? 0.0 : lp_norm(restrict_to(spec, sigma.complement()), q) / norm_spec;
  if (!level.sensible()) {
    std::clog << "weinlab: concentration defects outside [0,1]: eps_omega=" << level.eps_omega
              << " eps_sigma=" << level.eps_sigma << '\n';
  }
  return level;
}

inline ConcentrationLevel concentration_defects(const GridFunction& f, const SpatialSet& omega,
                                                const SpectralSet& sigma, double p) {
  return concentration_defects(f, forward(f), omega, sigma, p);
}

/// Canonical band-limited witness psi = Q_Sigma f and its relative distance
/// ||f - psi||_p / ||f||_p: f is eps-bandlimited to Sigma for every
/// eps >= defect.
struct BandlimitedApproximation {
  GridFunction psi;
  double defect = 0.0;
};

/// Defect of a precomputed witness psi = Q_Sigma f.
inline BandlimitedApproximation bandlimited_projection(const GridFunction& f, GridFunction psi,
                                                       double p) {
  detail::require_exponent(p);
  const double norm_f = lp_norm(f, p);
  if (norm_f == 0.0) throw ZeroFunction("band-limited projection of the zero function");
  const double defect = lp_norm(f - psi, p) / norm_f;
  return {std::move(psi), defect};
}

inline BandlimitedApproximation bandlimited_projection(const GridFunction& f,
                                                       const SpectralSet& sigma, double p) {
  if (lp_norm(f, p) == 0.0) throw ZeroFunction("band-limited projection of the zero function");
  return bandlimited_projection(f, project_band(f, sigma), p);
}

/// Relative failure of psi to be a fixed point of Q_Sigma:
/// ||Q_Sigma psi - psi||_p / ||psi||_p. Zero for exact members of B^p(Sigma).
inline double bandlimit_defect(const GridFunction& psi, const SpectralSet& sigma, double p) {
  const double norm = lp_norm(psi, p);
  if (norm == 0.0) return 0.0;
  return lp_norm(project_band(psi, sigma) - psi, p) / norm;
}

/// ||F(Q_Sigma P_Omega f)||_q / ||f||_p; bounded by mu(Sigma)^{1/q} mu(Omega)^{1/q}.
inline double composed_operator_ratio(const GridFunction& f, const SpatialSet& omega,
                                      const SpectralSet& sigma, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw DomainError("composed operator ratio needs p in (1, 2]");
  const double norm_f = lp_norm(f, p);
  if (norm_f == 0.0) throw ZeroFunction("composed operator ratio of the zero function");
  const double q = conjugate_exponent(p);
  return lp_norm(band_spectrum(project_time(f, omega), sigma), q) / norm_f;
}

}  // namespace weinlab
