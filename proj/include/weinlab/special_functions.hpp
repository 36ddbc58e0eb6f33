#pragma once

// Gamma function and the normalized Bessel function
//   j_a(x) = Gamma(a+1) (2/x)^a J_a(x)
//          = Gamma(a+1) sum_k (-1)^k (x/2)^{2k} / (k! Gamma(a+k+1)).

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "weinlab/errors.hpp"

namespace weinlab {

/// Bessel index alpha; the whole library assumes alpha > -1/2.
class BesselOrder {
 public:
  explicit BesselOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > -0.5) || !std::isfinite(alpha)) {
      throw DomainError("Bessel order must satisfy alpha > -1/2, got " + std::to_string(alpha));
    }
  }

  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  return boost::math::lgamma(x);
}

/// Arguments with |x| <= this use the power series, larger ones J_alpha.
inline constexpr double kBesselSeriesSwitch = 15.0;

namespace detail {

// Power series in q = (x/2)^2. Consecutive terms have the ratio
// -q / (k (alpha + k)), so no Gamma values are formed and nothing overflows.
// Accumulated in long double: at |x| = 15 the largest term is ~7e4.
inline double bessel_j_series(double alpha, double x) {
  const long double q = static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<long double>(k) * (static_cast<long double>(alpha) + k));
    sum += term;
    if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum) &&
        static_cast<long double>(k) * k > q) {
      break;
    }
  }
  return static_cast<double>(sum);
}

inline double bessel_j_asymptotic(double alpha, double x) {
  const double ax = std::fabs(x);
  const double scale = std::exp(boost::math::lgamma(alpha + 1.0) + alpha * std::log(2.0 / ax));
  return scale * boost::math::cyl_bessel_j(alpha, ax);
}

}  // namespace detail

/// Normalized Bessel function j_alpha(x); even in x, j_alpha(0) = 1 and
/// |j_alpha(x)| <= 1 on the real line.
inline double normalized_bessel_j(BesselOrder order, double x) {
  const double alpha = order.value();
  const double ax = std::fabs(x);
  if (ax == 0.0) return 1.0;
  if (ax <= kBesselSeriesSwitch) return detail::bessel_j_series(alpha, ax);
  return detail::bessel_j_asymptotic(alpha, ax);
}

inline double normalized_bessel_j(double alpha, double x) {
  return normalized_bessel_j(BesselOrder(alpha), x);
}

}  // namespace weinlab
