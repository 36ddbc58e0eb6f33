#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "weinlab/special_functions.hpp"

using namespace weinlab;

namespace {
constexpr double kOrders[] = {-0.25, 0.0, 0.5, 1.0, 2.5};
}

TEST(LogGamma, KnownValues) {
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5723649429247001, 1e-15);
}

TEST(LogGamma, MatchesHighPrecision) {
  for (double x = 0.5; x <= 50.0; x += 0.37) {
    const double ref = oracle::log_gamma(x);
    const double tol = 1e-13 * std::max(1.0, std::fabs(ref));
    EXPECT_NEAR(log_gamma(x), ref, tol) << "x = " << x;
  }
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
  EXPECT_THROW(log_gamma(std::nan("")), DomainError);
}

TEST(BesselOrder, RejectsAtOrBelowMinusHalf) {
  EXPECT_THROW(BesselOrder(-0.5), DomainError);
  EXPECT_THROW(BesselOrder(-1.0), DomainError);
  EXPECT_NO_THROW(BesselOrder(-0.49));
}

TEST(NormalizedBessel, OneAtOrigin) {
  for (double a : kOrders) EXPECT_EQ(normalized_bessel_j(a, 0.0), 1.0);
}

TEST(NormalizedBessel, HalfOrderIsSinc) {
  for (double x : {1.0, 2.0, 5.0}) {
    EXPECT_NEAR(normalized_bessel_j(0.5, x), std::sin(x) / x, 1e-14);
    EXPECT_NEAR(normalized_bessel_j(0.5, x), oracle::normalized_bessel_series(0.5, x), 1e-14);
  }
  double worst = 0.0;
  for (double x = 0.01; x <= 50.0; x += 0.0137) {
    worst = std::max(worst, std::fabs(normalized_bessel_j(0.5, x) - std::sin(x) / x));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(NormalizedBessel, FirstZeroOfJ0) {
  EXPECT_NEAR(normalized_bessel_j(0.0, 2.404825557695773), 0.0, 1e-14);
}

TEST(NormalizedBessel, EvenInX) {
  for (double a : kOrders) {
    for (double x : {0.3, 7.0, 14.9, 15.1, 40.0, 180.0}) {
      EXPECT_EQ(normalized_bessel_j(a, x), normalized_bessel_j(a, -x));
    }
  }
}

TEST(NormalizedBessel, MatchesSeriesOracleBelowSwitch) {
  for (double a : kOrders) {
    for (double x = 0.05; x <= 15.0; x += 0.71) {
      EXPECT_NEAR(normalized_bessel_j(a, x), oracle::normalized_bessel_series(a, x), 1e-12)
          << "alpha = " << a << " x = " << x;
    }
  }
}

TEST(NormalizedBessel, MatchesBoostOracleUpTo200) {
  for (double a : kOrders) {
    for (double x = 15.5; x <= 200.0; x += 9.3) {
      EXPECT_NEAR(normalized_bessel_j(a, x), oracle::normalized_bessel_boost(a, x), 1e-10)
          << "alpha = " << a << " x = " << x;
    }
  }
}

TEST(NormalizedBessel, BranchesAgreeAtSwitch) {
  const double x = kBesselSeriesSwitch;
  for (double a : kOrders) {
    EXPECT_NEAR(detail::bessel_j_series(a, x), detail::bessel_j_asymptotic(a, x), 1e-9) << a;
  }
}

TEST(NormalizedBessel, BoundedByOne) {
  for (double a : kOrders) {
    double peak = 0.0;
    for (double x = 0.0; x <= 200.0; x += 0.005) {
      peak = std::max(peak, std::fabs(normalized_bessel_j(a, x)));
    }
    EXPECT_LE(peak, 1.0) << a;
  }
}
