#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "weinlab/functions.hpp"
#include "weinlab/grid.hpp"
#include "weinlab/grid_function.hpp"
#include "weinlab/random.hpp"
#include "weinlab/sets.hpp"

using namespace weinlab;

namespace {

GridPtr small_grid(double alpha = 0.5, int d = 1) {
  return TensorGrid::build(WeinsteinParams{d, alpha}, GridSpec{6.0, 32, 6.0, 24});
}

GridFunction random_function(const GridPtr& grid, std::uint64_t seed) {
  Rng rng(seed);
  GridFunction f(grid);
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = Complex(rng.normal(), rng.normal());
  return f;
}

SpatialSet random_set(const GridPtr& grid, double fraction, std::uint64_t seed) {
  return make_set<Domain::space>("random(" + format_number(fraction) + "," + std::to_string(seed) + ")", grid);
}

// a_alpha = 1 / (2^{alpha + d/2} Gamma(alpha + d/2 + 1)).
double a_alpha(double alpha, int d) {
  return 1.0 / (std::pow(2.0, alpha + 0.5 * d) * std::tgamma(alpha + 0.5 * d + 1.0));
}

}  // namespace

TEST(BuildGrid, Structure) {
  const GridPtr g = build_grid(WeinsteinParams{1, 0.5}, 8.0, 64, 8.0, 48);
  EXPECT_EQ(g->euclid_count(), 64u);
  EXPECT_EQ(g->radial_count(), 48u);
  EXPECT_EQ(g->size(), 64u * 48u);
  for (double r : g->radial_nodes()) {
    EXPECT_GT(r, 0.0);
    EXPECT_LE(r, 8.0);
  }
  const auto x = g->point(5 * 48 + 3);
  EXPECT_DOUBLE_EQ(x[0], -8.0 + 5 * 0.25);
  EXPECT_DOUBLE_EQ(x[1], g->radial_nodes()[3]);
}

TEST(BuildGrid, RejectsInvalidSizes) {
  const WeinsteinParams p{1, 0.5};
  EXPECT_ANY_THROW(build_grid(p, 8.0, 63, 8.0, 48));
  EXPECT_ANY_THROW(build_grid(p, 8.0, 6, 8.0, 48));
  EXPECT_ANY_THROW(build_grid(p, 8.0, 64, 8.0, 4));
  EXPECT_ANY_THROW(build_grid(p, -1.0, 64, 8.0, 48));
  EXPECT_ANY_THROW(build_grid(p, 8.0, 64, 0.0, 48));
  EXPECT_THROW(build_grid(WeinsteinParams{1, -0.5}, 8.0, 64, 8.0, 48), DomainError);
  EXPECT_ANY_THROW(build_grid(WeinsteinParams{0, 0.5}, 8.0, 64, 8.0, 48));
}

TEST(BuildGrid, RadialWeightsIntegrateTheWeight) {
  // sum w_j = integral_0^1 r^2 dr = 1/3 for alpha = 1/2, R = 1.
  const GridPtr g = build_grid(WeinsteinParams{1, 0.5}, 1.0, 8, 1.0, 16);
  double total = 0.0;
  for (double w : g->radial_weights()) total += w;
  EXPECT_NEAR(total, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(g->radial_slab_measure(), total * g->params().measure_constant(), 1e-16);
}

TEST(BuildGrid, DualSharesRadialNodes) {
  const GridPtr g = small_grid();
  const GridPtr f = g->dual();
  EXPECT_EQ(f->domain(), Domain::frequency);
  EXPECT_EQ(f->dual()->domain(), Domain::space);
  EXPECT_TRUE(*f->dual() == *g);
  EXPECT_EQ(f->radial_nodes().data(), g->radial_nodes().data());
  EXPECT_DOUBLE_EQ(f->euclid_spacing(), std::numbers::pi / 6.0);
  EXPECT_DOUBLE_EQ(f->euclid_coordinate(16), 0.0);
}

TEST(Measure, ConstantsAgree) {
  // a_alpha equals the measure constant times the (d-1)-sphere area factor.
  for (double alpha : {0.0, 0.5, 1.0}) {
    for (int d : {1, 2}) {
      const WeinsteinParams p{d, alpha};
      EXPECT_NEAR(p.radial_constant(), a_alpha(alpha, d), 1e-15);
      EXPECT_DOUBLE_EQ(p.homogeneous_dimension(), 2.0 * alpha + d + 2.0);
    }
  }
}

// For radial phi: integral phi dmu = a_alpha integral_0^inf phi(r) r^{2 alpha + d + 1} dr.
TEST(Measure, RadialIdentityGaussian) {
  for (double alpha : {0.0, 0.5, 1.0}) {
    const GridPtr g = build_grid(WeinsteinParams{1, alpha}, 8.0, 64, 8.0, 48);
    const GridFunction f = make_function("gaussian(1)", g);
    // a_alpha integral_0^inf e^{-r^2/2} r^{2a+d+1} dr = a_alpha 2^{a+d/2} Gamma(a+d/2+1) = 1.
    EXPECT_NEAR(lp_norm(f, 1.0), 1.0, 1e-6) << alpha;
  }
}

TEST(Measure, RadialIdentityBump) {
  const double rho = 3.0;
  for (double alpha : {0.0, 0.5, 1.0}) {
    const int d = 1;
    const GridPtr g = build_grid(WeinsteinParams{d, alpha}, 4.0, 128, 4.0, 96);
    const GridFunction f = make_function("bump(3)", g);
    auto profile = [&](double r) {
      const double u = r * r / (rho * rho);
      return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) * std::pow(r, 2.0 * alpha + d + 1.0) : 0.0;
    };
    const double ref =
        a_alpha(alpha, d) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(profile, 0.0, rho, 15, 1e-14);
    EXPECT_NEAR(lp_norm(f, 1.0) / ref, 1.0, 1e-6) << alpha;
  }
}

TEST(Measure, BallClosedForm) {
  for (double alpha : {0.0, 0.5, 1.0}) {
    for (int d : {1, 2}) {
      const WeinsteinParams p{d, alpha};
      const double D = p.homogeneous_dimension();
      for (double rho : {0.5, 1.0, 2.0}) {
        const double closed = a_alpha(alpha, d) * std::pow(rho, D) / D;
        const auto exact = SetSpec::parse("ball(" + format_number(rho) + ")").exact_measure(p);
        ASSERT_TRUE(exact.has_value());
        EXPECT_NEAR(*exact / closed, 1.0, 1e-12) << alpha << " " << d << " " << rho;
      }
    }
  }
}

TEST(Measure, MaskApproximatesBall) {
  const GridPtr g = build_grid(WeinsteinParams{1, 0.5}, 4.0, 256, 4.0, 192);
  const double closed = a_alpha(0.5, 1) * std::pow(2.0, 4.0) / 4.0;
  EXPECT_NEAR(measure(make_set<Domain::space>("ball(2)", g)) / closed, 1.0, 5e-3);
}

TEST(Measure, BoxAndAnnulusExact) {
  const WeinsteinParams p{1, 0.5};
  const auto box = SetSpec::parse("box(1.5)").exact_measure(p);
  ASSERT_TRUE(box);
  // C * 2h * h^{2a+2}/(2a+2)
  EXPECT_NEAR(*box, p.measure_constant() * 3.0 * std::pow(1.5, 3.0) / 3.0, 1e-15);
  const auto ann = SetSpec::parse("annulus(1,2)").exact_measure(p);
  const auto b2 = SetSpec::parse("ball(2)").exact_measure(p);
  const auto b1 = SetSpec::parse("ball(1)").exact_measure(p);
  EXPECT_NEAR(*ann, *b2 - *b1, 1e-15);
  EXPECT_FALSE(SetSpec::parse("random(0.5,3)").exact_measure(p).has_value());
}

TEST(Measure, EmptyAndAdditive) {
  const GridPtr g = small_grid();
  EXPECT_EQ(measure(SpatialSet::empty(g)), 0.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SpatialSet a = random_set(g, 0.4, seed);
    const double full = measure(SpatialSet::full(g));
    EXPECT_NEAR(measure(a) + measure(a.complement()), full, 1e-14 * full);
  }
}

TEST(Norms, ZeroAndIndicator) {
  const GridPtr g = small_grid();
  const GridFunction zero(g);
  for (double p : {1.0, 1.5, 2.0, kInfinity}) EXPECT_EQ(lp_norm(zero, p), 0.0);
  const SpatialSet a = make_set<Domain::space>("ball(2)", g);
  GridFunction chi(g);
  for (std::size_t n = 0; n < chi.size(); ++n) chi[n] = a.contains(n) ? 1.0 : 0.0;
  for (double p : {1.0, 1.25, 1.5, 2.0, 3.0}) {
    EXPECT_NEAR(lp_norm(chi, p), std::pow(measure(a), 1.0 / p), 1e-14);
  }
  EXPECT_EQ(lp_norm(chi, kInfinity), 1.0);
}

TEST(Norms, TwoNormIsDirectSum) {
  const GridPtr g = small_grid();
  const GridFunction f = random_function(g, 7);
  double direct = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) direct += g->weights()[n] * std::norm(f[n]);
  EXPECT_NEAR(lp_norm(f, 2.0) * lp_norm(f, 2.0), direct, 1e-12 * direct);
  EXPECT_NEAR(std::real(inner_product(f, f)), direct, 1e-12 * direct);
}

TEST(Norms, RejectsExponentBelowOne) {
  const GridPtr g = small_grid();
  const GridFunction f = random_function(g, 1);
  EXPECT_THROW(lp_norm(f, 0.5), DomainError);
  EXPECT_THROW(weighted_moment_norm(f, -1.0, 2.0), DomainError);
}

TEST(Norms, HolderInequality) {
  const GridPtr g = small_grid();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridFunction f = random_function(g, seed);
    const GridFunction h = random_function(g, seed + 100);
    GridFunction prod(g);
    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = f[n] * h[n];
    for (double p : {1.25, 1.5, 2.0}) {
      const double q = p / (p - 1.0);
      EXPECT_LE(lp_norm(prod, 1.0), lp_norm(f, p) * lp_norm(h, q) * (1.0 + 1e-12));
    }
  }
}

TEST(Norms, MaskIsContraction) {
  const GridPtr g = small_grid();
  const GridFunction f = random_function(g, 11);
  for (std::uint64_t seed : {4u, 5u}) {
    const SpatialSet a = random_set(g, 0.5, seed);
    for (double p : {1.0, 1.25, 1.5, 2.0, kInfinity}) {
      EXPECT_LE(lp_norm(restrict_to(f, a), p), lp_norm(f, p));
    }
  }
}

TEST(MomentNorm, ZeroExponentIsLpNorm) {
  const GridPtr g = small_grid();
  const GridFunction f = random_function(g, 3);
  EXPECT_EQ(weighted_moment_norm(f, 0.0, 1.5), lp_norm(f, 1.5));
}

TEST(MomentNorm, BallIndicatorClosedForm) {
  // || |x| chi_ball ||_1 = a_alpha rho^{D+1}/(D+1); mask quadrature, so O(h) accurate.
  const GridPtr g = build_grid(WeinsteinParams{1, 0.5}, 3.0, 256, 3.0, 192);
  const GridFunction chi = make_function("indicator(ball(2))", g);
  const double D = 4.0;
  const double ref = a_alpha(0.5, 1) * std::pow(2.0, D + 1.0) / (D + 1.0);
  EXPECT_NEAR(weighted_moment_norm(chi, 1.0, 1.0) / ref, 1.0, 5e-3);
}

TEST(MomentNorm, DecreasingInsideUnitBall) {
  const GridPtr g = small_grid();
  const GridFunction chi = make_function("indicator(ball(1))", g);
  double prev = kInfinity;
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double v = weighted_moment_norm(chi, s, 1.5);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Sets, SpecRoundTripAndErrors) {
  for (const char* text : {"ball(2)", "box(1.5)", "box(1,2)", "annulus(0.5,2.5)",
                           "union(ball(1),box(0.5))", "random(0.25,7)", "full", "empty"}) {
    const SetSpec s = SetSpec::parse(text);
    EXPECT_EQ(SetSpec::parse(s.to_string()).to_string(), s.to_string()) << text;
  }
  for (const char* bad : {"ball(-1)", "ball()", "annulus(2,1)", "random(2,1)", "random(0.5,1.5)",
                          "square(1)", "ball(1", "3"}) {
    EXPECT_ANY_THROW(SetSpec::parse(bad)) << bad;
  }
}

TEST(Sets, RandomSetsAreSeeded) {
  const GridPtr g = small_grid();
  const SpatialSet a = random_set(g, 0.3, 42);
  const SpatialSet b = random_set(g, 0.3, 42);
  const SpatialSet c = random_set(g, 0.3, 43);
  EXPECT_TRUE(std::equal(a.mask().begin(), a.mask().end(), b.mask().begin()));
  EXPECT_FALSE(std::equal(a.mask().begin(), a.mask().end(), c.mask().begin()));
}

TEST(Sets, UnionContainsMembers) {
  const GridPtr g = small_grid();
  const SpatialSet u = make_set<Domain::space>("union(ball(1),annulus(2,3))", g);
  const SpatialSet b = make_set<Domain::space>("ball(1)", g);
  const SpatialSet a = make_set<Domain::space>("annulus(2,3)", g);
  EXPECT_NEAR(measure(u), measure(a) + measure(b), 1e-14);
}

TEST(Sets, DomainMismatchRejected) {
  const GridPtr g = small_grid();
  EXPECT_THROW(make_set<Domain::frequency>("ball(1)", g), GridMismatch);
}

TEST(Expressions, ColonShorthand) {
  EXPECT_EQ(to_string(parse_expression("gaussian:1.0")), "gaussian(1)");
  EXPECT_EQ(to_string(parse_expression("gaussian:1,2.5")), "gaussian(1,2.5)");
  EXPECT_EQ(to_string(parse_expression(" bump ( 3 , 1 ) ")), "bump(3,1)");
  EXPECT_ANY_THROW(parse_expression("gaussian(1"));
  EXPECT_ANY_THROW(parse_expression("gaussian(1))"));
}

TEST(Random, DeterministicAndNamed) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
  EXPECT_NE(std::string(kRngAlgorithm).find("mt19937_64"), std::string::npos);
}
