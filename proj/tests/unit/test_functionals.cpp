#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lcgeom/functionals.hpp"
#include "lcgeom/presets.hpp"

using namespace lcg;

namespace {

LogConcaveFunction fn(const char* d) { return parse_function(d); }

// int_{t0}^inf t^k e^{-t} dt = e^{-t0} sum_{j<=k} k!/j! t0^j
double upper_gamma_int(int k, double t0) {
  double s = 0.0, fact_k = 1.0;
  for (int i = 2; i <= k; ++i) fact_k *= i;
  double fact_j = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) fact_j *= j;
    s += fact_k / fact_j * std::pow(t0, j);
  }
  return std::exp(-t0) * s;
}

// g_f for f = exp(-||x||_square): int_{t0}^inf e^{-t} (2t - a)(2t - b) dt.
double expnorm_square_covariogram(const Vec& x) {
  const double a = std::abs(x[0]), b = std::abs(x[1]);
  const double t0 = 0.5 * std::max(a, b);
  return 4 * upper_gamma_int(2, t0) - 2 * (a + b) * upper_gamma_int(1, t0) + a * b * upper_gamma_int(0, t0);
}

Vec unit_at(double th) { return Vec(std::cos(th), std::sin(th)); }

}  // namespace

TEST(StarBodies, ConstantRadiusVolumes) {
  StarBody S{direction_grid(2, 360), {}};
  S.radii.assign(S.grid.size(), 2.0);
  EXPECT_NEAR(star_volume(S), 4 * kPi, 1e-12);
  StarBody B{direction_grid(3, 3000), {}};
  B.radii.assign(B.grid.size(), 1.0);
  EXPECT_NEAR(star_volume(B), 4 * kPi / 3, 1e-10);
}

TEST(Covariogram, ExpNormSquareClosedFormProperty) {
  const CovariogramFn g(fn("expnorm:square"));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-6.0, 6.0);
  for (int i = 0; i < 30; ++i) {
    const Vec x(c(rng), c(rng));
    EXPECT_NEAR(g(x), expnorm_square_covariogram(x), 1e-8 * std::max(1.0, g(x))) << x[0] << "," << x[1];
  }
  EXPECT_NEAR(g.at_zero(), 8.0, 1e-9);
}

TEST(Covariogram, IndicatorIsBodyCovariogram) {
  const auto f = fn("indicator:disk");
  const CovariogramFn g(f);
  for (double d : {0.0, 0.5, 1.5}) EXPECT_NEAR(g(Vec(d, 0)), covariogram_body(f.base(), Vec(d, 0)), 1e-10);
  EXPECT_EQ(g(Vec(2.5, 0)), 0.0);
}

TEST(Covariogram, AtZeroIsL1Norm) {
  for (const auto* d : {"expnorm:simplex2", "gaussian:2", "indicator:square", "expnorm:cube", "gaussian:3"}) {
    const auto f = fn(d);
    EXPECT_NEAR(CovariogramFn(f).at_zero() / l1_norm(f), 1.0, 1e-9) << d;
  }
}

TEST(Covariogram, MinIntegralAgreesWithLevelSetsProperty) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  for (const auto* d : {"expnorm:simplex2", "gaussian:2", "expnorm:interval"}) {
    const auto f = fn(d);
    const CovariogramFn a(f, CovariogramMethod::level_set);
    const CovariogramFn b(f, CovariogramMethod::min_integral);
    for (int i = 0; i < 6; ++i) {
      const Vec x(c(rng), f.dim() > 1 ? c(rng) : 0.0);
      EXPECT_NEAR(a(x), b(x), 1e-6 * std::max(1.0, a(x))) << d;
    }
  }
  EXPECT_THROW(CovariogramFn(fn("expnorm:cube"), CovariogramMethod::min_integral), std::invalid_argument);
}

TEST(Covariogram, EvenAndDecreasingAlongRaysProperty) {
  const CovariogramFn g(fn("expnorm:simplex2"));
  for (double th = 0.0; th < 2 * kPi; th += 0.7) {
    const Vec u = unit_at(th);
    double prev = g.at_zero();
    for (double r = 0.25; r < 4.0; r += 0.25) {
      const double v = g(r * u);
      EXPECT_NEAR(v, g(-r * u), 1e-9 * std::max(1.0, v));
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
}

TEST(BallBodies, ClosedFormRadii) {
  // exp(-||x||_K): rho_K Gamma(1+p)^{1/p}; indicator: rho_K;
  // Gaussian: (p 2^{p/2-1} Gamma(p/2))^{1/p}.
  const auto en = fn("expnorm:square");
  const auto ind = fn("indicator:simplex2");
  const auto ga = fn("gaussian:2");
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (double th : {0.0, 0.4, 1.1, 2.5}) {
      const Vec u = unit_at(th);
      EXPECT_NEAR(ball_body_radial(en, p, u), radial(en.base(), u) * std::pow(std::tgamma(1 + p), 1 / p), 1e-8);
      EXPECT_NEAR(ball_body_radial(ind, p, u), radial(ind.base(), u), 1e-8);
      EXPECT_NEAR(ball_body_radial(ga, p, u), std::pow(p * std::pow(2.0, p / 2 - 1) * std::tgamma(p / 2), 1 / p), 1e-8);
    }
  }
  EXPECT_THROW(ball_body_radial(en, 0.0, Vec(1, 0)), std::domain_error);
}

TEST(BallBodies, NestedInPProperty) {
  // For g with g(0) = max, the normalized radii Gamma(1+p)^{-1/p} rho_p
  // decrease in p.
  const CovariogramFn g(fn("expnorm:disk"));
  const DirectionGrid grid = direction_grid(2, 12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double prev = INFINITY;
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
      const double r = ball_body_radial(g, p, grid.directions[i]) / std::pow(std::tgamma(1 + p), 1 / p);
      EXPECT_LE(r, prev * (1 + 1e-8));
      prev = r;
    }
  }
}

TEST(BallBodies, EvenSourcesUseHalfTheGrid) {
  const auto f = fn("gaussian:2");
  const StarBody S = ball_body(f, 2.0, direction_grid(2, 36));
  for (std::size_t i = 0; i < S.radii.size(); ++i) EXPECT_NEAR(S.radii[i], S.radii[0], 1e-10);
  EXPECT_NEAR(star_volume(S), kPi * 2.0, 1e-8);
}

TEST(PolarProjection, DiskAndSquare) {
  const StarBody D = polar_projection_body(preset_body("disk"), direction_grid(2, 720));
  EXPECT_NEAR(star_volume(D), kPi / 4, 1e-12);
  const StarBody B = polar_projection_body(preset_body("ball3"), direction_grid(3, 2000));
  EXPECT_NEAR(star_volume(B), 4 * kPi / 3 / (kPi * kPi * kPi), 1e-10);
  EXPECT_THROW(polar_projection_body(preset_body("interval"), direction_grid(1, 2)), std::invalid_argument);
  EXPECT_THROW(polar_projection_body(preset_body("disk"), direction_grid(3, 20)), std::invalid_argument);
}

TEST(PolarProjection, SquareClosedFormVolume) {
  // |Pi* square| = (1/2) int 1 / (2(|cos| + |sin|))^2 = (1/8) int d theta / (1 + |sin 2 theta|) = 1/2.
  const StarBody S = polar_projection_body(preset_body("square"), direction_grid(2, 720));
  EXPECT_NEAR(star_volume(S), 0.5, 5e-5);
}

TEST(PolarProjection, FunctionNormScalesWithBody) {
  // ||u||_{Pi* f} = 2 int e^{-t} r(t)^{n-1} |P_u B| dt.
  const auto en = fn("expnorm:simplex2");
  const auto ind = fn("indicator:square");
  const auto ga = fn("gaussian:3");
  for (double th : {0.0, 0.3, 1.9}) {
    const Vec u = unit_at(th);
    EXPECT_NEAR(polar_projection_fn_norm(en, u), 2.0 * project_volume(en.base(), u), 1e-9);
    EXPECT_NEAR(polar_projection_fn_norm(ind, u), 2.0 * project_volume(ind.base(), u), 1e-9);
  }
  // Gaussian in R^3: 2 pi int 2t e^{-t} dt = 4 pi.
  EXPECT_NEAR(polar_projection_fn_norm(ga, normalized(Vec(1, 2, 3))), 4 * kPi, 1e-8);
}

TEST(ChordPower, OneDimensionalClosedForm) {
  const auto f = fn("expnorm:interval");
  for (double p : {-0.9, -0.5, 0.5, 1.0, 2.0, 3.5})
    EXPECT_NEAR(chord_power_integral(f, Vec(1.0), p) / (std::pow(2.0, p) * std::tgamma(1 + p)), 1.0, 1e-8) << p;
  EXPECT_THROW(chord_power_integral(f, Vec(1.0), -1.0), std::domain_error);
}

TEST(ChordPower, PZeroIsNormalizedVolume) {
  // p = 0: (1/||f||_1) int e^{-t} |K_t| dt = 1.
  for (const auto* d : {"expnorm:square", "gaussian:2", "indicator:disk", "expnorm:cube", "gaussian:3"}) {
    const auto f = fn(d);
    const Vec u = f.dim() == 3 ? normalized(Vec(1, -1, 2)) : unit_at(0.7);
    EXPECT_NEAR(chord_power_integral(f, u, 0.0), 1.0, 1e-8) << d;
  }
}

TEST(ChordPower, MatchesBallBodyOfCovariogramProperty) {
  // int_0^inf r^{p-1} (c - r)_+ dr = c^{p+1} / (p (p+1)) along each chord, so
  // rho_{K~_p(g_f)}(u)^p equals the chord power integral.
  const auto f = fn("expnorm:simplex2");
  const CovariogramFn g(f);
  for (double p : {0.5, 1.0, 2.0}) {
    for (double th : {0.2, 2.0, 4.4}) {
      const Vec u = unit_at(th);
      const double lhs = std::pow(ball_body_radial(g, p, u), p);
      EXPECT_NEAR(lhs / chord_power_integral(f, u, p), 1.0, 1e-6) << p << " " << th;
    }
  }
}

TEST(CovariogramIntegral, EqualsSquaredLevelVolumes) {
  // int g_f = int e^{-t} |K_t|^2 dt: |K|^2 for indicators, (2n)! |K|^2 for expnorm.
  EXPECT_NEAR(covariogram_integral(CovariogramFn(fn("indicator:square"))), 16.0, 1e-6);
  EXPECT_NEAR(covariogram_integral(CovariogramFn(fn("expnorm:interval"))), 8.0, 1e-6);
  EXPECT_NEAR(covariogram_integral(CovariogramFn(fn("expnorm:square"))), 16.0 * 24.0, 1e-4);
  EXPECT_THROW(covariogram_integral(CovariogramFn(fn("expnorm:cube"))), std::invalid_argument);
}

TEST(ChordLimit, GapsShrinkTowardMinusOne) {
  const auto rows = chord_power_limit_rows(fn("expnorm:square"), Vec(1, 0), {-0.5, -0.9, -0.99});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].target, 0.25, 1e-9);
  EXPECT_GT(rows[0].gap, rows[1].gap);
  EXPECT_GT(rows[1].gap, rows[2].gap);
  EXPECT_LT(rows[2].gap, 1e-2);
  EXPECT_THROW(chord_power_limit_rows(fn("expnorm:square"), Vec(1, 0), {0.5}), std::domain_error);
}

TEST(StarCsv, HeaderAndRows) {
  const StarBody S = polar_projection_body(preset_body("disk"), direction_grid(2, 4));
  std::ostringstream os;
  write_star_csv(os, S);
  const std::string out = os.str();
  EXPECT_EQ(out.substr(0, out.find('\n')), "theta_or_index,u1,u2,rho");
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 5);
  EXPECT_NE(out.find("0.5"), std::string::npos);
}
