#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lcgeom/berwald.hpp"
#include "lcgeom/presets.hpp"

using namespace lcg;

namespace {

LogConcaveFunction fn(const char* d) { return parse_function(d); }

double closed_interval_x(double p) {
  if (p == 0.0) return std::exp(kEulerMascheroni - 1.0);
  return std::pow(1.0 / std::tgamma(2.0 + p), 1.0 / p);
}

}  // namespace

TEST(Profiles, Validation) {
  EXPECT_THROW(MomentProfile::linear(0.0), std::invalid_argument);
  EXPECT_THROW(MomentProfile::power(1.5), std::invalid_argument);
  EXPECT_THROW(MomentProfile::power(0.0), std::invalid_argument);
  EXPECT_THROW(MomentProfile::constant(-1.0), std::invalid_argument);
  EXPECT_THROW(MomentProfile::piecewise_linear({0, 1, 2}, {0, 1, 0.5}), std::invalid_argument);
  EXPECT_THROW(MomentProfile::piecewise_linear({0, 1, 2}, {0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(MomentProfile::piecewise_linear({1, 2}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(MomentProfile::sampled({0, 1, 1}, {0, 1, 2}), std::invalid_argument);
  EXPECT_NO_THROW(MomentProfile::piecewise_linear({0, 1, 3}, {0, 1, 2}));
}

TEST(Profiles, Parsing) {
  EXPECT_NEAR(parse_profile("linear:3")(2.0), 6.0, 1e-15);
  EXPECT_NEAR(parse_profile("power:0.5")(4.0), 2.0, 1e-15);
  EXPECT_NEAR(parse_profile("constant:2")(7.0), 2.0, 1e-15);
  const MomentProfile pwl = parse_profile("pwl:0,0;1,1;3,2");
  EXPECT_NEAR(pwl(0.5), 0.5, 1e-15);
  EXPECT_NEAR(pwl(2.0), 1.5, 1e-15);
  EXPECT_NEAR(pwl(5.0), 3.0, 1e-15);
  EXPECT_EQ(pwl.knots(), std::vector<double>({1.0, 3.0}));
  EXPECT_THROW(parse_profile("linear"), std::invalid_argument);
  EXPECT_THROW(parse_profile("cubic:1"), std::invalid_argument);
  EXPECT_THROW(parse_profile("pwl:0,0;1"), std::invalid_argument);
  EXPECT_THROW(parse_profile("linear:abc"), std::invalid_argument);
}

TEST(Profiles, SampledInterpolatesAndStaysMonotoneProperty) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> step(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> r{0.0}, v{step(rng)};
    for (int i = 0; i < 8; ++i) {
      r.push_back(r.back() + step(rng));
      v.push_back(v.back() + (trial % 3 == 0 ? 0.0 : step(rng)));
    }
    const MomentProfile g = MomentProfile::sampled(r, v);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(g(r[i]), v[i], 1e-12);
    double prev = g(0.0);
    for (double x = 0.0; x < r.back() + 2.0; x += 0.01) {
      const double y = g(x);
      EXPECT_GE(y, prev - 1e-12);
      prev = y;
    }
    // Linear extension with the last secant.
    const double slope = (v.back() - v[v.size() - 2]) / (r.back() - r[r.size() - 2]);
    EXPECT_NEAR(g(r.back() + 1.0), v.back() + slope, 1e-12);
  }
}

TEST(PhiGamma, ClosedFormsAcrossP) {
  // linear: c; power alpha: (Gamma(1 + alpha p) / Gamma(1 + p))^{1/p};
  // constant: c Gamma(1 + p)^{-1/p}.
  for (double p : {-0.9, -0.5, -0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    EXPECT_NEAR(phi_gamma(MomentProfile::linear(2.5), p) / 2.5, 1.0, 1e-9) << p;
    for (double a : {0.25, 0.5, 1.0}) {
      const double expected = std::pow(std::tgamma(1 + a * p) / std::tgamma(1 + p), 1 / p);
      EXPECT_NEAR(phi_gamma(MomentProfile::power(a), p) / expected, 1.0, 1e-8) << p << " " << a;
    }
    EXPECT_NEAR(phi_gamma(MomentProfile::constant(2.0), p) / (2.0 * std::pow(std::tgamma(1 + p), -1 / p)), 1.0, 1e-9);
  }
}

TEST(PhiGamma, PZeroLimit) {
  // p = 0: exp(gamma_E + int log gamma e^{-r}) with int log r e^{-r} = -gamma_E.
  EXPECT_NEAR(phi_gamma(MomentProfile::power(0.5), 0.0), std::exp(0.5 * kEulerMascheroni), 1e-9);
  EXPECT_NEAR(phi_gamma(MomentProfile::linear(3.0), 0.0), 3.0, 1e-9);
  EXPECT_NEAR(phi_gamma(MomentProfile::constant(1.0), 0.0), std::exp(kEulerMascheroni), 1e-9);
  const MomentProfile pwl = parse_profile("pwl:0,0;1,1;3,2");
  EXPECT_NEAR(phi_gamma(pwl, 0.0), phi_gamma(pwl, 1e-5), 1e-4);
  EXPECT_NEAR(phi_gamma(pwl, 0.0), phi_gamma(pwl, -1e-5), 1e-4);
  EXPECT_THROW(phi_gamma(pwl, -1.0), std::domain_error);
}

TEST(PhiGamma, NonIncreasingForConcaveProfilesProperty) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> ps{-0.9, -0.6, -0.3, 0.0, 0.3, 1.0, 2.0, 5.0};
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> r{0.0}, v{u(rng) < 0.3 ? 0.0 : u(rng)};
    double slope = 0.5 + 2.0 * u(rng);
    for (int i = 0; i < 5; ++i) {
      const double dr = 0.2 + 2.0 * u(rng);
      r.push_back(r.back() + dr);
      v.push_back(v.back() + slope * dr);
      slope *= u(rng);
    }
    const MomentProfile g = MomentProfile::piecewise_linear(r, v);
    double prev = INFINITY;
    for (double p : ps) {
      const double val = phi_gamma(g, p);
      EXPECT_LE(val, prev * (1 + 1e-7)) << "trial " << trial << " p " << p;
      prev = val;
    }
  }
}

TEST(Witness, ParsingAndValidation) {
  const Epigraph sq(fn("indicator:square"));
  const auto x = parse_witness("affine:x", 2);
  EXPECT_THROW(validate_witness(sq, x), std::invalid_argument);
  EXPECT_NO_THROW(validate_witness(sq, parse_witness("affine:1,0,0,1", 2)));
  EXPECT_NO_THROW(validate_witness(sq, parse_witness("chord:e1", 2)));
  EXPECT_THROW(validate_witness(sq, parse_witness("affine:0,0,0,0", 2)), std::invalid_argument);
  const Epigraph en(fn("expnorm:square"));
  EXPECT_NO_THROW(validate_witness(en, parse_witness("affine:t", 2)));
  EXPECT_THROW(validate_witness(en, parse_witness("affine:0,0,-1,5", 2)), std::invalid_argument);
  EXPECT_THROW(parse_witness("affine:z", 2), std::invalid_argument);
  EXPECT_THROW(parse_witness("affine:1,2", 2), std::invalid_argument);
  EXPECT_THROW(parse_witness("chord:0,0", 2), std::invalid_argument);
  EXPECT_THROW(parse_witness("chord:e3", 2), std::invalid_argument);
  EXPECT_THROW(parse_witness("spline:1", 2), std::invalid_argument);
  const auto c = std::get<OneSidedChord>(parse_witness("chord:3,4", 2));
  EXPECT_NEAR(norm(c.u), 1.0, 1e-15);
}

TEST(Witness, Evaluation) {
  const Epigraph en(fn("expnorm:square"));
  EXPECT_NEAR(eval_witness(en, parse_witness("chord:e1", 2), Vec(0.5, 0.0), 2.0), 1.5, 1e-14);
  EXPECT_NEAR(eval_witness(en, parse_witness("affine:1,2,3,4", 2), Vec(1.0, 1.0), 2.0), 13.0, 1e-14);
}

TEST(Superlevel, IndicatorSquareAffine) {
  // h = x + 1 on [-1,1]^2: mu(h >= s) = (2 - s) / 2 on [0, 2].
  const Epigraph L(fn("indicator:square"));
  const auto h = parse_witness("affine:1,0,0,1", 2);
  for (double s : {0.0, 0.3, 1.0, 1.7}) EXPECT_NEAR(superlevel_measure(L, h, s), (2 - s) / 2, 1e-9) << s;
  EXPECT_NEAR(superlevel_measure(L, h, -1.0), 1.0, 1e-12);
  EXPECT_EQ(superlevel_measure(L, h, 2.5), 0.0);
}

TEST(Superlevel, NonIncreasingProperty) {
  const Epigraph L(fn("gaussian:2"));
  const auto h = parse_witness("chord:e2", 2);
  double prev = 1.0;
  for (double s = 0.0; s < 6.0; s += 0.25) {
    const double v = superlevel_measure(L, h, s);
    EXPECT_LE(v, prev + 1e-9);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
}

TEST(Epigraph, ClosedFormIntervalX) {
  const Epigraph L(fn("indicator:interval01"));
  const auto h = parse_witness("affine:x", 1);
  for (double p : {-0.5, -0.2, 0.0, 1.0, 2.0, 5.0})
    EXPECT_NEAR(berwald_epigraph(L, h, p) / closed_interval_x(p), 1.0, 1e-8) << p;
  EXPECT_NEAR(berwald_epigraph(L, h, -0.5), kPi / 4, 1e-8);
  EXPECT_NEAR(berwald_epigraph(L, h, 1.0), 0.5, 1e-10);
  EXPECT_NEAR(berwald_epigraph(L, h, 2.0), 1.0 / std::sqrt(6.0), 1e-10);
}

TEST(Epigraph, MomentsOfIndicatorSquare) {
  // int_{[-1,1]^2} (x+1)^p dx / 4 = 2^p / (p + 1).
  const Epigraph L(fn("indicator:square"));
  const auto h = parse_witness("affine:1,0,0,1", 2);
  for (double p : {-0.5, 0.5, 1.0, 3.0}) EXPECT_NEAR(epigraph_moment(L, h, p), std::pow(2.0, p) / (p + 1), 1e-8) << p;
  EXPECT_THROW(epigraph_moment(L, h, -1.0), std::domain_error);
}

TEST(Epigraph, AffineChordOnSimplexIsConstant) {
  // On exp(-||x||_simplex) the chord in direction e1 is affine on L, so the
  // functional does not depend on p.
  const Epigraph L(fn("expnorm:simplex2"));
  const auto h = parse_witness("chord:e1", 2);
  for (double p : {-0.5, 0.0, 1.0, 3.0}) EXPECT_NEAR(berwald_epigraph(L, h, p), 1.0, 1e-7) << p;
}

TEST(Epigraph, NonIncreasingProperty) {
  const std::vector<double> ps{-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 4.0};
  struct Pair {
    const char* f;
    const char* h;
  };
  for (const Pair& c : {Pair{"expnorm:square", "chord:e1"}, Pair{"gaussian:2", "chord:0.6,0.8"},
                        Pair{"indicator:disk", "affine:0,1,0,1"}, Pair{"expnorm:disk", "affine:t"}}) {
    const Epigraph L(fn(c.f));
    const auto h = parse_witness(c.h, L.function().dim());
    validate_witness(L, h);
    double prev = INFINITY;
    for (double p : ps) {
      const Evaluation e = guarded([&] { return berwald_epigraph(L, h, p); });
      if (e.status != EvalStatus::ok) continue;
      EXPECT_LE(e.value, prev * (1 + 1e-4)) << c.f << " " << c.h << " p " << p;
      prev = e.value;
    }
  }
}

TEST(Rearrangement, EquimeasurableProfileMatchesEpigraph) {
  const Epigraph L(fn("expnorm:square"));
  const auto h = parse_witness("chord:e1", 2);
  const Rearrangement R = rearranged_gamma(L, h);
  ASSERT_EQ(R.r_grid.size(), R.gamma.size());
  for (std::size_t i = 1; i < R.gamma.size(); ++i) EXPECT_LE(R.gamma[i], R.gamma[i - 1] + 1e-8);
  for (double p : {0.5, 1.0, 2.0}) EXPECT_NEAR(phi_gamma(R.gamma1, p) / berwald_epigraph(L, h, p), 1.0, 1e-3);
  EXPECT_THROW(rearranged_gamma(L, h, {0.5, 1.5}), std::invalid_argument);
}

TEST(Classical, IntervalClosedForms) {
  const Body K = preset_body("interval01");
  auto x = [](const Vec& v) { return v[0]; };
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    EXPECT_NEAR(berwald_classical(K, x, p), 1.0, 1e-10);
    EXPECT_NEAR(holder_mean(K, x, p), std::pow(1.0 / (p + 1), 1.0 / p), 1e-10);
  }
  EXPECT_THROW(berwald_classical(K, x, 0.0), std::domain_error);
  EXPECT_THROW(holder_mean(K, x, -1.0), std::domain_error);
}

TEST(Classical, ReverseHolderOrderingProperty) {
  // Random concave tents phi(x) = min(a x + b, c (1 - x) + d) on [0, 1]: the
  // Berwald mean decreases and the Hoelder mean increases in p.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const Body K = preset_body("interval01");
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(rng), b = u(rng) * 0.5, c = u(rng), d = u(rng) * 0.5;
    auto phi = [&](const Vec& v) { return std::min(a * v[0] + b, c * (1 - v[0]) + d); };
    validate_concave_on(K, phi);
    double prev_b = INFINITY, prev_h = 0.0;
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
      const double bw = berwald_classical(K, phi, p);
      const double hm = holder_mean(K, phi, p);
      EXPECT_LE(bw, prev_b * (1 + 1e-8));
      EXPECT_GE(hm, prev_h * (1 - 1e-8));
      prev_b = bw;
      prev_h = hm;
    }
  }
}

TEST(Classical, RejectsNonConcave) {
  const Body K = preset_body("square");
  EXPECT_THROW(validate_concave_on(K, [](const Vec& v) { return dot(v, v); }), std::invalid_argument);
  EXPECT_THROW(validate_concave_on(K, [](const Vec& v) { return v[0]; }), std::invalid_argument);
}

TEST(Guarded, MapsErrors) {
  EXPECT_EQ(guarded([] { return 1.5; }).status, EvalStatus::ok);
  EXPECT_EQ(guarded([]() -> double { throw DivergenceError("x"); }).status, EvalStatus::diverged);
  EXPECT_EQ(guarded([]() -> double { throw QuadratureError("x", 0, 0); }).status, EvalStatus::quadrature_failed);
  EXPECT_EQ(guarded([] { return 1e13; }).status, EvalStatus::diverged);
  EXPECT_EQ(to_string(EvalStatus::quadrature_failed), "quadrature_failed");
}

TEST(SweepCsv, Format) {
  std::vector<SweepRow> rows{{0.5, {0.123456789012345, EvalStatus::ok, ""}},
                             {1.0, {0.0, EvalStatus::diverged, "x"}}};
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str(), "p,value,status\n0.5,0.123456789012,ok\n1,nan,diverged\n");
}

TEST(PGrid, Parsing) {
  const auto g = parse_p_grid("-0.9:4:25");
  ASSERT_EQ(g.size(), 25u);
  EXPECT_DOUBLE_EQ(g.front(), -0.9);
  EXPECT_DOUBLE_EQ(g.back(), 4.0);
  EXPECT_EQ(parse_p_grid("0.5,1,2"), std::vector<double>({0.5, 1.0, 2.0}));
  EXPECT_THROW(parse_p_grid("0:1:1"), std::invalid_argument);
  EXPECT_THROW(parse_p_grid("-1,0"), std::invalid_argument);
  EXPECT_THROW(parse_p_grid("2:1:5"), std::invalid_argument);
  EXPECT_THROW(parse_p_grid(""), std::invalid_argument);
}
