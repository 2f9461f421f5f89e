#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lcgeom/geometry.hpp"
#include "lcgeom/presets.hpp"

using namespace lcg;

namespace {

double shoelace(std::vector<Vec> pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& p = pts[i];
    const Vec& q = pts[(i + 1) % pts.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(a);
}

// Convex polygon with vertices on a jittered circle, sorted by angle.
std::vector<Vec> random_convex_polygon(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::vector<double> th(static_cast<std::size_t>(count));
  for (double& t : th) t = ang(rng);
  std::sort(th.begin(), th.end());
  std::vector<Vec> pts;
  for (double t : th) pts.emplace_back(0.3 + 1.5 * std::cos(t), -0.2 + 0.9 * std::sin(t));
  return pts;
}

Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec v;
  for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = g(rng);
  return normalized(v);
}

double disk_covariogram(double d) {
  if (d >= 2.0) return 0.0;
  return 2.0 * std::acos(d / 2.0) - 0.5 * d * std::sqrt(4.0 - d * d);
}

}  // namespace

TEST(Body, PolygonAreaMatchesShoelaceProperty) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_convex_polygon(rng, 3 + trial % 9);
    const double expected = shoelace(pts);
    if (expected < 1e-3) continue;
    std::vector<Vec> shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Body K = Body::vpolytope(2, shuffled);
    EXPECT_NEAR(volume(K), expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(Body, HullDropsInteriorPoints) {
  const Body K = Body::vpolytope(2, {Vec(0, 0), Vec(2, 0), Vec(2, 2), Vec(0, 2), Vec(1, 1), Vec(0.5, 1.5)});
  EXPECT_EQ(K.vertices().size(), 4u);
  EXPECT_NEAR(volume(K), 4.0, 1e-14);
}

TEST(Body, ClassicalVolumes) {
  EXPECT_NEAR(volume(preset_body("interval")), 2.0, 1e-15);
  EXPECT_NEAR(volume(preset_body("square")), 4.0, 1e-14);
  EXPECT_NEAR(volume(preset_body("triangle")), 0.5, 1e-15);
  EXPECT_NEAR(volume(preset_body("simplex2")), 0.5, 1e-15);
  EXPECT_NEAR(volume(preset_body("disk")), kPi, 1e-14);
  EXPECT_NEAR(volume(preset_body("cube")), 8.0, 1e-13);
  EXPECT_NEAR(volume(preset_body("simplex3")), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(volume(preset_body("ball3")), 4.0 * kPi / 3.0, 1e-13);
}

TEST(Body, PolytopeVolume3dMatchesMonteCarlo) {
  const Body K = Body::vpolytope(3, {Vec(0, 0, 0), Vec(2, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1.5),
                                     Vec(1, 1, 1), Vec(1.5, 0.2, 1.0)});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (contains(K, Vec(u(rng), u(rng), u(rng)))) ++hits;
  const double p = static_cast<double>(hits) / n;
  const double est = 8.0 * p;
  const double se = 8.0 * std::sqrt(p * (1 - p) / n);
  EXPECT_LT(std::abs(volume(K) - est), 4.0 * se);
}

TEST(Body, RejectsDegenerateInput) {
  EXPECT_THROW(Body::vpolytope(2, {Vec(0, 0), Vec(1, 1), Vec(2, 2)}), std::invalid_argument);
  EXPECT_THROW(Body::simplex(2, {Vec(0, 0), Vec(1, 0)}), std::invalid_argument);
  EXPECT_THROW(Body::ball(2, Vec(), 0.0), std::invalid_argument);
  EXPECT_THROW(Body::hpolytope(2, {Vec(1, 0), Vec(0, 1)}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(Body::box(2, Vec(0, 0), Vec(1, 0)), std::invalid_argument);
}

TEST(Body, HpolytopeAgreesWithVpolytope) {
  const Body H = Body::hpolytope(2, {Vec(1, 0), Vec(0, 1), Vec(-1, -1)}, {1.0, 1.0, 1.0});
  const Body V = Body::vpolytope(2, {Vec(1, 1), Vec(1, -2), Vec(-2, 1)});
  EXPECT_NEAR(volume(H), volume(V), 1e-13);
  for (double th = 0.1; th < 6.2; th += 0.37) {
    const Vec u(std::cos(th), std::sin(th));
    EXPECT_NEAR(support_value(H, u), support_value(V, u), 1e-13);
  }
}

TEST(Gauge, RadialIsReciprocalOfMinkowskiProperty) {
  std::mt19937_64 rng(8);
  for (const char* name : {"square", "disk", "simplex2", "cube", "ball3", "simplex3"}) {
    const Body K = preset_body(name);
    ASSERT_TRUE(origin_interior(K)) << name;
    for (int i = 0; i < 50; ++i) {
      const Vec u = random_unit(rng, K.dim());
      EXPECT_NEAR(radial(K, u) * minkowski_functional(K, u), 1.0, 1e-12) << name;
      EXPECT_NEAR(minkowski_functional(K, 3.5 * u), 3.5 * minkowski_functional(K, u), 1e-12);
      EXPECT_TRUE(contains(K, 0.999 * radial(K, u) * u));
      EXPECT_FALSE(contains(K, 1.001 * radial(K, u) * u));
    }
  }
}

TEST(Gauge, OriginOutside) {
  const Body T = preset_body("triangle");
  EXPECT_FALSE(origin_interior(T));
  EXPECT_TRUE(std::isinf(minkowski_functional(T, Vec(-1, 0))));
  EXPECT_NEAR(minkowski_functional(T, Vec(0.25, 0.25)), 0.5, 1e-14);
}

TEST(Support, SquareAndDisk) {
  for (double th = 0.0; th < 2 * kPi; th += 0.3) {
    const Vec u(std::cos(th), std::sin(th));
    EXPECT_NEAR(support_value(preset_body("square"), u), std::abs(u[0]) + std::abs(u[1]), 1e-14);
    EXPECT_NEAR(support_value(preset_body("disk"), u), 1.0, 1e-14);
  }
}

TEST(Projection, SquareShadow) {
  const Body K = preset_body("square");
  for (double th = 0.0; th < 2 * kPi; th += 0.1) {
    const Vec u(std::cos(th), std::sin(th));
    EXPECT_NEAR(project_volume(K, u), 2.0 * (std::abs(u[0]) + std::abs(u[1])), 1e-13);
  }
  EXPECT_DOUBLE_EQ(project_volume(preset_body("interval"), Vec(1.0)), 1.0);
}

TEST(Projection, CauchyFormulaProperty) {
  // |P_u K| = (1/2) sum_F |F| |<u, n_F>|, with facet areas computed here by
  // fanning each facet ring into triangles.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(c(rng), c(rng), c(rng));
    const Body K = Body::vpolytope(3, pts);
    const auto verts = K.vertices();
    std::vector<std::pair<Vec, double>> facets;
    for (const Facet& F : K.facets()) {
      double area = 0.0;
      for (std::size_t i = 1; i + 1 < F.ring.size(); ++i) {
        const Vec& a = verts[static_cast<std::size_t>(F.ring[0])];
        const Vec& b = verts[static_cast<std::size_t>(F.ring[i])];
        const Vec& d = verts[static_cast<std::size_t>(F.ring[i + 1])];
        area += 0.5 * norm(cross(b - a, d - a));
      }
      facets.emplace_back(F.normal, area);
    }
    for (int i = 0; i < 10; ++i) {
      const Vec u = random_unit(rng, 3);
      double expected = 0.0;
      for (const auto& [nrm, area] : facets) expected += 0.5 * area * std::abs(dot(u, nrm));
      EXPECT_NEAR(project_volume(K, u), expected, 1e-12);
    }
  }
}

TEST(Projection, BallShadows) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(project_volume(preset_body("ball3"), random_unit(rng, 3)), kPi, 1e-13);
    EXPECT_NEAR(project_volume(preset_body("disk"), random_unit(rng, 2)), 2.0, 1e-13);
  }
  const Body E = Body::ellipsoid(2, Vec(), Mat3::diagonal(1.0, 3.0));
  EXPECT_NEAR(project_volume(E, Vec(1, 0)), 6.0, 1e-13);
  EXPECT_NEAR(project_volume(E, Vec(0, 1)), 2.0, 1e-13);
}

TEST(Chords, DiskAndSquare) {
  const Body D = preset_body("disk");
  for (double y : {0.0, 0.3, 0.9}) EXPECT_NEAR(chord_length(D, Vec(0, y), Vec(1, 0)), 2 * std::sqrt(1 - y * y), 1e-13);
  EXPECT_EQ(chord_length(D, Vec(0, 1.5), Vec(1, 0)), 0.0);
  EXPECT_NEAR(one_sided_chord(D, Vec(), Vec(0, 1)), 1.0, 1e-14);
  const Body S = preset_body("square");
  EXPECT_NEAR(one_sided_chord(S, Vec(-0.5, 0.2), Vec(1, 0)), 1.5, 1e-14);
  EXPECT_NEAR(chord_length(S, Vec(0.0, 0.0), normalized(Vec(1, 1))), 2.0 * std::sqrt(2.0), 1e-13);
  const auto iv = line_interval(S, Vec(0, 0), Vec(2, 0));
  ASSERT_TRUE(iv.has_value());
  EXPECT_NEAR(iv->first, -0.5, 1e-14);
  EXPECT_NEAR(iv->second, 0.5, 1e-14);
  EXPECT_FALSE(line_interval(S, Vec(0, 3), Vec(1, 0)).has_value());
}

TEST(HalfspaceSlices, SquareAndMonteCarlo) {
  const Body S = preset_body("square");
  EXPECT_NEAR(halfspace_slice_volume(S, Vec(1, 0), 0.0), 2.0, 1e-13);
  EXPECT_NEAR(halfspace_slice_volume(S, Vec(1, 0), 0.5), 1.0, 1e-13);
  EXPECT_NEAR(halfspace_slice_volume(S, Vec(1, 0), -5.0), 4.0, 1e-13);
  EXPECT_EQ(halfspace_slice_volume(S, Vec(1, 0), 5.0), 0.0);
  // Corner cut x + y >= 1 of [-1,1]^2 is a triangle of area 1/2.
  EXPECT_NEAR(halfspace_slice_volume(S, Vec(1, 1), 1.0), 0.5, 1e-13);
  const Body B = preset_body("ball3");
  // Spherical cap of height 1 - m: pi h^2 (3 - h) / 3.
  for (double m : {-0.5, 0.0, 0.4}) {
    const double h = 1.0 - m;
    EXPECT_NEAR(halfspace_slice_volume(B, Vec(0, 0, 1), m), kPi * h * h * (3 - h) / 3, 1e-12);
  }
}

TEST(Covariogram, SquareClosedForm) {
  const Body S = preset_body("square");
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> c(-2.5, 2.5);
  for (int i = 0; i < 40; ++i) {
    const Vec x(c(rng), c(rng));
    const double expected = std::max(0.0, 2 - std::abs(x[0])) * std::max(0.0, 2 - std::abs(x[1]));
    EXPECT_NEAR(covariogram_body(S, x), expected, 1e-12);
  }
}

TEST(Covariogram, DiskClosedForm) {
  const Body D = preset_body("disk");
  for (double d : {0.0, 0.2, 1.0, 1.7, 1.99, 2.5}) {
    EXPECT_NEAR(covariogram_body(D, Vec(d * 0.6, d * 0.8)), disk_covariogram(d), 1e-10) << d;
  }
}

TEST(Covariogram, CubeAndBall3) {
  const Body C = preset_body("cube");
  EXPECT_NEAR(covariogram_body(C, Vec(0.5, -1.0, 0.25)), 1.5 * 1.0 * 1.75, 1e-12);
  const Body B = preset_body("ball3");
  // Lens of two unit balls at distance d: pi (4 + d)(2 - d)^2 / 12.
  for (double d : {0.0, 0.5, 1.3}) EXPECT_NEAR(covariogram_body(B, Vec(0, d, 0)), kPi * (4 + d) * (2 - d) * (2 - d) / 12, 1e-9);
}

TEST(AffineMaps, VolumeScalesByDeterminantProperty) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  for (const char* name : {"triangle", "square", "disk", "simplex3", "cube", "ball3"}) {
    const Body K = preset_body(name);
    for (int i = 0; i < 5; ++i) {
      Mat3 M;
      for (int r = 0; r < K.dim(); ++r)
        for (int s = 0; s < K.dim(); ++s) M(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) = c(rng);
      const double det = determinant(M);
      if (std::abs(det) < 0.05) continue;
      const Body MK = affine_map(K, M, Vec(c(rng), c(rng), K.dim() == 3 ? c(rng) : 0.0));
      EXPECT_NEAR(volume(MK), std::abs(det) * volume(K), 1e-10 * volume(MK) + 1e-12) << name;
    }
  }
}

TEST(AffineMaps, RepresentationFamilies) {
  const Body D = preset_body("disk");
  EXPECT_EQ(affine_map(D, Mat3::diagonal(1, 3), Vec()).kind(), BodyKind::ellipsoid);
  EXPECT_TRUE(scaled(preset_body("square"), 2.0).is_polytope());
  EXPECT_THROW(affine_map(D, Mat3::diagonal(1, 0), Vec()), std::invalid_argument);
  EXPECT_NEAR(volume(scaled(D, 1e-6)), kPi * 1e-12, 1e-24);
  const Body T = translated(preset_body("square"), Vec(3, 0));
  EXPECT_FALSE(origin_interior(T));
  EXPECT_NEAR(volume(T), 4.0, 1e-13);
}

TEST(DifferenceBody, Volumes) {
  // |K - K| = binom(2n, n) |K| for simplices and 2^n |K| for symmetric bodies.
  EXPECT_NEAR(volume(difference_body(preset_body("triangle"))), 6 * 0.5, 1e-12);
  EXPECT_NEAR(volume(difference_body(preset_body("square"))), 16.0, 1e-12);
  EXPECT_NEAR(volume(difference_body(preset_body("simplex3"))), 20.0 / 6.0, 1e-11);
  EXPECT_NEAR(volume(difference_body(preset_body("disk"))), 4 * kPi, 1e-12);
}

TEST(HalfspaceIntersection, EmptyAndUnbounded) {
  std::vector<Halfspace> hs{{Vec(1, 0), 1.0}, {Vec(-1, 0), 1.0}, {Vec(0, 1), 1.0}, {Vec(0, -1), 1.0}};
  EXPECT_NEAR(halfspace_intersection_volume(2, hs), 4.0, 1e-13);
  hs.push_back({Vec(1, 0), -2.0});
  EXPECT_EQ(halfspace_intersection_volume(2, hs), 0.0);
  const std::vector<Halfspace> open{{Vec(1, 0), 1.0}, {Vec(0, 1), 1.0}};
  EXPECT_THROW(halfspace_intersection_volume(2, open), std::invalid_argument);
}

TEST(Integration, MomentsOverBodies) {
  QuadratureSpec spec;
  EXPECT_NEAR(integrate_over_body(preset_body("square"), [](const Vec& x) { return x[0] * x[0]; }, spec), 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(integrate_over_body(preset_body("disk"), [](const Vec& x) { return dot(x, x); }, spec), kPi / 2, 1e-8);
  EXPECT_NEAR(integrate_over_body(preset_body("ball3"), [](const Vec& x) { return dot(x, x); }, spec), 4 * kPi / 5, 1e-8);
  EXPECT_NEAR(integrate_over_body(preset_body("interval01"), [](const Vec& x) { return std::sqrt(x[0]); }, spec), 2.0 / 3.0, 1e-10);
}

TEST(Integration, ShadowIntegralOfChordIsVolumeProperty) {
  QuadratureSpec spec;
  std::mt19937_64 rng(12);
  for (const char* name : {"square", "triangle", "disk", "cube", "simplex3", "ball3"}) {
    const Body K = preset_body(name);
    for (int i = 0; i < 5; ++i) {
      const Vec u = random_unit(rng, K.dim());
      const double v = shadow_integral(K, u, [](double c) { return c; }, spec);
      EXPECT_NEAR(v / volume(K), 1.0, 1e-8) << name;
    }
  }
}

TEST(Integration, GaussLegendreExactness) {
  for (int n : {2, 5, 16, 64}) {
    const auto [x, w] = gauss_legendre(n);
    double sw = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sw += w[i];
      moment += w[i] * std::pow(x[i], 2 * n - 2);
    }
    EXPECT_NEAR(sw, 2.0, 1e-13);
    EXPECT_NEAR(moment, 2.0 / (2 * n - 1), 1e-13);
  }
}

TEST(Symmetry, OrthonormalComplement) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Vec u = random_unit(rng, 3);
    const auto [a, b] = orthonormal_complement(u);
    EXPECT_NEAR(dot(a, u), 0.0, 1e-14);
    EXPECT_NEAR(dot(b, u), 0.0, 1e-14);
    EXPECT_NEAR(dot(a, b), 0.0, 1e-14);
    EXPECT_NEAR(norm(a), 1.0, 1e-14);
    EXPECT_NEAR(norm(b), 1.0, 1e-14);
  }
}
