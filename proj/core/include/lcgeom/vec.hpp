#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace lcg {

/// Point or vector of R^n for n <= 3. Coordinates past the ambient
/// dimension are kept at zero, so dot products and norms need no dimension.
struct Vec {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec() = default;
  constexpr explicit Vec(double x, double y = 0.0, double z = 0.0) : c{x, y, z} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec& operator+=(const Vec& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    c[0] *= s; c[1] *= s; c[2] *= s;
    return *this;
  }
  constexpr Vec& operator/=(double s) { return *this *= (1.0 / s); }

  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
constexpr Vec operator-(const Vec& a) { return Vec(-a[0], -a[1], -a[2]); }
constexpr Vec operator*(Vec a, double s) { return a *= s; }
constexpr Vec operator*(double s, Vec a) { return a *= s; }
constexpr Vec operator/(Vec a, double s) { return a /= s; }

constexpr double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec cross(const Vec& a, const Vec& b) {
  return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0]);
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec normalized(const Vec& a) { return a / norm(a); }

/// Unit vector along coordinate axis k.
constexpr Vec axis(std::size_t k) {
  Vec e;
  e[k] = 1.0;
  return e;
}

/// 3x3 row-major matrix. An n x n map (n < 3) is embedded with identity
/// padding so determinants and inverses agree with the n x n block.
struct Mat3 {
  std::array<Vec, 3> rows{Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)};

  static constexpr Mat3 identity() { return Mat3{}; }
  static constexpr Mat3 scaling(double s, int dim) {
    Mat3 m;
    for (int i = 0; i < dim; ++i) m.rows[i][i] = s;
    return m;
  }
  static constexpr Mat3 diagonal(double a, double b = 1.0, double c = 1.0) {
    Mat3 m;
    m.rows[0][0] = a;
    m.rows[1][1] = b;
    m.rows[2][2] = c;
    return m;
  }

  constexpr double operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
  constexpr double& operator()(std::size_t i, std::size_t j) { return rows[i][j]; }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Vec operator*(const Mat3& m, const Vec& v) {
  return Vec(dot(m.rows[0], v), dot(m.rows[1], v), dot(m.rows[2], v));
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

constexpr Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

constexpr double determinant(const Mat3& m) {
  return dot(m.rows[0], cross(m.rows[1], m.rows[2]));
}

/// Inverse via the adjugate; the caller checks the determinant.
constexpr Mat3 inverse(const Mat3& m) {
  const double det = determinant(m);
  const Vec c0 = cross(m.rows[1], m.rows[2]);
  const Vec c1 = cross(m.rows[2], m.rows[0]);
  const Vec c2 = cross(m.rows[0], m.rows[1]);
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r(i, 0) = c0[i] / det;
    r(i, 1) = c1[i] / det;
    r(i, 2) = c2[i] / det;
  }
  return r;
}

}  // namespace lcg
