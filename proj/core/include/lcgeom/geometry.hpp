#pragma once

// Convex bodies in dimensions 1-3 and their exact primitives: gauges,
// radial and support functions, volumes, shadows, chords and covariograms.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lcgeom/numerics.hpp"
#include "lcgeom/vec.hpp"

namespace lcg {

/// normal . x <= offset
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct HPolytope {
  std::vector<Vec> normals;
  std::vector<double> offsets;
};
struct VPolytope {
  std::vector<Vec> vertices;
};
struct Ball {
  Vec center;
  double radius = 1.0;
};
struct Simplex {
  std::vector<Vec> vertices;
};
/// {center + shape z : |z| <= 1}; the image of a ball under an affine map.
struct Ellipsoid {
  Vec center;
  Mat3 shape;
};

enum class BodyKind { hpolytope, vpolytope, ball, simplex, ellipsoid };

std::string to_string(BodyKind kind);

/// A facet of a polytope: unit outward normal, offset, and (dim 3) the
/// indices of its vertices in counter-clockwise order seen from outside.
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> ring;
};

/// Immutable convex body: compact, convex, nonempty interior. Polytopes keep
/// both their defining description and a computed vertex/facet structure.
class Body {
 public:
  using Description = std::variant<HPolytope, VPolytope, Ball, Simplex, Ellipsoid>;

  /// Validates and builds; throws std::invalid_argument for unbounded,
  /// empty, lower-dimensional or malformed input.
  Body(int dim, Description description);

  static Body hpolytope(int dim, std::vector<Vec> normals, std::vector<double> offsets);
  static Body vpolytope(int dim, std::vector<Vec> vertices);
  static Body ball(int dim, Vec center, double radius);
  static Body simplex(int dim, std::vector<Vec> vertices);
  static Body ellipsoid(int dim, Vec center, const Mat3& shape);
  /// Axis-aligned box [lo, hi] as an H-polytope.
  static Body box(int dim, const Vec& lo, const Vec& hi);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] BodyKind kind() const noexcept;
  [[nodiscard]] const Description& description() const noexcept { return description_; }
  [[nodiscard]] bool is_polytope() const noexcept { return !is_ellipsoid_; }

  /// Polytope structure. Dim 1: {lo, hi}. Dim 2: counter-clockwise cycle.
  [[nodiscard]] std::span<const Vec> vertices() const noexcept { return vertices_; }
  [[nodiscard]] std::span<const Facet> facets() const noexcept { return facets_; }

  /// Ellipsoid data (balls included).
  [[nodiscard]] const Vec& center() const noexcept { return center_; }
  [[nodiscard]] const Mat3& shape() const noexcept { return shape_; }
  [[nodiscard]] const Mat3& inverse_shape() const noexcept { return inverse_shape_; }

  /// Largest coordinate magnitude; the length scale for tolerances.
  [[nodiscard]] double scale() const noexcept { return scale_; }

 private:
  Body() = default;
  friend Body affine_map(const Body&, const Mat3&, const Vec&);

  int dim_ = 0;
  Description description_;
  bool is_ellipsoid_ = false;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  Vec center_;
  Mat3 shape_;
  Mat3 inverse_shape_;
  double scale_ = 1.0;
};

bool contains(const Body& K, const Vec& x, double tol = 1e-12);
/// True when the origin lies in the interior of K.
bool origin_interior(const Body& K);

/// inf{lambda > 0 : x in lambda K}; +infinity when no such lambda exists.
double minkowski_functional(const Body& K, const Vec& x);
/// sup{lambda >= 0 : lambda u in K}; requires the origin in int K.
double radial(const Body& K, const Vec& u);
double support_value(const Body& K, const Vec& u);
double volume(const Body& K);
/// (dim-1)-volume of the orthogonal projection onto u-perp. In dimension 1
/// the projection is a point and the counting measure gives 1.
double project_volume(const Body& K, const Vec& u);

/// Parameter interval {lambda : p + lambda d in K}, or nullopt when the line
/// misses K or meets it in fewer than 1e-12 units of length.
std::optional<std::pair<double, double>> line_interval(const Body& K, const Vec& p,
                                                       const Vec& d);
/// 1-D measure of K intersected with the line y + span{u}.
double chord_length(const Body& K, const Vec& y, const Vec& u);
/// Measure of {lambda >= 0 : x + lambda u in K}.
double one_sided_chord(const Body& K, const Vec& x, const Vec& u);

/// |K intersected with {x : a . x >= m}|.
double halfspace_slice_volume(const Body& K, const Vec& a, double m);

/// |K intersected with (x + K)|.
double covariogram_body(const Body& K, const Vec& x);

/// M K + v; keeps the representation family (a ball under a non-similarity
/// becomes an ellipsoid). Throws std::invalid_argument for singular M.
Body affine_map(const Body& K, const Mat3& M, const Vec& v);
Body scaled(const Body& K, double s);
Body translated(const Body& K, const Vec& v);
/// K - K.
Body difference_body(const Body& K);

/// Volume of a bounded intersection of halfspaces; 0 when it is empty or
/// lower-dimensional.
double halfspace_intersection_volume(int dim, std::span<const Halfspace> halfspaces);

/// Unit vector orthogonal to u in the plane (dim 2).
inline Vec perp(const Vec& u) { return Vec(-u[1], u[0]); }
/// Orthonormal basis {b1, b2} of u-perp (dim 3).
std::pair<Vec, Vec> orthonormal_complement(const Vec& u);

/// Integral of phi over K, decomposed into chords along `chord_direction`
/// (each integrated with end caps) and nested over the shadow, split where
/// the shadow's sections change shape.
double integrate_over_body(const Body& K, FunctionRef<double(const Vec&)> phi,
                           const QuadratureSpec& spec,
                           std::optional<Vec> chord_direction = std::nullopt);

/// Integral over P_{u-perp} K of of_chord(chord_length(K, y, u)). Dim 1 is
/// the single chord through the origin.
double shadow_integral(const Body& K, const Vec& u, FunctionRef<double(double)> of_chord,
                       const QuadratureSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace lcg
