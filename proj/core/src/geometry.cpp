#include "lcgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "polytope.hpp"

namespace lcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("body dimension must be 1, 2 or 3");
}

void check_vec(const Vec& v, int dim, const char* what) {
  for (int k = 0; k < 3; ++k) {
    if (!std::isfinite(v[k])) throw std::invalid_argument(std::string(what) + " is not finite");
    if (k >= dim && v[k] != 0.0)
      throw std::invalid_argument(std::string(what) + " has coordinates beyond the dimension");
  }
}

// Forces identity padding outside the leading dim x dim block.
Mat3 embed(const Mat3& m, int dim) {
  Mat3 r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = m(i, j);
  return r;
}

double vertex_scale(std::span<const Vec> pts) {
  double s = 0.0;
  for (const Vec& p : pts) s = std::max({s, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
  return s;
}

// Unit ball lens volume |B cap (B + d e)| for |e| = 1.
double unit_lens(int dim, double d) {
  if (d >= 2.0) return 0.0;
  switch (dim) {
    case 1: return 2.0 - d;
    case 2: return 2.0 * std::acos(d / 2.0) - 0.5 * d * std::sqrt(4.0 - d * d);
    default: return kPi * (4.0 + d) * (2.0 - d) * (2.0 - d) / 12.0;
  }
}

// |B cap {z . e >= d}| for the unit ball and |e| = 1.
double unit_cap(int dim, double d) {
  if (d >= 1.0) return 0.0;
  if (d <= -1.0) return unit_ball_volume(dim);
  switch (dim) {
    case 1: return 1.0 - d;
    case 2: return std::acos(d) - d * std::sqrt(1.0 - d * d);
    default: return kPi * (1.0 - d) * (1.0 - d) * (2.0 + d) / 3.0;
  }
}

// Sutherland-Hodgman step: keeps normal . z <= offset.
std::vector<Vec> clip_polygon(const std::vector<Vec>& poly, const Vec& normal, double offset) {
  std::vector<Vec> next;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& P = poly[i];
    const Vec& Q = poly[(i + 1) % m];
    const double sp = dot(normal, P) - offset;
    const double sq = dot(normal, Q) - offset;
    if (sp <= 0.0) next.push_back(P);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0))
      next.push_back(P + (sp / (sp - sq)) * (Q - P));
  }
  return next;
}

bool is_similarity(const Mat3& m, int dim, double& factor) {
  const Mat3 g = transpose(m) * m;
  const double s2 = g(0, 0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double want = i == j ? s2 : 0.0;
      if (std::abs(g(i, j) - want) > 1e-12 * s2) return false;
    }
  factor = std::sqrt(s2);
  return true;
}

}  // namespace

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::hpolytope: return "hpolytope";
    case BodyKind::vpolytope: return "vpolytope";
    case BodyKind::ball: return "ball";
    case BodyKind::simplex: return "simplex";
    case BodyKind::ellipsoid: return "ellipsoid";
  }
  return "unknown";
}

Body::Body(int dim, Description description) : dim_(dim), description_(std::move(description)) {
  check_dim(dim);
  auto adopt = [&](std::optional<detail::PolytopeStructure> s, const char* why) {
    if (!s) throw std::invalid_argument(why);
    vertices_ = std::move(s->vertices);
    facets_ = std::move(s->facets);
    scale_ = std::max(vertex_scale(vertices_), 1e-300);
  };

  if (auto* h = std::get_if<HPolytope>(&description_)) {
    if (h->normals.size() != h->offsets.size())
      throw std::invalid_argument("hpolytope needs one offset per normal");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < h->normals.size(); ++i) {
      check_vec(h->normals[i], dim, "normal");
      if (norm(h->normals[i]) == 0.0) throw std::invalid_argument("hpolytope normal is zero");
      if (!std::isfinite(h->offsets[i])) throw std::invalid_argument("offset is not finite");
      hs.push_back(Halfspace{h->normals[i], h->offsets[i]});
    }
    if (!detail::halfspaces_bounded(dim, hs)) throw std::invalid_argument("hpolytope is unbounded");
    adopt(detail::enumerate_halfspaces(dim, hs), "hpolytope is empty or has no interior");
  } else if (auto* v = std::get_if<VPolytope>(&description_)) {
    if (static_cast<int>(v->vertices.size()) < dim + 1)
      throw std::invalid_argument("vpolytope needs at least dim+1 vertices");
    for (const Vec& p : v->vertices) check_vec(p, dim, "vertex");
    adopt(detail::convex_hull(dim, v->vertices), "vpolytope is lower-dimensional");
  } else if (auto* s = std::get_if<Simplex>(&description_)) {
    if (static_cast<int>(s->vertices.size()) != dim + 1)
      throw std::invalid_argument("simplex needs exactly dim+1 vertices");
    for (const Vec& p : s->vertices) check_vec(p, dim, "vertex");
    Mat3 edges;
    for (int i = 0; i < dim; ++i) edges.rows[i] = s->vertices[i + 1] - s->vertices[0];
    edges = embed(transpose(edges), dim);
    if (std::abs(determinant(edges)) <= 1e-12 * std::pow(vertex_scale(s->vertices), dim))
      throw std::invalid_argument("simplex vertices are affinely dependent");
    adopt(detail::convex_hull(dim, s->vertices), "simplex is degenerate");
  } else if (auto* b = std::get_if<Ball>(&description_)) {
    check_vec(b->center, dim, "center");
    if (!(b->radius > 0.0) || !std::isfinite(b->radius))
      throw std::invalid_argument("ball radius must be positive");
    is_ellipsoid_ = true;
    center_ = b->center;
    shape_ = Mat3::scaling(b->radius, dim);
  } else {
    const auto& e = std::get<Ellipsoid>(description_);
    check_vec(e.center, dim, "center");
    is_ellipsoid_ = true;
    center_ = e.center;
    shape_ = embed(e.shape, dim);
    std::get<Ellipsoid>(description_).shape = shape_;
    const double det = determinant(shape_);
    double entry = 0.0;
    for (int i = 0; i < dim; ++i) entry = std::max(entry, norm(shape_.rows[i]));
    if (!std::isfinite(det) || !(std::abs(det) > 1e-14 * std::pow(entry, dim)))
      throw std::invalid_argument("ellipsoid shape is singular");
  }
  if (is_ellipsoid_) {
    inverse_shape_ = inverse(shape_);
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s = std::max(s, std::abs(center_[k]) + norm(shape_.rows[k]));
    scale_ = s;
  }
}

Body Body::hpolytope(int dim, std::vector<Vec> normals, std::vector<double> offsets) {
  return Body(dim, HPolytope{std::move(normals), std::move(offsets)});
}
Body Body::vpolytope(int dim, std::vector<Vec> vertices) {
  return Body(dim, VPolytope{std::move(vertices)});
}
Body Body::ball(int dim, Vec center, double radius) { return Body(dim, Ball{center, radius}); }
Body Body::simplex(int dim, std::vector<Vec> vertices) {
  return Body(dim, Simplex{std::move(vertices)});
}
Body Body::ellipsoid(int dim, Vec center, const Mat3& shape) {
  return Body(dim, Ellipsoid{center, shape});
}
Body Body::box(int dim, const Vec& lo, const Vec& hi) {
  std::vector<Vec> normals;
  std::vector<double> offsets;
  for (int k = 0; k < dim; ++k) {
    normals.push_back(axis(k));
    offsets.push_back(hi[k]);
    normals.push_back(-axis(k));
    offsets.push_back(-lo[k]);
  }
  return hpolytope(dim, std::move(normals), std::move(offsets));
}

BodyKind Body::kind() const noexcept {
  return static_cast<BodyKind>(description_.index());
}

bool contains(const Body& K, const Vec& x, double tol) {
  if (K.is_polytope()) {
    const double t = tol * std::max(1.0, K.scale());
    for (const Facet& f : K.facets())
      if (dot(f.normal, x) > f.offset + t) return false;
    return true;
  }
  return norm(K.inverse_shape() * (x - K.center())) <= 1.0 + tol;
}

bool origin_interior(const Body& K) {
  if (K.is_polytope()) {
    const double t = 1e-12 * K.scale();
    for (const Facet& f : K.facets())
      if (f.offset <= t) return false;
    return true;
  }
  return norm(K.inverse_shape() * K.center()) < 1.0 - 1e-12;
}

double minkowski_functional(const Body& K, const Vec& x) {
  if (dot(x, x) == 0.0) return 0.0;
  if (K.is_polytope()) {
    const double tiny = 1e-14 * K.scale();
    const double xtiny = 1e-14 * norm(x);
    double lo = 0.0, hi = kInf;
    for (const Facet& f : K.facets()) {
      const double ax = dot(f.normal, x);
      if (f.offset > tiny) {
        lo = std::max(lo, ax / f.offset);
      } else if (f.offset < -tiny) {
        hi = std::min(hi, ax / f.offset);
      } else if (ax > xtiny) {
        return kInf;
      }
    }
    return lo <= hi * (1.0 + 1e-12) ? lo : kInf;
  }
  const Vec xp = K.inverse_shape() * x;
  const Vec cp = K.inverse_shape() * K.center();
  const double q = dot(xp, xp);
  const double b = dot(cp, xp);
  const double a = 1.0 - dot(cp, cp);
  const double disc = b * b + a * q;
  if (disc < 0.0) return kInf;
  const double den = b + std::sqrt(disc);
  if (!(den > 0.0)) return kInf;
  // 1/mu for the larger root mu of q mu^2 - 2 b mu - a = 0.
  return q / den;
}

double radial(const Body& K, const Vec& u) {
  if (!origin_interior(K)) throw std::invalid_argument("radial function needs the origin in the interior");
  return 1.0 / minkowski_functional(K, u);
}

double support_value(const Body& K, const Vec& u) {
  if (K.is_polytope()) {
    double best = -kInf;
    for (const Vec& v : K.vertices()) best = std::max(best, dot(v, u));
    return best;
  }
  return dot(K.center(), u) + norm(transpose(K.shape()) * u);
}

double volume(const Body& K) {
  const int n = K.dim();
  if (const auto* s = std::get_if<Simplex>(&K.description())) {
    Mat3 edges;
    for (int i = 0; i < n; ++i) edges.rows[i] = s->vertices[i + 1] - s->vertices[0];
    for (int i = n; i < 3; ++i) edges.rows[i] = axis(i);
    return std::abs(determinant(edges)) / std::tgamma(n + 1.0);
  }
  if (K.is_polytope()) {
    detail::PolytopeStructure s{{K.vertices().begin(), K.vertices().end()},
                                {K.facets().begin(), K.facets().end()}};
    return detail::structure_volume(n, s);
  }
  return std::abs(determinant(K.shape())) * unit_ball_volume(n);
}

double project_volume(const Body& K, const Vec& u) {
  const int n = K.dim();
  if (n == 1) return 1.0;
  const Vec w = normalized(u);
  if (n == 2) {
    const Vec t = perp(w);
    return support_value(K, t) + support_value(K, -t);
  }
  if (!K.is_polytope())
    return unit_ball_volume(2) * std::abs(determinant(K.shape())) * norm(K.inverse_shape() * w);
  const auto [b1, b2] = orthonormal_complement(w);
  std::vector<Vec> pts;
  pts.reserve(K.vertices().size());
  for (const Vec& v : K.vertices()) pts.emplace_back(dot(v, b1), dot(v, b2));
  const std::vector<Vec> ring = detail::hull_2d(std::move(pts));
  return ring.size() < 3 ? 0.0 : detail::polygon_area(ring);
}

std::optional<std::pair<double, double>> line_interval(const Body& K, const Vec& p,
                                                       const Vec& d) {
  const double dn = norm(d);
  double lo = -kInf, hi = kInf;
  if (K.is_polytope()) {
    for (const Facet& f : K.facets()) {
      const double nd = dot(f.normal, d);
      const double slack = f.offset - dot(f.normal, p);
      if (std::abs(nd) <= 1e-15 * dn) {
        if (slack < 0.0) return std::nullopt;
        continue;
      }
      const double lam = slack / nd;
      if (nd > 0.0) hi = std::min(hi, lam);
      else lo = std::max(lo, lam);
      if (hi < lo) return std::nullopt;
    }
  } else {
    const Vec pp = K.inverse_shape() * (p - K.center());
    const Vec dp = K.inverse_shape() * d;
    const double a = dot(dp, dp);
    const double b = dot(pp, dp);
    const double disc = b * b - a * (dot(pp, pp) - 1.0);
    if (disc <= 0.0) return std::nullopt;
    const double r = std::sqrt(disc);
    // Stable roots of a l^2 + 2 b l + c.
    const double qv = b >= 0.0 ? -(b + r) : -(b - r);
    const double c = dot(pp, pp) - 1.0;
    double l1 = qv / a, l2 = c / qv;
    if (qv == 0.0) {
      l1 = -r / a;
      l2 = r / a;
    }
    lo = std::min(l1, l2);
    hi = std::max(l1, l2);
  }
  if ((hi - lo) * dn < 1e-12) return std::nullopt;
  return std::make_pair(lo, hi);
}

double chord_length(const Body& K, const Vec& y, const Vec& u) {
  const auto iv = line_interval(K, y, u);
  return iv ? (iv->second - iv->first) * norm(u) : 0.0;
}

double one_sided_chord(const Body& K, const Vec& x, const Vec& u) {
  const auto iv = line_interval(K, x, u);
  if (!iv) return 0.0;
  return std::max(0.0, iv->second - std::max(iv->first, 0.0)) * norm(u);
}

double halfspace_slice_volume(const Body& K, const Vec& a, double m) {
  const int n = K.dim();
  const double an = norm(a);
  if (an == 0.0) return m <= 0.0 ? volume(K) : 0.0;
  if (m <= -support_value(K, -a)) return volume(K);
  if (m >= support_value(K, a)) return 0.0;
  if (!K.is_polytope()) {
    const Vec at = transpose(K.shape()) * a;
    const double d = (m - dot(a, K.center())) / norm(at);
    return std::abs(determinant(K.shape())) * unit_cap(n, d);
  }
  if (n == 1) {
    const double lo = K.vertices()[0][0], hi = K.vertices()[1][0];
    const double cut = m / a[0];
    return a[0] > 0.0 ? hi - std::max(lo, cut) : std::min(hi, cut) - lo;
  }
  if (n == 2) {
    std::vector<Vec> poly(K.vertices().begin(), K.vertices().end());
    return std::max(0.0, detail::polygon_area(clip_polygon(poly, -a, -m)));
  }
  std::vector<Halfspace> hs;
  for (const Facet& f : K.facets()) hs.push_back(Halfspace{f.normal, f.offset});
  hs.push_back(Halfspace{-a, -m});
  return halfspace_intersection_volume(3, hs);
}

double covariogram_body(const Body& K, const Vec& x) {
  const int n = K.dim();
  if (!K.is_polytope()) {
    const double d = norm(K.inverse_shape() * x);
    return std::abs(determinant(K.shape())) * unit_lens(n, d);
  }
  if (n == 1) {
    const double len = K.vertices()[1][0] - K.vertices()[0][0];
    return std::max(0.0, len - std::abs(x[0]));
  }
  if (n == 2) {
    // Clip K's polygon by each edge of the translate.
    std::vector<Vec> poly(K.vertices().begin(), K.vertices().end());
    for (const Facet& f : K.facets()) {
      poly = clip_polygon(poly, f.normal, f.offset + dot(f.normal, x));
      if (poly.size() < 3) return 0.0;
    }
    return std::max(0.0, detail::polygon_area(poly));
  }
  std::vector<Halfspace> hs;
  hs.reserve(2 * K.facets().size());
  for (const Facet& f : K.facets()) {
    hs.push_back(Halfspace{f.normal, f.offset});
    hs.push_back(Halfspace{f.normal, f.offset + dot(f.normal, x)});
  }
  return halfspace_intersection_volume(3, hs);
}

Body affine_map(const Body& K, const Mat3& Min, const Vec& v) {
  const int n = K.dim();
  const Mat3 M = embed(Min, n);
  check_vec(v, n, "translation");
  const double det = determinant(M);
  double entry = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entry = std::max(entry, std::abs(M(i, j)));
  if (!std::isfinite(det) || !(std::abs(det) > 1e-14 * std::pow(entry, n)))
    throw std::invalid_argument("affine map is singular");
  const Mat3 Minv = inverse(M);
  const Mat3 MinvT = transpose(Minv);

  Body out;
  out.dim_ = n;
  if (!K.is_polytope()) {
    const Vec c = M * K.center() + v;
    double s = 0.0;
    if (K.kind() == BodyKind::ball && is_similarity(M, n, s))
      return Body(n, Ball{c, std::get<Ball>(K.description()).radius * s});
    return Body(n, Ellipsoid{c, M * K.shape()});
  }

  auto map_pt = [&](const Vec& p) { return M * p + v; };
  switch (K.kind()) {
    case BodyKind::hpolytope: {
      const auto& h = std::get<HPolytope>(K.description());
      HPolytope hp;
      for (std::size_t i = 0; i < h.normals.size(); ++i) {
        const Vec nn = MinvT * h.normals[i];
        hp.normals.push_back(nn);
        hp.offsets.push_back(h.offsets[i] + dot(nn, v));
      }
      out.description_ = std::move(hp);
      break;
    }
    case BodyKind::vpolytope: {
      VPolytope vp;
      for (const Vec& p : std::get<VPolytope>(K.description()).vertices) vp.vertices.push_back(map_pt(p));
      out.description_ = std::move(vp);
      break;
    }
    default: {
      Simplex sp;
      for (const Vec& p : std::get<Simplex>(K.description()).vertices) sp.vertices.push_back(map_pt(p));
      out.description_ = std::move(sp);
      break;
    }
  }

  for (const Vec& p : K.vertices()) out.vertices_.push_back(map_pt(p));
  if (n == 1) {
    if (out.vertices_[0][0] > out.vertices_[1][0]) std::swap(out.vertices_[0], out.vertices_[1]);
    out.facets_ = {Facet{Vec(-1.0), -out.vertices_[0][0], {0}},
                   Facet{Vec(1.0), out.vertices_[1][0], {1}}};
  } else if (n == 2) {
    if (det < 0.0) std::reverse(out.vertices_.begin(), out.vertices_.end());
    out.facets_ = detail::polygon_facets(out.vertices_);
  } else {
    for (const Facet& f : K.facets()) {
      const Vec nn = MinvT * f.normal;
      const double len = norm(nn);
      Facet g{nn / len, (f.offset + dot(nn, v)) / len, f.ring};
      if (det < 0.0) std::reverse(g.ring.begin(), g.ring.end());
      out.facets_.push_back(std::move(g));
    }
  }
  out.scale_ = std::max(vertex_scale(out.vertices_), 1e-300);
  return out;
}

Body scaled(const Body& K, double s) { return affine_map(K, Mat3::scaling(s, K.dim()), Vec()); }

Body translated(const Body& K, const Vec& v) { return affine_map(K, Mat3::identity(), v); }

Body difference_body(const Body& K) {
  const int n = K.dim();
  if (!K.is_polytope()) {
    if (K.kind() == BodyKind::ball)
      return Body(n, Ball{Vec(), 2.0 * std::get<Ball>(K.description()).radius});
    return Body(n, Ellipsoid{Vec(), Mat3::scaling(2.0, 3) * K.shape()});
  }
  std::vector<Vec> diffs;
  const auto verts = K.vertices();
  for (const Vec& a : verts)
    for (const Vec& b : verts) diffs.push_back(a - b);
  return Body(n, VPolytope{std::move(diffs)});
}

double halfspace_intersection_volume(int dim, std::span<const Halfspace> halfspaces) {
  check_dim(dim);
  if (!detail::halfspaces_bounded(dim, halfspaces)) throw std::invalid_argument("unbounded intersection");
  const auto s = detail::enumerate_halfspaces(dim, halfspaces);
  return s ? std::max(0.0, detail::structure_volume(dim, *s)) : 0.0;
}

std::pair<Vec, Vec> orthonormal_complement(const Vec& u) {
  const Vec w = normalized(u);
  const Vec ref = std::abs(w[0]) < 0.9 ? axis(0) : axis(1);
  const Vec b1 = normalized(ref - dot(ref, w) * w);
  return {b1, cross(w, b1)};
}

namespace {

// Sections of the shadow of a 3-d body on the plane orthogonal to d, in
// coordinates (s, tau) along the basis {b1, b2}. For polytopes the chord
// length is linear between crossings of projected edges; for ellipsoids the
// shadow is an ellipse and the chord a square root of a quadratic.
class ShadowSections {
 public:
  ShadowSections(const Body& K, const Vec& d) : K_(K) {
    std::tie(b1_, b2_) = orthonormal_complement(d);
    const double lo = -support_value(K, -b1_), hi = support_value(K, b1_);
    gap_ = 1e-12 * std::max(1.0, hi - lo);
    s_cuts_ = {lo, hi};
    if (K.is_polytope()) {
      for (const Vec& v : K.vertices()) {
        proj_.emplace_back(dot(v, b1_), dot(v, b2_));
        s_cuts_.push_back(proj_.back().first);
      }
      for (const Facet& F : K.facets())
        for (std::size_t i = 0; i < F.ring.size(); ++i) {
          int a = F.ring[i], b = F.ring[(i + 1) % F.ring.size()];
          if (a > b) std::swap(a, b);
          edges_.emplace_back(a, b);
        }
      std::sort(edges_.begin(), edges_.end());
      edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    } else {
      const Mat3 St = transpose(K.shape());
      const Vec p1 = St * b1_, p2 = St * b2_;
      q11_ = dot(p1, p1);
      q12_ = dot(p1, p2);
      q22_ = dot(p2, p2);
      c1_ = dot(K.center(), b1_);
      c2_ = dot(K.center(), b2_);
    }
    std::sort(s_cuts_.begin(), s_cuts_.end());
    s_cuts_.erase(std::remove_if(s_cuts_.begin(), s_cuts_.end(),
                                 [&](double x) { return x < lo || x > hi; }),
                  s_cuts_.end());
    dedupe(s_cuts_);
  }

  [[nodiscard]] const std::vector<double>& s_cuts() const { return s_cuts_; }
  [[nodiscard]] Vec point(double s, double tau) const { return s * b1_ + tau * b2_; }

  // Sorted tau breaks of the section at s (first and last bound it); empty
  // when the section is degenerate.
  [[nodiscard]] std::vector<double> tau_cuts(double s) const {
    std::vector<double> t;
    if (K_.is_polytope()) {
      for (const auto& [a, b] : edges_) {
        const auto [sa, ta] = proj_[static_cast<std::size_t>(a)];
        const auto [sb, tb] = proj_[static_cast<std::size_t>(b)];
        if ((sa - s) * (sb - s) > 0.0) continue;
        if (sa == sb) {
          t.push_back(ta);
          t.push_back(tb);
        } else {
          t.push_back(ta + (s - sa) / (sb - sa) * (tb - ta));
        }
      }
    } else {
      const double ds = s - c1_;
      const double det = q11_ * q22_ - q12_ * q12_;
      const double disc = det * (q11_ - ds * ds);
      if (disc > 0.0) {
        const double r = std::sqrt(disc);
        t = {c2_ + (q12_ * ds - r) / q11_, c2_ + (q12_ * ds + r) / q11_};
      }
    }
    if (t.size() < 2) return {};
    std::sort(t.begin(), t.end());
    dedupe(t);
    if (t.size() < 2 || t.back() - t.front() <= gap_) return {};
    return t;
  }

 private:
  void dedupe(std::vector<double>& v) const {
    v.erase(std::unique(v.begin(), v.end(), [&](double a, double b) { return b - a <= gap_; }), v.end());
  }

  const Body& K_;
  Vec b1_, b2_;
  double gap_ = 0.0;
  std::vector<double> s_cuts_;
  std::vector<std::pair<double, double>> proj_;
  std::vector<std::pair<int, int>> edges_;
  double q11_ = 0.0, q12_ = 0.0, q22_ = 0.0, c1_ = 0.0, c2_ = 0.0;
};

// Integral of g over the shadow of a 3-d body, split at the section breaks.
double integrate_shadow_3d(const Body& K, const Vec& d, FunctionRef<double(const Vec&)> g,
                           const QuadratureSpec& spec) {
  const ShadowSections sections(K, d);
  const QuadratureSpec inner = spec.with_tolerance(spec.rel_tol * 0.1, spec.abs_tol * 0.1);
  auto section = [&](double s) {
    const std::vector<double> t = sections.tau_cuts(s);
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      v += integrate_singular_ends([&](double tau) { return g(sections.point(s, tau)); }, t[i], t[i + 1], inner);
    return v;
  };
  const std::vector<double>& cuts = sections.s_cuts();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_singular_ends(section, cuts[i], cuts[i + 1], spec);
  return total;
}

}  // namespace

double shadow_integral(const Body& K, const Vec& u, FunctionRef<double(double)> of_chord,
                       const QuadratureSpec& spec) {
  const int n = K.dim();
  const Vec d = normalized(u);
  auto at = [&](const Vec& y) {
    const double c = chord_length(K, y, d);
    return c > 0.0 ? of_chord(c) : 0.0;
  };
  if (n == 1) return at(Vec());
  if (n == 2) {
    const Vec w = perp(d);
    const double lo = -support_value(K, -w), hi = support_value(K, w);
    const double gap = 1e-12 * std::max(1.0, hi - lo);
    std::vector<double> cuts{lo, hi};
    for (const Vec& v : K.vertices()) {
      const double s = dot(v, w);
      if (s > lo + gap && s < hi - gap) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [&](double a, double b) { return b - a <= gap; }),
               cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += integrate_singular_ends([&](double s) { return at(s * w); }, cuts[i], cuts[i + 1], spec);
    return total;
  }
  return integrate_shadow_3d(K, d, at, spec);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

double integrate_over_body(const Body& K, FunctionRef<double(const Vec&)> phi,
                           const QuadratureSpec& spec, std::optional<Vec> chord_direction) {
  const int n = K.dim();
  const QuadratureSpec inner = spec.with_tolerance(spec.rel_tol * 0.1, spec.abs_tol * 0.1);
  auto along = [&](const Vec& base, const Vec& d) {
    const auto iv = line_interval(K, base, d);
    if (!iv) return 0.0;
    return integrate_singular_ends([&](double l) { return phi(base + l * d); }, iv->first,
                                   iv->second, inner);
  };

  if (n == 1) return along(Vec(), Vec(1.0));

  const Vec d = normalized(chord_direction.value_or(axis(n - 1)));
  if (n == 2) {
    const Vec w = perp(d);
    const double lo = -support_value(K, -w);
    const double hi = support_value(K, w);
    // Vertex shadows and the origin are the usual kinks of the slice integral.
    std::vector<double> cuts{lo, hi, 0.0};
    for (const Vec& v : K.vertices()) cuts.push_back(dot(v, w));
    std::sort(cuts.begin(), cuts.end());
    const double gap = 1e-12 * std::max(1.0, hi - lo);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = std::max(cuts[i], lo), b = std::min(cuts[i + 1], hi);
      if (b - a <= gap) continue;
      total += integrate_singular_ends([&](double s) { return along(s * w, d); }, a, b, spec);
    }
    return total;
  }

  return integrate_shadow_3d(K, d, [&](const Vec& y) { return along(y, d); }, spec);
}

}  // namespace lcg
