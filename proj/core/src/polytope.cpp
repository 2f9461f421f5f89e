#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lcg::detail {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Halfspace> normalize(std::span<const Halfspace> hs) {
  std::vector<Halfspace> out;
  out.reserve(hs.size());
  for (const Halfspace& h : hs) {
    const double len = norm(h.normal);
    out.push_back(Halfspace{h.normal / len, h.offset / len});
  }
  return out;
}

double offset_scale(std::span<const Halfspace> hs) {
  double s = 1.0;
  for (const Halfspace& h : hs) s = std::max(s, std::abs(h.offset));
  return s;
}

bool feasible(const Vec& v, std::span<const Halfspace> hs, double tol) {
  for (const Halfspace& h : hs)
    if (dot(h.normal, v) > h.offset + tol) return false;
  return true;
}

void push_unique(std::vector<Vec>& pts, const Vec& v, double tol) {
  for (const Vec& p : pts)
    if (norm(p - v) <= tol) return;
  pts.push_back(v);
}

// Orders a facet's vertex indices counter-clockwise seen from outside.
std::vector<int> order_ring(const std::vector<Vec>& verts, std::vector<int> idx,
                            const Vec& normal) {
  Vec c;
  for (int i : idx) c += verts[i];
  c /= static_cast<double>(idx.size());
  const Vec ref = std::abs(normal[0]) < 0.9 ? axis(0) : axis(1);
  const Vec b1 = normalized(ref - dot(ref, normal) * normal);
  const Vec b2 = cross(normal, b1);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const Vec da = verts[a] - c, db = verts[b] - c;
    return std::atan2(dot(da, b2), dot(da, b1)) < std::atan2(dot(db, b2), dot(db, b1));
  });
  return idx;
}

double ring_area(const std::vector<Vec>& verts, const std::vector<int>& ring) {
  Vec acc;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i)
    acc += cross(verts[ring[i]] - verts[ring[0]], verts[ring[i + 1]] - verts[ring[0]]);
  return 0.5 * norm(acc);
}

std::optional<PolytopeStructure> enumerate_1d(std::span<const Halfspace> hs) {
  double lo = -kInf, hi = kInf;
  for (const Halfspace& h : hs) {
    const double a = h.normal[0];
    if (a > 0) hi = std::min(hi, h.offset / a);
    else if (a < 0) lo = std::max(lo, h.offset / a);
  }
  const double tol = kRelTol * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (!(hi - lo > tol)) return std::nullopt;
  PolytopeStructure s;
  s.vertices = {Vec(lo), Vec(hi)};
  s.facets = {Facet{Vec(-1.0), -lo, {0}}, Facet{Vec(1.0), hi, {1}}};
  return s;
}

std::optional<PolytopeStructure> enumerate_2d(std::span<const Halfspace> hs) {
  const double tol = kRelTol * offset_scale(hs);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Vec& a = hs[i].normal;
      const Vec& b = hs[j].normal;
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::abs(det) < 1e-12) continue;
      const Vec v((hs[i].offset * b[1] - hs[j].offset * a[1]) / det,
                  (a[0] * hs[j].offset - b[0] * hs[i].offset) / det);
      if (feasible(v, hs, tol)) push_unique(pts, v, tol);
    }
  if (pts.size() < 3) return std::nullopt;
  std::vector<Vec> ring = hull_2d(pts);
  if (ring.size() < 3 || polygon_area(ring) <= tol * tol) return std::nullopt;
  PolytopeStructure s;
  s.facets = polygon_facets(ring);
  s.vertices = std::move(ring);
  return s;
}

std::optional<PolytopeStructure> enumerate_3d(std::span<const Halfspace> hs) {
  const double tol = kRelTol * offset_scale(hs);
  std::vector<Vec> pts;
  const std::size_t m = hs.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Vec nij = cross(hs[i].normal, hs[j].normal);
      if (dot(nij, nij) < 1e-20) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        const double det = dot(hs[k].normal, nij);
        if (std::abs(det) < 1e-10) continue;
        // Cramer: x = (b_i (n_j x n_k) + b_j (n_k x n_i) + b_k (n_i x n_j)) / det
        const Vec v = (hs[i].offset * cross(hs[j].normal, hs[k].normal) +
                       hs[j].offset * cross(hs[k].normal, hs[i].normal) +
                       hs[k].offset * nij) / det;
        if (feasible(v, hs, tol)) push_unique(pts, v, tol);
      }
    }
  if (pts.size() < 4) return std::nullopt;

  PolytopeStructure s;
  s.vertices = pts;
  std::vector<std::vector<int>> seen;
  for (const Halfspace& h : hs) {
    std::vector<int> on;
    for (int v = 0; v < static_cast<int>(pts.size()); ++v)
      if (std::abs(dot(h.normal, pts[v]) - h.offset) <= tol) on.push_back(v);
    if (on.size() < 3) continue;
    if (std::find(seen.begin(), seen.end(), on) != seen.end()) continue;
    seen.push_back(on);
    std::vector<int> ring = order_ring(pts, on, h.normal);
    if (ring_area(pts, ring) <= tol * tol) continue;
    s.facets.push_back(Facet{h.normal, h.offset, std::move(ring)});
  }
  if (s.facets.size() < 4 || structure_volume(3, s) <= tol * tol * tol) return std::nullopt;
  return s;
}

}  // namespace

bool halfspaces_bounded(int dim, std::span<const Halfspace> hs) {
  const std::vector<Halfspace> n = normalize(hs);
  auto recedes = [&](const Vec& d) {
    for (const Halfspace& h : n)
      if (dot(h.normal, d) > 1e-12) return false;
    return true;
  };
  switch (dim) {
    case 1: {
      bool pos = false, neg = false;
      for (const Halfspace& h : n) {
        pos = pos || h.normal[0] > 0;
        neg = neg || h.normal[0] < 0;
      }
      return pos && neg;
    }
    case 2:
      if (n.empty()) return false;
      for (const Halfspace& h : n) {
        const Vec d = perp(h.normal);
        if (recedes(d) || recedes(-d)) return false;
      }
      return true;
    case 3: {
      bool independent_pair = false;
      for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = i + 1; j < n.size(); ++j) {
          const Vec d = cross(n[i].normal, n[j].normal);
          if (norm(d) < 1e-10) continue;
          independent_pair = true;
          const Vec u = normalized(d);
          if (recedes(u) || recedes(-u)) return false;
        }
      return independent_pair;
    }
    default:
      return false;
  }
}

std::optional<PolytopeStructure> enumerate_halfspaces(int dim,
                                                      std::span<const Halfspace> hs) {
  const std::vector<Halfspace> n = normalize(hs);
  switch (dim) {
    case 1: return enumerate_1d(n);
    case 2: return enumerate_2d(n);
    case 3: return enumerate_3d(n);
    default: return std::nullopt;
  }
}

std::vector<Vec> hull_2d(std::vector<Vec> points) {
  std::sort(points.begin(), points.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  double scale = 1.0;
  for (const Vec& p : points) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double tol = 1e-12 * scale * scale;
  auto turn = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  const std::size_t n = points.size();
  if (n < 3) return points;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], points[i]) <= tol) --k;
    h[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], points[i]) <= tol) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  return h;
}

double polygon_area(std::span<const Vec> ccw) {
  double a = 0.0;
  const std::size_t n = ccw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& p = ccw[i];
    const Vec& q = ccw[(i + 1) % n];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * a;
}

std::vector<Facet> polygon_facets(std::span<const Vec> ccw) {
  std::vector<Facet> facets;
  const int n = static_cast<int>(ccw.size());
  for (int i = 0; i < n; ++i) {
    const Vec& p = ccw[i];
    const Vec& q = ccw[(i + 1) % n];
    const Vec normal = normalized(Vec(q[1] - p[1], p[0] - q[0]));
    facets.push_back(Facet{normal, dot(normal, p), {i, (i + 1) % n}});
  }
  return facets;
}

std::optional<PolytopeStructure> convex_hull(int dim, std::span<const Vec> points) {
  double scale = 1.0;
  for (const Vec& p : points)
    for (int k = 0; k < dim; ++k) scale = std::max(scale, std::abs(p[k]));
  const double tol = kRelTol * scale;
  std::vector<Vec> pts;
  for (const Vec& p : points) push_unique(pts, p, tol);

  if (dim == 1) {
    auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(),
                                        [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
    const std::vector<Halfspace> hs{{Vec(-1.0), -(*mn)[0]}, {Vec(1.0), (*mx)[0]}};
    return enumerate_halfspaces(1, hs);
  }
  if (dim == 2) {
    std::vector<Vec> ring = hull_2d(pts);
    if (ring.size() < 3 || polygon_area(ring) <= tol * tol) return std::nullopt;
    PolytopeStructure s;
    s.facets = polygon_facets(ring);
    s.vertices = std::move(ring);
    return s;
  }
  if (dim != 3 || pts.size() < 4) return std::nullopt;
  // Supporting planes through point triples, then a clean enumeration.
  std::vector<Halfspace> planes;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        const double len = norm(nrm);
        if (len < tol * tol) continue;
        nrm /= len;
        double off = dot(nrm, pts[i]);
        bool above = false, below = false;
        for (const Vec& p : pts) {
          const double s = dot(nrm, p) - off;
          above = above || s > tol;
          below = below || s < -tol;
          if (above && below) break;
        }
        if (above && below) continue;
        if (above) {
          nrm = -nrm;
          off = -off;
        }
        bool dup = false;
        for (const Halfspace& h : planes)
          if (norm(h.normal - nrm) < 1e-9 && std::abs(h.offset - off) < tol) {
            dup = true;
            break;
          }
        if (!dup) planes.push_back(Halfspace{nrm, off});
      }
  if (planes.size() < 4) return std::nullopt;
  return enumerate_halfspaces(3, planes);
}

double structure_volume(int dim, const PolytopeStructure& s) {
  switch (dim) {
    case 1: return s.vertices[1][0] - s.vertices[0][0];
    case 2: return polygon_area(s.vertices);
    case 3: {
      Vec c;
      for (const Vec& v : s.vertices) c += v;
      c /= static_cast<double>(s.vertices.size());
      double vol = 0.0;
      for (const Facet& f : s.facets)
        vol += (f.offset - dot(f.normal, c)) * ring_area(s.vertices, f.ring) / 3.0;
      return vol;
    }
    default: return 0.0;
  }
}

}  // namespace lcg::detail
