#pragma once

// Small-scale polytope combinatorics for dimensions 1-3: halfspace
// intersection by brute-force vertex enumeration and convex hulls of point
// sets. Sizes here are tens of constraints, where enumeration is exact and
// simpler than LP machinery.

#include <optional>
#include <span>
#include <vector>

#include "lcgeom/geometry.hpp"

namespace lcg::detail {

struct PolytopeStructure {
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
};

/// False when the recession cone {d : n_i . d <= 0} is nontrivial.
bool halfspaces_bounded(int dim, std::span<const Halfspace> hs);

/// Vertices and non-redundant facets of a bounded intersection of
/// halfspaces, or nullopt when it is empty or lower-dimensional. Normals
/// need not be unit length but must be nonzero.
std::optional<PolytopeStructure> enumerate_halfspaces(int dim,
                                                      std::span<const Halfspace> hs);

/// Convex hull of points; nullopt when the hull is lower-dimensional.
std::optional<PolytopeStructure> convex_hull(int dim, std::span<const Vec> points);

/// Counter-clockwise hull of planar points (first two coordinates).
std::vector<Vec> hull_2d(std::vector<Vec> points);

double polygon_area(std::span<const Vec> ccw);

double structure_volume(int dim, const PolytopeStructure& s);

/// Rebuilds the edge facets of a counter-clockwise polygon.
std::vector<Facet> polygon_facets(std::span<const Vec> ccw);

}  // namespace lcg::detail
