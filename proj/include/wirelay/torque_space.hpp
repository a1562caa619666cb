#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wirelay/mechanism.hpp"

namespace wirelay {

// ---------------------------------------------------------------------------
// Tension box and projection into torque space
// ---------------------------------------------------------------------------

struct TensionBounds {
  double f_min = 1.0;   // [N]
  double f_max = 200.0; // [N]

  void validate() const {
    if (!(f_min >= 0.0 && f_min < f_max))
      throw std::invalid_argument("tension bounds require 0 <= f_min < f_max");
  }
};

// All 2^M corners of the tension hypercube, binary-counter order with the
// first wire as the most significant bit.
inline std::vector<std::vector<double>> tension_vertices(std::size_t wire_count,
                                                         const TensionBounds& bounds) {
  bounds.validate();
  if (wire_count < 1 || wire_count > 12)
    throw std::invalid_argument("tension_vertices: wire_count must be within [1, 12]");
  const std::size_t count = std::size_t{1} << wire_count;
  std::vector<std::vector<double>> vertices(count, std::vector<double>(wire_count));
  for (std::size_t idx = 0; idx < count; ++idx)
    for (std::size_t j = 0; j < wire_count; ++j)
      vertices[idx][j] =
          ((idx >> (wire_count - 1 - j)) & 1u) ? bounds.f_max : bounds.f_min;
  return vertices;
}

// tau = -G^T f
inline std::vector<double> project_to_torque(const MuscleJacobian& jacobian,
                                             const std::vector<double>& tension) {
  if (tension.size() != jacobian.wires)
    throw std::invalid_argument("project_to_torque: tension size does not match wire count");
  std::vector<double> torque(jacobian.dofs, 0.0);
  for (std::size_t d = 0; d < jacobian.dofs; ++d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < jacobian.wires; ++i)
      acc += jacobian.at(i, d) * tension[i];
    torque[d] = -acc;
  }
  return torque;
}

// ---------------------------------------------------------------------------
// Convex hull of the projected vertices
// ---------------------------------------------------------------------------

struct HullFacet {
  std::vector<double> normal;  // unit outward
  double offset = 0.0;         // max over the hull of normal . x
};

struct TorquePolytope {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> vertices;
  std::vector<HullFacet> facets;
};

namespace detail {

// volume of the best simplex below which the point set counts as degenerate
constexpr double kDegenerateVolume = 1e-10;

inline std::optional<TorquePolytope> hull_2d(const std::vector<std::vector<double>>& points) {
  struct P2 {
    double x, y;
    std::size_t idx;
  };
  std::vector<P2> pts;
  pts.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) pts.push_back({points[i][0], points[i][1], i});
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });

  auto turn = [](const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };

  // Andrew monotone chain, strict turns only (collinear points dropped)
  std::vector<P2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size(); i-- > 1;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0.0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);  // last point equals the first

  if (hull.size() < 3) return std::nullopt;
  double area2 = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (std::abs(area2) * 0.5 < kDegenerateVolume) return std::nullopt;
  if (area2 < 0.0) std::reverse(hull.begin(), hull.end());  // enforce CCW

  TorquePolytope poly;
  poly.dimension = 2;
  for (const P2& p : hull) poly.vertices.push_back({p.x, p.y});
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) continue;
    HullFacet facet;
    facet.normal = {dy / len, -dx / len};
    facet.offset = std::max(facet.normal[0] * a.x + facet.normal[1] * a.y,
                            facet.normal[0] * b.x + facet.normal[1] * b.y);
    poly.facets.push_back(std::move(facet));
  }
  return poly;
}

struct HullFace3 {
  std::size_t a, b, c;
  Vec3 normal;     // unit outward
  double offset;
  bool alive = true;
};

inline std::optional<TorquePolytope> hull_3d(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  std::vector<Vec3> pts(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {points[i][0], points[i][1], points[i][2]};
    scale = std::max({scale, std::abs(pts[i].x), std::abs(pts[i].y), std::abs(pts[i].z)});
  }
  const double eps_visible = 1e-12 * scale;

  // initial tetrahedron from greedy extremes
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const Vec3 &p = pts[i], &q = pts[i0];
    if (p.x < q.x || (p.x == q.x && (p.y < q.y || (p.y == q.y && p.z < q.z)))) i0 = i;
  }
  std::size_t i1 = i0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm_squared(pts[i] - pts[i0]);
    if (d > best) { best = d; i1 = i; }
  }
  std::size_t i2 = i0;
  best = -1.0;
  const Vec3 line = pts[i1] - pts[i0];
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm_squared(cross(line, pts[i] - pts[i0]));
    if (d > best) { best = d; i2 = i; }
  }
  std::size_t i3 = i0;
  best = -1.0;
  const Vec3 plane_normal = cross(line, pts[i2] - pts[i0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(dot(plane_normal, pts[i] - pts[i0]));
    if (d > best) { best = d; i3 = i; }
  }
  const double volume =
      std::abs(dot(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]), pts[i3] - pts[i0])) / 6.0;
  if (volume < kDegenerateVolume) return std::nullopt;

  const Vec3 interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;

  std::vector<HullFace3> faces;
  auto push_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    Vec3 normal = cross(pts[b] - pts[a], pts[c] - pts[a]);
    const double len = norm(normal);
    if (len == 0.0) return;
    normal = normal / len;
    double offset = dot(normal, pts[a]);
    if (dot(normal, interior) > offset) {
      std::swap(b, c);
      normal = -normal;
      offset = -offset;
    }
    faces.push_back({a, b, c, normal, offset, true});
  };
  push_face(i0, i1, i2);
  push_face(i0, i1, i3);
  push_face(i0, i2, i3);
  push_face(i1, i2, i3);

  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && dot(faces[f].normal, pts[p]) - faces[f].offset > eps_visible)
        visible.push_back(f);
    if (visible.empty()) continue;

    // horizon: directed edges of visible faces whose reverse is hidden
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t f : visible) {
      const HullFace3& face = faces[f];
      edges.emplace_back(face.a, face.b);
      edges.emplace_back(face.b, face.c);
      edges.emplace_back(face.c, face.a);
    }
    auto has_edge = [&](std::size_t u, std::size_t v) {
      return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end();
    };
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& [u, v] : edges)
      if (!has_edge(v, u)) push_face(u, v, p);
  }

  TorquePolytope poly;
  poly.dimension = 3;
  std::vector<std::size_t> used;
  for (const HullFace3& f : faces) {
    if (!f.alive) continue;
    used.push_back(f.a);
    used.push_back(f.b);
    used.push_back(f.c);
    poly.facets.push_back({{f.normal.x, f.normal.y, f.normal.z}, f.offset});
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (std::size_t i : used) poly.vertices.push_back(points[i]);
  return poly;
}

}  // namespace detail

// Convex hull of D-dimensional points (D in {2, 3}); nullopt when the input
// is affinely dependent (or too small to span the space). Facets are
// triangles for D = 3; coplanar facets are not merged.
inline std::optional<TorquePolytope> build_hull(const std::vector<std::vector<double>>& points,
                                                std::size_t dimension) {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("build_hull: dimension must be 2 or 3");
  for (const auto& p : points)
    if (p.size() != dimension)
      throw std::invalid_argument("build_hull: point dimensionality mismatch");
  if (points.size() < dimension + 1) return std::nullopt;
  return dimension == 2 ? detail::hull_2d(points) : detail::hull_3d(points);
}

// ---------------------------------------------------------------------------
// Inscribed hypersphere
// ---------------------------------------------------------------------------

struct TorqueScore {
  bool origin_interior = false;
  double radius = 0.0;  // R_B when interior, r_min otherwise
};

// Signed distances d_C = n . center - offset over all facets. The center
// must be strictly inside every half-space for a positive radius; a center
// on a facet (within 1e-12) scores the fallback. An absent (degenerate)
// hull also scores the fallback.
inline TorqueScore inscribed_radius(const std::optional<TorquePolytope>& hull, double r_min,
                                    const std::vector<double>& center = {}) {
  if (!(r_min > 0.0)) throw std::invalid_argument("inscribed_radius: r_min must be > 0");
  if (!hull.has_value()) return {false, r_min};
  if (!center.empty() && center.size() != hull->dimension)
    throw std::invalid_argument("inscribed_radius: center dimensionality mismatch");

  double max_signed = -std::numeric_limits<double>::infinity();
  double min_abs = std::numeric_limits<double>::infinity();
  for (const HullFacet& facet : hull->facets) {
    double d = -facet.offset;
    if (!center.empty())
      for (std::size_t i = 0; i < center.size(); ++i) d += facet.normal[i] * center[i];
    max_signed = std::max(max_signed, d);
    min_abs = std::min(min_abs, std::abs(d));
  }
  if (hull->facets.empty() || max_signed >= -1e-12) return {false, r_min};
  return {true, min_abs};
}

}  // namespace wirelay
