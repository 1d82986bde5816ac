// Copyright 2026 The sschar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// \brief Planar convex polytopes: hulls, exposed faces, projections.
///
/// A ConvexPolytope2 is stored as its counterclockwise vertex list. One vertex
/// is a point, two vertices a segment, three or more a polygon with positive
/// area. Every operation here is pure.

#ifndef SSCHAR__GEOMETRY2D_HPP_
#define SSCHAR__GEOMETRY2D_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sschar/vec2.hpp"

namespace sschar
{

class ConvexPolytope2
{
public:
  /// Wraps an already convex, counterclockwise, duplicate-free vertex list.
  /// The order is kept as given (no canonical rotation), which lets callers
  /// start the boundary walk at any vertex.
  static ConvexPolytope2 from_ccw(std::vector<Vec2> vertices)
  {
    if (vertices.empty()) {
      throw Error(Errc::invalid_argument, "polytope needs at least one vertex");
    }
    for (const auto & v : vertices) {
      if (!is_finite(v)) {
        throw Error(Errc::invalid_argument, "polytope vertex is not finite");
      }
    }
    const std::size_t n = vertices.size();
    if (n >= 3) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 & a = vertices[i];
        const Vec2 & b = vertices[(i + 1) % n];
        const Vec2 & c = vertices[(i + 2) % n];
        if (cross(b - a, c - b) <= 0.0) {
          throw Error(Errc::invalid_argument, "vertices are not in strictly convex ccw position");
        }
      }
    } else if (n == 2 && vertices[0] == vertices[1]) {
      throw Error(Errc::invalid_argument, "duplicate segment endpoints");
    }
    ConvexPolytope2 k;
    k.vertices_ = std::move(vertices);
    return k;
  }

  std::span<const Vec2> vertices() const {return vertices_;}
  std::size_t size() const {return vertices_.size();}
  const Vec2 & vertex(std::size_t i) const {return vertices_[i];}
  bool is_point() const {return vertices_.size() == 1;}
  bool is_segment() const {return vertices_.size() == 2;}
  bool is_polygon() const {return vertices_.size() >= 3;}

  /// Number of boundary edges walked by edge scans (a segment has one).
  std::size_t edge_count() const
  {
    if (vertices_.size() <= 1) {return 0;}
    return vertices_.size() == 2 ? 1 : vertices_.size();
  }
  std::pair<Vec2, Vec2> edge(std::size_t i) const
  {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  double signed_area() const
  {
    double a = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; n >= 3 && i < n; ++i) {
      a += cross(vertices_[i], vertices_[(i + 1) % n]);
    }
    return 0.5 * a;
  }

  double scale() const
  {
    double s = 0.0;
    for (const auto & v : vertices_) {s = std::max(s, max_abs(v));}
    return s;
  }

private:
  std::vector<Vec2> vertices_;
};

enum class FaceKind { point, segment, whole };

struct Face
{
  FaceKind kind{FaceKind::point};
  /// One entry for a point face, two for a segment, all vertices for `whole`.
  std::vector<Vec2> endpoints;
  std::vector<std::size_t> vertex_indices;
};

inline double default_dedup_tol(double scale) {return 1e-10 * (1.0 + scale);}

/// Convex hull with vertices in counterclockwise order (Andrew's monotone
/// chain). Points closer than `dedup_tol` are merged; a negative tolerance
/// selects the relative default. Turns with |cross| <= 1e-12 * scale^2 count
/// as collinear and are dropped.
inline ConvexPolytope2 hull(std::span<const Vec2> points, double dedup_tol = -1.0)
{
  if (points.empty()) {
    throw Error(Errc::invalid_argument, "hull of an empty point set");
  }
  double scale = 0.0;
  std::vector<Vec2> pts;
  pts.reserve(points.size());
  for (const auto & p : points) {
    if (!is_finite(p)) {
      throw Error(Errc::invalid_argument, "hull input point is not finite");
    }
    scale = std::max(scale, max_abs(p));
    pts.push_back(p);
  }
  const double dedup = dedup_tol < 0.0 ? default_dedup_tol(scale) : dedup_tol;
  const double s = 1.0 + scale;
  const double col_eps = 1e-12 * s * s;

  std::sort(
    pts.begin(), pts.end(), [](const Vec2 & a, const Vec2 & b) {
      return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
    });
  std::vector<Vec2> uniq;
  for (const auto & p : pts) {
    const bool dup = std::any_of(
      uniq.begin(), uniq.end(), [&](const Vec2 & q) {return distance(p, q) <= dedup;});
    if (!dup) {uniq.push_back(p);}
  }
  if (uniq.size() == 1) {
    return ConvexPolytope2::from_ccw({uniq.front()});
  }

  const auto turn = [](const Vec2 & o, const Vec2 & a, const Vec2 & b) {
      return cross(a - o, b - o);
    };
  std::vector<Vec2> chain(2 * uniq.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    while (k >= 2 && turn(chain[k - 2], chain[k - 1], uniq[i]) <= col_eps) {--k;}
    chain[k++] = uniq[i];
  }
  for (std::size_t i = uniq.size() - 1, lo = k + 1; i-- > 0; ) {
    while (k >= lo && turn(chain[k - 2], chain[k - 1], uniq[i]) <= col_eps) {--k;}
    chain[k++] = uniq[i];
  }
  chain.resize(k - 1);
  if (chain.size() >= 3) {
    // near-zero-area slivers can survive the eps test only if the strict
    // convexity check agrees; otherwise fall back to the extreme pair
    bool ok = true;
    for (std::size_t i = 0; i < chain.size() && ok; ++i) {
      const Vec2 & a = chain[i];
      const Vec2 & b = chain[(i + 1) % chain.size()];
      const Vec2 & c = chain[(i + 2) % chain.size()];
      ok = cross(b - a, c - b) > 0.0;
    }
    if (ok) {return ConvexPolytope2::from_ccw(std::move(chain));}
  }
  // collinear: keep the two extreme points along the sort order
  return ConvexPolytope2::from_ccw({uniq.front(), uniq.back()});
}

inline ConvexPolytope2 hull(std::initializer_list<Vec2> points, double dedup_tol = -1.0)
{
  return hull(std::span<const Vec2>(points.begin(), points.size()), dedup_tol);
}

inline std::vector<Vec2> extreme_points(const ConvexPolytope2 & k)
{
  return {k.vertices().begin(), k.vertices().end()};
}

/// Minimizers of <., theta> over K. A direction with |theta| <= tol exposes
/// the whole polytope. Vertices whose support value is within `tol` of the
/// minimum (measured along the unit direction) are treated as ties, and two
/// or more ties expose the full edge they span.
inline Face exposed_face(const ConvexPolytope2 & k, const Vec2 & theta, double tol)
{
  Face face;
  const auto verts = k.vertices();
  const double len = norm(theta);
  if (len <= tol) {
    face.kind = FaceKind::whole;
    face.endpoints.assign(verts.begin(), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {face.vertex_indices.push_back(i);}
    return face;
  }
  const Vec2 dir = theta / len;
  double best = std::numeric_limits<double>::infinity();
  for (const auto & v : verts) {best = std::min(best, dot(v, dir));}
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (dot(verts[i], dir) <= best + tol) {tied.push_back(i);}
  }
  if (tied.size() == 1) {
    face.kind = FaceKind::point;
    face.endpoints = {verts[tied.front()]};
    face.vertex_indices = tied;
    return face;
  }
  const Vec2 along = perp(dir);
  auto [lo, hi] = std::minmax_element(
    tied.begin(), tied.end(), [&](std::size_t a, std::size_t b) {
      return dot(verts[a], along) < dot(verts[b], along);
    });
  face.kind = FaceKind::segment;
  face.endpoints = {verts[*lo], verts[*hi]};
  face.vertex_indices = {*lo, *hi};
  return face;
}

/// Nearest point of the closed segment [a, b] to p.
inline Vec2 project_to_segment(const Vec2 & a, const Vec2 & b, const Vec2 & p)
{
  const Vec2 d = b - a;
  const double dd = norm2(d);
  if (dd == 0.0) {return a;}
  const double s = std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
  return a + s * d;
}

/// Exact (tolerance-free) membership test for polygons.
inline bool polygon_contains(const ConvexPolytope2 & k, const Vec2 & p)
{
  if (!k.is_polygon()) {return false;}
  const auto v = k.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[(i + 1) % v.size()] - v[i], p - v[i]) < 0.0) {return false;}
  }
  return true;
}

inline Vec2 project(const ConvexPolytope2 & k, const Vec2 & p)
{
  if (k.is_point()) {return k.vertex(0);}
  if (polygon_contains(k, p)) {return p;}
  Vec2 best = k.vertex(0);
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k.edge_count(); ++i) {
    const auto [a, b] = k.edge(i);
    const Vec2 q = project_to_segment(a, b, p);
    const double d = norm2(q - p);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

inline double distance_to(const ConvexPolytope2 & k, const Vec2 & p)
{
  return distance(project(k, p), p);
}

inline bool contains(const ConvexPolytope2 & k, const Vec2 & p, double tol)
{
  return distance_to(k, p) <= tol;
}

inline double diameter(const ConvexPolytope2 & k)
{
  double d = 0.0;
  const auto v = k.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {d = std::max(d, distance(v[i], v[j]));}
  }
  return d;
}

inline ConvexPolytope2 translate(const ConvexPolytope2 & k, const Vec2 & shift)
{
  std::vector<Vec2> v(k.vertices().begin(), k.vertices().end());
  for (auto & q : v) {q += shift;}
  return ConvexPolytope2::from_ccw(std::move(v));
}

/// Image of K under a linear map (re-hulled, since the map may shrink edges).
inline ConvexPolytope2 linear_image(const ConvexPolytope2 & k, const Mat2 & m)
{
  std::vector<Vec2> v;
  for (const auto & q : k.vertices()) {v.push_back(m * q);}
  return hull(v);
}

}  // namespace sschar

#endif  // SSCHAR__GEOMETRY2D_HPP_
