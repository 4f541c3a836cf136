/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUMVOL_POLYGON_HPP
#define SUMVOL_POLYGON_HPP

#include <algorithm>
#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

struct Point2 {
  Rational x, y;
  friend bool operator==(const Point2&, const Point2&) = default;
  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
};

inline Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }

/// Convex polygon with exact rational vertices, stored counterclockwise with
/// no three consecutive collinear vertices, starting at the lexicographically
/// smallest (x, y) vertex. May degenerate to a segment (2 vertices) or a
/// point (1 vertex). All predicates are exact; no trigonometry anywhere.
class ConvexPolygon {
 public:
  /// Convex hull (monotone chain) of an arbitrary nonempty point list.
  static ConvexPolygon from_points(std::vector<Point2> pts) {
    if (pts.empty()) throw input_error("polygon needs at least one point");
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    ConvexPolygon out;
    if (pts.size() <= 2) {
      out.verts_ = std::move(pts);
      return out;
    }
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {  // lower chain
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
      hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
      while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
      hull[k++] = *it;
    }
    hull.resize(k - 1);  // last point repeats the first
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    out.verts_ = std::move(hull);
    return out;
  }

  static ConvexPolygon point(Point2 p) { return from_points({std::move(p)}); }

  bool is_point() const { return verts_.size() == 1; }
  bool is_segment() const { return verts_.size() == 2; }
  std::size_t vertex_count() const { return verts_.size(); }
  const std::vector<Point2>& vertices() const { return verts_; }

  /// Exact area by the shoelace formula; 0 for segments and points.
  Rational area() const {
    if (verts_.size() < 3) return Rational(0);
    Rational twice(0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Point2& a = verts_[i];
      const Point2& b = verts_[(i + 1) % verts_.size()];
      twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2;
  }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  ConvexPolygon() = default;
  std::vector<Point2> verts_;
};

inline ConvexPolygon translate(const ConvexPolygon& p, const Point2& shift) {
  std::vector<Point2> pts = p.vertices();
  for (auto& v : pts) v = v + shift;
  return ConvexPolygon::from_points(std::move(pts));
}

namespace detail {

// Angular order over [0, 2pi): lower-half vectors come after upper-half ones;
// within a half the exact cross product decides.
inline bool angle_less(const Point2& u, const Point2& v) {
  const int hu = (u.y > 0 || (u.y == 0 && u.x > 0)) ? 0 : 1;
  const int hv = (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

// Edge cycle starting at the bottom-most (then left-most) vertex; along it
// the edge directions are sorted by angle. A segment contributes two opposite
// edges, a point none.
inline std::pair<Point2, std::vector<Point2>> edge_cycle(const ConvexPolygon& p) {
  const auto& vs = p.vertices();
  std::size_t start = 0;
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (vs[i].y < vs[start].y || (vs[i].y == vs[start].y && vs[i].x < vs[start].x)) start = i;
  std::vector<Point2> edges;
  if (vs.size() >= 2) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::size_t a = (start + i) % vs.size();
      const std::size_t b = (start + i + 1) % vs.size();
      edges.push_back(vs[b] - vs[a]);
    }
    if (vs.size() == 2) edges.resize(2);  // forward and back
  }
  return {vs[start], std::move(edges)};
}

}  // namespace detail

/// Exact Minkowski sum by merging the two edge cycles in angular order
/// (linear-time rotating merge). Degenerate operands (points, segments) fit
/// the same walk: they just contribute fewer edges.
inline ConvexPolygon polygon_minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q) {
  auto [pstart, pedges] = detail::edge_cycle(p);
  auto [qstart, qedges] = detail::edge_cycle(q);
  Point2 cur = pstart + qstart;
  std::vector<Point2> boundary{cur};
  std::size_t i = 0, j = 0;
  while (i < pedges.size() || j < qedges.size()) {
    Point2 step;
    if (j == qedges.size() ||
        (i < pedges.size() && !detail::angle_less(qedges[j], pedges[i]))) {
      step = pedges[i++];
    } else {
      step = qedges[j++];
    }
    cur = cur + step;
    boundary.push_back(cur);
  }
  return ConvexPolygon::from_points(std::move(boundary));
}

}  // namespace sumvol

#endif  // SUMVOL_POLYGON_HPP
