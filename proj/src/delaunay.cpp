#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

#include "spatialgen/netgen.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::netgen {

using core::Point;

namespace {

struct Tri {
  int a, b, c;
};

long double orient(const Point& a, const Point& b, const Point& c) {
  const long double abx = static_cast<long double>(b.x) - a.x;
  const long double aby = static_cast<long double>(b.y) - a.y;
  const long double acx = static_cast<long double>(c.x) - a.x;
  const long double acy = static_cast<long double>(c.y) - a.y;
  return abx * acy - aby * acx;
}

// Sign of the in-circumcircle determinant for CCW triangle (a,b,c):
// > 0 when d lies strictly inside, 0 when exactly cocircular.
long double in_circle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const long double adx = static_cast<long double>(a.x) - d.x;
  const long double ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x;
  const long double bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x;
  const long double cdy = static_cast<long double>(c.y) - d.y;
  const long double aa = adx * adx + ady * ady;
  const long double bb = bdx * bdx + bdy * bdy;
  const long double cc = cdx * cdx + cdy * cdy;
  return adx * (bdy * cc - bb * cdy) - ady * (bdx * cc - bb * cdx) +
         aa * (bdx * cdy - bdy * cdx);
}

Tri make_ccw(int a, int b, int c, const std::vector<Point>& pts) {
  if (orient(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)],
             pts[static_cast<std::size_t>(c)]) < 0.0L) {
    std::swap(b, c);
  }
  return {a, b, c};
}

}  // namespace

DelaunayResult delaunay(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("degenerate point set");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (points[static_cast<std::size_t>(i)].x == points[static_cast<std::size_t>(j)].x &&
          points[static_cast<std::size_t>(i)].y == points[static_cast<std::size_t>(j)].y) {
        throw std::invalid_argument("duplicate point");
      }
    }
  }
  bool collinear = true;
  for (int k = 2; k < n && collinear; ++k) {
    if (orient(points[0], points[1], points[static_cast<std::size_t>(k)]) != 0.0L) {
      collinear = false;
    }
  }
  if (collinear) throw std::invalid_argument("degenerate point set");

  std::vector<Point> pts(points.begin(), points.end());
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1.0});
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  pts.push_back({cx - 32.0 * span, cy - 20.0 * span});
  pts.push_back({cx + 32.0 * span, cy - 20.0 * span});
  pts.push_back({cx, cy + 32.0 * span});

  std::vector<Tri> tris;
  tris.push_back(make_ccw(n, n + 1, n + 2, pts));

  for (int i = 0; i < n; ++i) {
    const Point original = pts[static_cast<std::size_t>(i)];
    for (int attempt = 0;; ++attempt) {
      if (attempt > 16) throw std::runtime_error("triangulation failed to resolve degeneracy");
      if (attempt > 0) {
        // Deterministic nudge of at most ~1e-12 of the span to break exact
        // cocircularity; output indices still refer to the original points.
        const std::uint64_t h =
            core::mix_bits(static_cast<std::uint64_t>(i) * 0x517cc1b727220a95ULL +
                           static_cast<std::uint64_t>(attempt));
        const double angle = 6.283185307179586 * (static_cast<double>(h >> 11) * 0x1.0p-53);
        const double eps = 1e-12 * span * attempt;
        pts[static_cast<std::size_t>(i)] = {original.x + eps * std::cos(angle),
                                            original.y + eps * std::sin(angle)};
      }

      const Point& p = pts[static_cast<std::size_t>(i)];
      bool cocircular = false;
      std::vector<char> bad(tris.size(), 0);
      for (std::size_t t = 0; t < tris.size(); ++t) {
        const long double det =
            in_circle(pts[static_cast<std::size_t>(tris[t].a)],
                      pts[static_cast<std::size_t>(tris[t].b)],
                      pts[static_cast<std::size_t>(tris[t].c)], p);
        if (det == 0.0L) {
          cocircular = true;
          break;
        }
        bad[t] = det > 0.0L ? 1 : 0;
      }
      if (cocircular) continue;

      // Boundary of the bad region: edges used by exactly one bad triangle.
      std::set<std::pair<int, int>> boundary;
      const auto toggle = [&boundary](int a, int b) {
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        const auto it = boundary.find(key);
        if (it == boundary.end()) {
          boundary.insert(key);
        } else {
          boundary.erase(it);
        }
      };
      std::vector<Tri> kept;
      kept.reserve(tris.size());
      for (std::size_t t = 0; t < tris.size(); ++t) {
        if (bad[t]) {
          toggle(tris[t].a, tris[t].b);
          toggle(tris[t].b, tris[t].c);
          toggle(tris[t].c, tris[t].a);
        } else {
          kept.push_back(tris[t]);
        }
      }
      tris = std::move(kept);
      for (const auto& [a, b] : boundary) {
        tris.push_back(make_ccw(i, a, b, pts));
      }
      break;
    }
  }

  DelaunayResult result;
  std::set<std::pair<int, int>> edge_set;
  for (const Tri& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    result.triangles.push_back({t.a, t.b, t.c});
    const auto add = [&edge_set](int a, int b) {
      edge_set.insert({std::min(a, b), std::max(a, b)});
    };
    add(t.a, t.b);
    add(t.b, t.c);
    add(t.c, t.a);
  }
  result.edges.assign(edge_set.begin(), edge_set.end());
  return result;
}

DelaunayResult delaunay(const core::PointSet& points) {
  return delaunay(std::span<const Point>(points.points));
}

std::vector<std::pair<int, int>> euclidean_mst(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  std::vector<std::pair<int, int>> edges;
  if (n <= 1) return edges;

  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<int> best_from(static_cast<std::size_t>(n), -1);
  in_tree[0] = 1;
  for (int j = 1; j < n; ++j) {
    best[static_cast<std::size_t>(j)] =
        core::distance(points[0], points[static_cast<std::size_t>(j)]);
    best_from[static_cast<std::size_t>(j)] = 0;
  }
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (in_tree[static_cast<std::size_t>(j)]) continue;
      if (pick < 0 || best[static_cast<std::size_t>(j)] < best[static_cast<std::size_t>(pick)]) {
        pick = j;
      }
    }
    in_tree[static_cast<std::size_t>(pick)] = 1;
    const int other = best_from[static_cast<std::size_t>(pick)];
    edges.emplace_back(std::min(pick, other), std::max(pick, other));
    for (int j = 0; j < n; ++j) {
      if (in_tree[static_cast<std::size_t>(j)]) continue;
      const double d =
          core::distance(points[static_cast<std::size_t>(pick)], points[static_cast<std::size_t>(j)]);
      if (d < best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = d;
        best_from[static_cast<std::size_t>(j)] = pick;
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace spatialgen::netgen
