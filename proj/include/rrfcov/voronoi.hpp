#pragma once

// Bounded Voronoi partition of a rectangular region, built per site by
// half-plane intersection against every other site. Edge provenance is
// tracked through the clipping so each cell knows which sites contribute
// an actual boundary edge (its Voronoi neighbours).

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrfcov/geometry.hpp"

namespace rrfcov {

// Axis-aligned rectangle [0,width] x [0,height].
struct Region {
  double width = 0.0;
  double height = 0.0;

  Region(double w, double h) : width(w), height(h) {
    if (!(w > 0.0) || !(h > 0.0))
      throw std::invalid_argument("Region: dimensions must be positive");
  }

  double area() const { return width * height; }

  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= -tol && p.y >= -tol && p.x <= width + tol && p.y <= height + tol;
  }

  ConvexPolygon polygon() const {
    return ConvexPolygon({{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}});
  }
};

inline constexpr double kMinSensorSeparation = 1e-6;

// Sensor positions inside the closed region, pairwise separated.
struct Deployment {
  Region region;
  std::vector<Vec2> positions;

  Deployment(Region r, std::vector<Vec2> pos) : region(r), positions(std::move(pos)) {
    if (positions.empty()) throw std::invalid_argument("Deployment: no sensors");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (!region.contains(positions[i]))
        throw std::invalid_argument("Deployment: sensor " + std::to_string(i) +
                                    " lies outside the region");
      for (std::size_t j = 0; j < i; ++j)
        if (distance(positions[i], positions[j]) <= kMinSensorSeparation)
          throw std::invalid_argument("Deployment: sensors " + std::to_string(j) + " and " +
                                      std::to_string(i) + " are closer than the minimum separation");
    }
  }

  std::size_t size() const { return positions.size(); }
};

struct VoronoiDiagram {
  Region region;
  std::vector<ConvexPolygon> cells;          // one per sensor, same order
  std::vector<std::vector<int>> neighbors;   // ascending sensor indices

  std::size_t size() const { return cells.size(); }
  const std::vector<Vec2>& cell_vertices(std::size_t i) const { return cells[i].vertices(); }
};

namespace detail {

// Bisector edges shorter than this are clipping noise, not real adjacency.
inline constexpr double kNeighborEdgeTol = 1e-9;

struct TaggedVertex {
  Vec2 p;
  int out_tag;  // source of the edge leaving p: j >= 0 bisector, < 0 region side
};

// Sutherland-Hodgman step that preserves edge provenance. Keeps the closed
// side dot(n, x) <= c; new edges created on the clip line get `tag`.
inline std::vector<TaggedVertex> clip_tagged(const std::vector<TaggedVertex>& ring,
                                             Vec2 n, double c, int tag) {
  std::vector<TaggedVertex> out;
  out.reserve(ring.size() + 2);
  const std::size_t m = ring.size();
  for (std::size_t k = 0; k < m; ++k) {
    const TaggedVertex& a = ring[k];
    const TaggedVertex& b = ring[(k + 1) % m];
    double da = dot(n, a.p) - c;
    double db = dot(n, b.p) - c;
    if (da <= 0.0) {
      out.push_back(a);
      if (db > 0.0) {
        double t = da / (da - db);
        out.push_back({a.p + (b.p - a.p) * t, tag});
      }
    } else if (db <= 0.0) {
      double t = da / (da - db);
      out.push_back({a.p + (b.p - a.p) * t, a.out_tag});
    }
  }
  return out;
}

// Drops zero-length edges and merges collinear runs, keeping tags coherent.
// On a duplicate pair the earlier vertex goes away so the later outgoing tag
// survives; on a collinear merge the longer edge's tag wins.
inline std::vector<TaggedVertex> clean_tagged(std::vector<TaggedVertex> ring) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    std::size_t n = ring.size();
    std::vector<TaggedVertex> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (distance(ring[k].p, ring[(k + 1) % n].p) <= kGeomTol) changed = true;
      else out.push_back(ring[k]);
    }
    ring = std::move(out);
    n = ring.size();
    if (n < 3) break;
    out.clear();
    for (std::size_t k = 0; k < n; ++k) {
      const TaggedVertex& prev = out.empty() ? ring[(k + n - 1) % n] : out.back();
      TaggedVertex cur = ring[k];
      const TaggedVertex& next = ring[(k + 1) % n];
      double base = distance(prev.p, next.p);
      double dev = base <= kGeomTol ? 0.0
                                    : std::fabs(cross(next.p - prev.p, cur.p - prev.p)) / base;
      if (dev <= kGeomTol && !out.empty()) {
        changed = true;
        if (distance(prev.p, cur.p) >= distance(cur.p, next.p))
          out.back().out_tag = prev.out_tag;  // keep the longer edge's tag
        continue;
      }
      out.push_back(cur);
    }
    ring = std::move(out);
  }
  return ring;
}

}  // namespace detail

// O(m^2) half-plane construction: cell i is the region rectangle clipped by
// the perpendicular bisector a.x <= b against every other site, where
// a = 2(s_j - s_i) and b = |s_j|^2 - |s_i|^2. Neighbour sets are symmetrized
// by union so adjacency never depends on which side kept the longer edge.
inline VoronoiDiagram build_voronoi(const Deployment& dep) {
  const std::size_t m = dep.size();
  VoronoiDiagram vd{dep.region, {}, {}};
  vd.cells.reserve(m);
  vd.neighbors.assign(m, {});

  const double w = dep.region.width, h = dep.region.height;
  const std::vector<detail::TaggedVertex> base = {
      {{0.0, 0.0}, -1}, {{w, 0.0}, -2}, {{w, h}, -3}, {{0.0, h}, -4}};

  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 si = dep.positions[i];
    std::vector<detail::TaggedVertex> ring = base;
    for (std::size_t j = 0; j < m && ring.size() >= 3; ++j) {
      if (j == i) continue;
      const Vec2 sj = dep.positions[j];
      Vec2 a = 2.0 * (sj - si);
      double b = norm2(sj) - norm2(si);
      ring = detail::clip_tagged(ring, a, b, static_cast<int>(j));
    }
    ring = detail::clean_tagged(std::move(ring));

    std::vector<Vec2> pts;
    pts.reserve(ring.size());
    std::vector<double> edge_len(m, 0.0);
    for (std::size_t k = 0; k < ring.size(); ++k) {
      pts.push_back(ring[k].p);
      int tag = ring[k].out_tag;
      if (tag >= 0)
        edge_len[static_cast<std::size_t>(tag)] +=
            distance(ring[k].p, ring[(k + 1) % ring.size()].p);
    }
    auto cell = ConvexPolygon::make(std::move(pts));
    if (!cell)
      throw std::runtime_error("build_voronoi: degenerate cell for sensor " + std::to_string(i));
    vd.cells.push_back(std::move(*cell));

    for (std::size_t j = 0; j < m; ++j)
      if (edge_len[j] > detail::kNeighborEdgeTol)
        vd.neighbors[i].push_back(static_cast<int>(j));
  }

  // symmetrize: adjacency detected from either side counts for both
  for (std::size_t i = 0; i < m; ++i)
    for (int j : vd.neighbors[i]) {
      auto& back = vd.neighbors[static_cast<std::size_t>(j)];
      if (std::find(back.begin(), back.end(), static_cast<int>(i)) == back.end())
        back.push_back(static_cast<int>(i));
    }
  for (auto& nb : vd.neighbors) std::sort(nb.begin(), nb.end());

  return vd;
}

}  // namespace rrfcov
