#pragma once

// Randomized self-check of the sector/polygon area kernel against the
// Monte-Carlo oracle. The oracle samples the closed membership predicates
// directly, an entirely different code path from the clipping kernel, so
// agreement is meaningful evidence.

#include <cstdint>
#include <string>
#include <vector>

#include "rrfcov/geometry.hpp"

namespace rrfcov {

namespace detail {

// Andrew's monotone chain; returns a CCW hull (may contain collinear runs,
// which ConvexPolygon::make removes).
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

struct OracleRow {
  int index = 0;
  double exact = 0.0;
  double mc = 0.0;
  double std_error = 0.0;
  double abs_err = 0.0;
  double limit = 0.0;
  bool ok = false;
};

// Random (sector, convex cell) instances spanning full/partial view angles
// and inside/outside apex placements. Each row compares the analytic area
// with the Monte-Carlo estimate; the pass limit is
// max(3 * std_error, 0.5% of the cell area).
inline std::vector<OracleRow> geometry_selfcheck(int instances, std::size_t samples,
                                                 std::uint64_t seed) {
  std::vector<OracleRow> rows;
  rows.reserve(static_cast<std::size_t>(instances));
  for (int k = 0; k < instances; ++k) {
    std::mt19937_64 g(substream_seed(seed, static_cast<std::uint64_t>(k), 0x73656c66ULL));

    std::optional<ConvexPolygon> cell;
    while (!cell) {
      std::vector<Vec2> pts;
      int count = 3 + static_cast<int>(g() % 10);
      for (int i = 0; i < count; ++i)
        pts.push_back({uniform(g, 0.0, 100.0), uniform(g, 0.0, 100.0)});
      cell = ConvexPolygon::make(detail::convex_hull(std::move(pts)));
    }

    const Aabb& bb = cell->bounding_box();
    Vec2 apex{uniform(g, bb.xmin - 30.0, bb.xmax + 30.0),
              uniform(g, bb.ymin - 30.0, bb.ymax + 30.0)};
    double orientation = kPi * (1.0 - 2.0 * canonical(g));
    double view = k % 7 == 0 ? kTwoPi : uniform(g, 0.15, kTwoPi);
    double radius = uniform(g, 10.0, 160.0);
    Sector sector(apex, orientation, view, radius);

    OracleRow row;
    row.index = k;
    row.exact = sector_polygon_area(sector, *cell);
    auto est = mc_area_oracle(
        [&](Vec2 p) { return cell->contains(p) && sector.contains(p); }, bb, samples,
        substream_seed(seed, static_cast<std::uint64_t>(k), 0x6d63ULL));
    row.mc = est.area;
    row.std_error = est.std_error;
    row.abs_err = std::fabs(row.exact - row.mc);
    row.limit = std::max(3.0 * est.std_error, 0.005 * cell->area());
    row.ok = row.abs_err <= row.limit;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rrfcov
