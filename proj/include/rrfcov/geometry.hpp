#pragma once

// Planar geometry kernel: vectors, convex polygons, sectors, and exact
// area routines for circle/sector vs convex polygon intersections.
//
// Conventions used throughout the library:
//   - polygons are simple, convex, counter-clockwise, no repeated or
//     collinear vertices;
//   - angles are radians in (-pi, pi], measured from +x counter-clockwise;
//   - all regions are closed (boundary points count as inside).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rrfcov/rng.hpp"

namespace rrfcov {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Maps any angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  else if (a > kPi) a -= kTwoPi;
  return a;
}

struct Aabb {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
};

namespace detail {

// Absolute tolerance for vertex dedup / collinearity cleanup, in the same
// length units as the scene (regions are O(1e3) across).
inline constexpr double kGeomTol = 1e-9;

inline double ring_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

// Removes consecutive duplicates and collinear vertices (wrapping).
inline std::vector<Vec2> clean_ring(std::vector<Vec2> v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Vec2> out;
    out.reserve(v.size());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 prev = out.empty() ? v[(i + n - 1) % n] : out.back();
      Vec2 cur = v[i];
      Vec2 next = v[(i + 1) % n];
      if (distance(prev, cur) <= kGeomTol) {
        changed = true;
        continue;
      }
      double base = distance(prev, next);
      double dev = base <= kGeomTol ? 0.0 : std::fabs(cross(next - prev, cur - prev)) / base;
      if (dev <= kGeomTol) {
        changed = true;  // collinear with its neighbours, or a spike
        continue;
      }
      out.push_back(cur);
    }
    v = std::move(out);
  }
  return v;
}

inline bool ring_is_convex_ccw(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    if (cross(b - a, c - b) <= 0.0) return false;
  }
  return true;
}

}  // namespace detail

// Convex CCW polygon with cached area and bounding box. Use the constructor
// when the input must already be a valid polygon; use make() to normalize
// raw clipper output, which may carry duplicate or collinear vertices.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices) {
    auto cleaned = detail::clean_ring(std::move(vertices));
    if (cleaned.size() < 3 || !detail::ring_is_convex_ccw(cleaned))
      throw std::invalid_argument("ConvexPolygon: vertices are not a convex CCW ring");
    init(std::move(cleaned));
  }

  // Lenient factory: returns nullopt when the cleaned ring is degenerate.
  static std::optional<ConvexPolygon> make(std::vector<Vec2> vertices) {
    auto cleaned = detail::clean_ring(std::move(vertices));
    if (cleaned.size() < 3 || detail::ring_area(cleaned) <= 0.0) return std::nullopt;
    if (!detail::ring_is_convex_ccw(cleaned)) return std::nullopt;
    ConvexPolygon p;
    p.init(std::move(cleaned));
    return p;
  }

  const std::vector<Vec2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  double area() const { return area_; }
  const Aabb& bounding_box() const { return bbox_; }

  Vec2 centroid() const {
    double a6 = 0.0;
    Vec2 c{0.0, 0.0};
    for (std::size_t i = 0, n = verts_.size(); i < n; ++i) {
      Vec2 p = verts_[i], q = verts_[(i + 1) % n];
      double w = cross(p, q);
      a6 += w;
      c = c + (p + q) * w;
    }
    return c * (1.0 / (3.0 * a6));
  }

  // Signed distance from p to the boundary: positive inside, negative outside.
  double signed_interior_distance(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = verts_.size(); i < n; ++i) {
      Vec2 a = verts_[i], b = verts_[(i + 1) % n];
      best = std::min(best, cross(b - a, p - a) / distance(a, b));
    }
    return best;
  }

  bool contains(Vec2 p, double tol = 0.0) const {
    return signed_interior_distance(p) >= -tol;
  }

 private:
  ConvexPolygon() = default;
  void init(std::vector<Vec2> v) {
    verts_ = std::move(v);
    area_ = detail::ring_area(verts_);
    bbox_ = {verts_[0].x, verts_[0].y, verts_[0].x, verts_[0].y};
    for (const Vec2& p : verts_) {
      bbox_.xmin = std::min(bbox_.xmin, p.x);
      bbox_.ymin = std::min(bbox_.ymin, p.y);
      bbox_.xmax = std::max(bbox_.xmax, p.x);
      bbox_.ymax = std::max(bbox_.ymax, p.y);
    }
  }

  std::vector<Vec2> verts_;
  double area_ = 0.0;
  Aabb bbox_{};
};

inline double polygon_area(const ConvexPolygon& p) { return p.area(); }

inline double heron_area(double e1, double e2, double e3) {
  if (e1 < 0.0 || e2 < 0.0 || e3 < 0.0)
    throw std::invalid_argument("heron_area: negative edge length");
  double s = 0.5 * (e1 + e2 + e3);
  double q = s * (s - e1) * (s - e2) * (s - e3);
  return q <= 0.0 ? 0.0 : std::sqrt(q);  // degenerate triangles collapse to 0
}

// Closed half-plane {x : dot(normal, x) <= offset}. Returns nullopt when the
// intersection with the polygon is empty or degenerate.
inline std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly,
                                                   Vec2 normal, double offset) {
  if (norm2(normal) <= 0.0) throw std::invalid_argument("clip_halfplane: zero normal");
  const auto& v = poly.vertices();
  std::vector<Vec2> out;
  out.reserve(v.size() + 2);
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = v[i], b = v[(i + 1) % n];
    double da = dot(normal, a) - offset;
    double db = dot(normal, b) - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return ConvexPolygon::make(std::move(out));
}

// Circular sector: apex, aim direction, full opening angle in (0, 2pi]
// (2pi means the whole disk), radius > 0.
struct Sector {
  Vec2 apex;
  double orientation;  // radians, normalized to (-pi, pi]
  double view_angle;   // full opening angle
  double radius;

  Sector(Vec2 apex_, double orientation_, double view_angle_, double radius_)
      : apex(apex_),
        orientation(normalize_angle(orientation_)),
        view_angle(view_angle_),
        radius(radius_) {
    if (!(radius > 0.0)) throw std::invalid_argument("Sector: radius must be positive");
    if (view_angle > kTwoPi && view_angle <= kTwoPi + 1e-12) view_angle = kTwoPi;
    if (!(view_angle > 0.0) || view_angle > kTwoPi)
      throw std::invalid_argument("Sector: view angle must lie in (0, 2pi]");
  }

  bool full_disk() const { return view_angle >= kTwoPi - 1e-12; }

  // Closed membership test via the included-angle route.
  bool contains(Vec2 p) const {
    Vec2 d = p - apex;
    double r2 = norm2(d);
    if (r2 > radius * radius) return false;
    if (r2 == 0.0) return true;
    if (full_disk()) return true;
    double delta = std::fabs(normalize_angle(std::atan2(d.y, d.x) - orientation));
    return delta <= 0.5 * view_angle;
  }
};

namespace detail {

// Signed area of triangle (0, a, b) intersected with the disk of radius r
// centred at the origin. The segment a->b is split at its circle crossings;
// sub-chords inside the disk contribute triangle area, outside ones the
// corresponding circular-sector area. Summed over a polygon's edges this
// yields the exact polygon/disk intersection area.
inline double disk_edge_term(Vec2 a, Vec2 b, double r) {
  Vec2 d = b - a;
  double qa = dot(d, d);
  if (qa == 0.0) return 0.0;
  double qb = 2.0 * dot(a, d);
  double qc = dot(a, a) - r * r;

  double ts[4] = {0.0, 1.0, 1.0, 1.0};
  int m = 1;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    double sq = std::sqrt(disc);
    double t1 = (-qb - sq) / (2.0 * qa);
    double t2 = (-qb + sq) / (2.0 * qa);
    if (t1 > 0.0 && t1 < 1.0) ts[m++] = t1;
    if (t2 > 0.0 && t2 < 1.0) ts[m++] = t2;
  }
  ts[m++] = 1.0;
  std::sort(ts, ts + m);

  double area = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    double u = ts[i], w = ts[i + 1];
    if (w - u <= 0.0) continue;
    Vec2 pu = a + d * u;
    Vec2 pw = a + d * w;
    Vec2 mid = a + d * (0.5 * (u + w));
    if (dot(mid, mid) <= r * r) {
      area += 0.5 * cross(pu, pw);
    } else {
      area += 0.5 * r * r * std::atan2(cross(pu, pw), dot(pu, pw));
    }
  }
  return area;
}

}  // namespace detail

// Exact area of the disk(center, radius) and poly intersection.
inline double circle_polygon_area(Vec2 center, double radius, const ConvexPolygon& poly) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle_polygon_area: radius must be positive");
  double total = 0.0;
  const auto& v = poly.vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i)
    total += detail::disk_edge_term(v[i] - center, v[(i + 1) % n] - center, radius);
  return std::max(0.0, total);
}

namespace detail {

// Clips poly to the wedge of directions [lo, hi] around apex, hi - lo <= pi.
// Half-plane "angle >= lo" has outward normal (sin lo, -cos lo); "angle <= hi"
// has outward normal (-sin hi, cos hi).
inline std::optional<ConvexPolygon> clip_wedge(const ConvexPolygon& poly, Vec2 apex,
                                               double lo, double hi) {
  Vec2 n1{std::sin(lo), -std::cos(lo)};
  auto p1 = clip_halfplane(poly, n1, dot(n1, apex));
  if (!p1) return std::nullopt;
  Vec2 n2{-std::sin(hi), std::cos(hi)};
  return clip_halfplane(*p1, n2, dot(n2, apex));
}

}  // namespace detail

// Exact area of the sector and poly intersection: clip the polygon to the
// wedge (two half-sectors when the opening exceeds pi), then intersect with
// the disk. Avoids any case analysis on where the polygon sits.
inline double sector_polygon_area(const Sector& s, const ConvexPolygon& poly) {
  if (s.full_disk()) return circle_polygon_area(s.apex, s.radius, poly);
  double half = 0.5 * s.view_angle;
  double total = 0.0;
  auto piece = [&](double lo, double hi) {
    if (auto clipped = detail::clip_wedge(poly, s.apex, lo, hi))
      total += circle_polygon_area(s.apex, s.radius, *clipped);
  };
  if (s.view_angle > kPi) {
    piece(s.orientation - half, s.orientation);
    piece(s.orientation, s.orientation + half);
  } else {
    piece(s.orientation - half, s.orientation + half);
  }
  return total;
}

struct McEstimate {
  double area = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t samples = 0;
};

// Monte-Carlo area of {p in box : inside(p)}. Independent of the analytic
// kernels above; used as the reference oracle in tests and self-checks.
template <class Pred>
McEstimate mc_area_oracle(Pred&& inside, const Aabb& box, std::size_t samples,
                          std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("mc_area_oracle: need at least one sample");
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    throw std::invalid_argument("mc_area_oracle: degenerate sampling box");
  std::mt19937_64 g(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Vec2 p{uniform(g, box.xmin, box.xmax), uniform(g, box.ymin, box.ymax)};
    if (inside(p)) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  double box_area = box.area();
  McEstimate e;
  e.area = box_area * p;
  e.std_error = box_area * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  e.hits = hits;
  e.samples = samples;
  return e;
}

}  // namespace rrfcov
