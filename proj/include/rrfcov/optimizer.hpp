#pragma once

// Collaborative orientation optimization: perimeter vertex filtering,
// per-sensor greedy orientation toward the best cell vertex, and iterative
// conflict resolution between sensors aiming at a shared vertex. Every
// reassignment is recorded in a trace for reproducibility checks.

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrfcov/sensing.hpp"

namespace rrfcov {

struct AlgoConfig {
  double epsilon = 0.0;  // boundary proximity threshold for vertex filtering
  PositionMode position_mode = PositionMode::Nominal;
  // Tie-breaking is fixed, not configurable: on equal areas the lower sensor
  // id reorients, and candidate vertices tie-break lexicographically.

  AlgoConfig(double epsilon_, PositionMode mode_) : epsilon(epsilon_), position_mode(mode_) {
    if (epsilon < 0.0) throw std::invalid_argument("AlgoConfig: epsilon must be nonnegative");
  }
};

enum class ReorientReason { ConflictAdvance, ExhaustedMinOverlap };

inline const char* to_string(ReorientReason r) {
  return r == ReorientReason::ConflictAdvance ? "conflict_advance" : "exhausted_min_overlap";
}

struct ReorientationEvent {
  int iteration;
  int sensor;
  Vec2 from;
  Vec2 to;
  ReorientReason reason;
};

struct AlgoTrace {
  int iterations = 0;  // full conflict scans, including the final quiet one
  std::vector<ReorientationEvent> events;
  std::vector<int> exhausted;  // ascending sensor ids

  // One line per event: iteration,sensor,from_x,from_y,to_x,to_y,reason.
  std::string to_log() const {
    std::string out;
    char buf[160];
    for (const auto& e : events) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.9g,%.9g,%.9g,%s\n", e.iteration, e.sensor,
                    e.from.x, e.from.y, e.to.x, e.to.y, to_string(e.reason));
      out += buf;
    }
    return out;
  }
};

// Cell vertices at least epsilon away from every region edge. An empty
// filter result falls back to the full vertex list so a sensor always has
// candidates.
inline std::vector<Vec2> perimeter_filter(const SensorState& sensor, const VoronoiDiagram& vd,
                                          double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("perimeter_filter: epsilon must be nonnegative");
  const auto& verts = vd.cell_vertices(static_cast<std::size_t>(sensor.id));
  std::vector<Vec2> kept;
  kept.reserve(verts.size());
  for (const Vec2& v : verts) {
    double edge_dist = std::min(std::min(v.x, vd.region.width - v.x),
                                std::min(v.y, vd.region.height - v.y));
    if (edge_dist >= epsilon) kept.push_back(v);
  }
  if (kept.empty()) return verts;
  return kept;
}

namespace detail {

// Sets the sensor's choice to candidates[k] and places its sector there.
inline void apply_candidate(SensorState& s, std::size_t k, PositionMode mode) {
  const VertexCandidate& c = s.candidates[k];
  s.cursor = k;
  s.has_vertex = true;
  s.chosen_vertex = c.vertex;
  s.evaluated = sector_apex(s.nominal, c.vertex, s.rho, mode);
  s.orientation = aim_orientation(s.evaluated, c.vertex, s.nominal);
}

}  // namespace detail

// Scores every candidate vertex, sorts descending by area (ties by vertex
// lexicographic order), and aims the sensor at the best one.
inline SensorState localized_orientation(SensorState sensor, const std::vector<Vec2>& candidates,
                                         const SensorConfig& cfg, const ConvexPolygon& cell,
                                         PositionMode mode) {
  sensor.candidates.clear();
  sensor.candidates.reserve(candidates.size());
  for (const Vec2& v : candidates) {
    if (distance(v, sensor.nominal) <= 1e-12) continue;  // no aim direction
    sensor.candidates.push_back({v, coverage_for_vertex(sensor, v, cfg, cell, mode)});
  }
  if (sensor.candidates.empty())
    throw std::invalid_argument("localized_orientation: no usable candidate vertices");
  std::sort(sensor.candidates.begin(), sensor.candidates.end(),
            [](const VertexCandidate& a, const VertexCandidate& b) {
              if (a.area != b.area) return a.area > b.area;
              if (a.vertex.x != b.vertex.x) return a.vertex.x < b.vertex.x;
              return a.vertex.y < b.vertex.y;
            });
  detail::apply_candidate(sensor, 0, mode);
  return sensor;
}

// Voronoi vertices shared between cells are recomputed from different
// half-plane pairs, so identity is tested with a tolerance.
inline constexpr double kVertexMatchTol = 1e-6;

// Two sensors conflict when they aim at the same vertex and are close enough
// that their uncertainty-inflated sectors can overlap.
inline bool detect_conflict(const SensorState& a, const SensorState& b, double r_s) {
  if (!a.has_vertex || !b.has_vertex)
    throw std::logic_error("detect_conflict: sensor has no chosen vertex");
  if (distance(a.chosen_vertex, b.chosen_vertex) > kVertexMatchTol) return false;
  return distance(a.nominal, b.nominal) < a.rho + b.rho + 2.0 * r_s;
}

enum class OverlapClass { None, SidelineSideline, ArcSideline, ArcArc };

inline const char* to_string(OverlapClass c) {
  switch (c) {
    case OverlapClass::SidelineSideline: return "sideline-sideline";
    case OverlapClass::ArcSideline: return "arc-sideline";
    case OverlapClass::ArcArc: return "arc-arc";
    default: return "none";
  }
}

namespace detail {

inline constexpr double kXTol = 1e-9;

struct ArcSpec {
  Vec2 c;
  double r;
  double mid;   // aim angle
  double half;  // half opening; kPi means the full circle
  bool on(Vec2 p) const {
    if (half >= kPi - 1e-12) return true;
    return std::fabs(normalize_angle(std::atan2(p.y - c.y, p.x - c.x) - mid)) <= half + 1e-9;
  }
};

inline bool seg_seg_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    double v = cross(q - p, r - p);
    return v > kXTol ? 1 : (v < -kXTol ? -1 : 0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  auto on_seg = [](Vec2 p, Vec2 q, Vec2 r) {  // r collinear with pq: is it between?
    return r.x >= std::min(p.x, q.x) - kXTol && r.x <= std::max(p.x, q.x) + kXTol &&
           r.y >= std::min(p.y, q.y) - kXTol && r.y <= std::max(p.y, q.y) + kXTol;
  };
  if (o1 == 0 && on_seg(a, b, c)) return true;
  if (o2 == 0 && on_seg(a, b, d)) return true;
  if (o3 == 0 && on_seg(c, d, a)) return true;
  if (o4 == 0 && on_seg(c, d, b)) return true;
  return false;
}

inline bool seg_arc_intersect(Vec2 a, Vec2 b, const ArcSpec& arc) {
  Vec2 d = b - a, f = a - arc.c;
  double qa = dot(d, d);
  if (qa <= 0.0) return false;
  double qb = 2.0 * dot(f, d);
  double qc = dot(f, f) - arc.r * arc.r;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return false;
  double sq = std::sqrt(disc);
  for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t < -1e-9 || t > 1.0 + 1e-9) continue;
    if (arc.on(a + d * t)) return true;
  }
  return false;
}

inline bool arc_arc_intersect(const ArcSpec& u, const ArcSpec& v) {
  double d = distance(u.c, v.c);
  if (d <= 1e-12) {
    // concentric: same radius means the circles coincide; the arcs meet iff
    // their angular intervals overlap
    if (std::fabs(u.r - v.r) > 1e-9) return false;
    if (u.half >= kPi - 1e-12 || v.half >= kPi - 1e-12) return true;
    double gap = std::fabs(normalize_angle(u.mid - v.mid));
    return gap <= u.half + v.half + 1e-9;
  }
  if (d > u.r + v.r + 1e-9 || d < std::fabs(u.r - v.r) - 1e-9) return false;
  double a = (d * d + u.r * u.r - v.r * v.r) / (2.0 * d);
  double h2 = u.r * u.r - a * a;
  double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
  Vec2 dir = (v.c - u.c) * (1.0 / d);
  Vec2 perp{-dir.y, dir.x};
  Vec2 base = u.c + dir * a;
  for (Vec2 p : {base + perp * h, base - perp * h})
    if (u.on(p) && v.on(p)) return true;
  return false;
}

struct SectorBoundary {
  std::vector<std::pair<Vec2, Vec2>> sidelines;
  ArcSpec arc;
};

inline SectorBoundary boundary_of(const Sector& s) {
  SectorBoundary b;
  double half = 0.5 * s.view_angle;
  b.arc = {s.apex, s.radius, s.orientation, s.full_disk() ? kPi : half};
  if (!s.full_disk()) {
    b.sidelines.push_back({s.apex, s.apex + s.radius * unit_from_angle(s.orientation - half)});
    b.sidelines.push_back({s.apex, s.apex + s.radius * unit_from_angle(s.orientation + half)});
  }
  return b;
}

}  // namespace detail

// Which boundary elements of the two sectors touch, checked in priority
// order; a diagnostic label, not used by the optimization itself.
inline OverlapClass classify_overlap(const Sector& si, const Sector& sj) {
  auto bi = detail::boundary_of(si);
  auto bj = detail::boundary_of(sj);
  for (const auto& [a, b] : bi.sidelines)
    for (const auto& [c, d] : bj.sidelines)
      if (detail::seg_seg_intersect(a, b, c, d)) return OverlapClass::SidelineSideline;
  for (const auto& [a, b] : bi.sidelines)
    if (detail::seg_arc_intersect(a, b, bj.arc)) return OverlapClass::ArcSideline;
  for (const auto& [c, d] : bj.sidelines)
    if (detail::seg_arc_intersect(c, d, bi.arc)) return OverlapClass::ArcSideline;
  if (detail::arc_arc_intersect(bi.arc, bj.arc)) return OverlapClass::ArcArc;
  return OverlapClass::None;
}

namespace detail {

// Convex fan approximation of a wedge piece of a sector, span <= pi.
inline std::optional<ConvexPolygon> wedge_fan(Vec2 apex, double lo, double hi, double r) {
  int segs = std::max(3, static_cast<int>(std::ceil((hi - lo) / (kTwoPi / 96.0))));
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(segs) + 2);
  pts.push_back(apex);
  for (int k = 0; k <= segs; ++k)
    pts.push_back(apex + r * unit_from_angle(lo + (hi - lo) * k / segs));
  return ConvexPolygon::make(std::move(pts));
}

}  // namespace detail

// Approximate overlap area of two sectors: one sector is polygonized into
// convex fan pieces (96 segments per full turn), the other is intersected
// exactly. Used only to rank orientations of exhausted sensors.
inline double sector_overlap_area(const Sector& si, const Sector& sj) {
  double total = 0.0;
  auto add_piece = [&](std::optional<ConvexPolygon> piece) {
    if (piece) total += sector_polygon_area(sj, *piece);
  };
  if (si.full_disk()) {
    std::vector<Vec2> pts;
    pts.reserve(96);
    for (int k = 0; k < 96; ++k)
      pts.push_back(si.apex + si.radius * unit_from_angle(kTwoPi * k / 96.0));
    add_piece(ConvexPolygon::make(std::move(pts)));
    return total;
  }
  double half = 0.5 * si.view_angle;
  if (si.view_angle > kPi) {
    add_piece(detail::wedge_fan(si.apex, si.orientation - half, si.orientation, si.radius));
    add_piece(detail::wedge_fan(si.apex, si.orientation, si.orientation + half, si.radius));
  } else {
    add_piece(detail::wedge_fan(si.apex, si.orientation - half, si.orientation + half, si.radius));
  }
  return total;
}

namespace detail {

inline Sector sector_of(const SensorState& s, const SensorConfig& cfg) {
  return Sector(s.evaluated, s.orientation, cfg.view_angle, cfg.range);
}

// Terminal assignment for a sensor that ran out of candidates: among all its
// candidates, pick the one minimizing summed sector overlap with the sensors
// it currently conflicts with.
inline void assign_min_overlap(std::vector<SensorState>& states, std::size_t i,
                               const SensorConfig& cfg, PositionMode mode) {
  SensorState& s = states[i];
  std::vector<std::size_t> partners;
  for (std::size_t j = 0; j < states.size(); ++j)
    if (j != i && detect_conflict(s, states[j], cfg.range)) partners.push_back(j);

  std::size_t best_k = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.candidates.size(); ++k) {
    Vec2 apex = sector_apex(s.nominal, s.candidates[k].vertex, s.rho, mode);
    Sector trial(apex, aim_orientation(apex, s.candidates[k].vertex, s.nominal),
                 cfg.view_angle, cfg.range);
    double sum = 0.0;
    for (std::size_t j : partners) sum += sector_overlap_area(trial, sector_of(states[j], cfg));
    if (sum < best_sum) {
      best_sum = sum;
      best_k = k;
    }
  }
  apply_candidate(s, best_k, mode);
  s.exhausted = true;
}

}  // namespace detail

// Conflict-resolution loop: scan all pairs in ascending id order; in each
// conflict the sensor with the smaller current coverage (tie: lower id)
// advances to its next candidate, or receives the minimal-overlap terminal
// assignment once its list is exhausted. Repeats until a full scan changes
// nothing. Terminates because every event advances some sensor's cursor or
// exhausts it.
inline std::pair<std::vector<SensorState>, AlgoTrace> collaborative_adjustment(
    std::vector<SensorState> states, const VoronoiDiagram& vd, const SensorConfig& cfg,
    const AlgoConfig& acfg) {
  (void)vd;
  AlgoTrace trace;
  bool changed = true;
  while (changed) {
    changed = false;
    ++trace.iterations;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        if (!detect_conflict(states[i], states[j], cfg.range)) continue;
        double ai = states[i].candidates[states[i].cursor].area;
        double aj = states[j].candidates[states[j].cursor].area;
        std::size_t loser = ai < aj ? i : (aj < ai ? j : std::min(i, j));
        SensorState& s = states[loser];
        if (s.exhausted) continue;
        Vec2 from = s.chosen_vertex;
        if (s.cursor + 1 < s.candidates.size()) {
          detail::apply_candidate(s, s.cursor + 1, acfg.position_mode);
          trace.events.push_back({trace.iterations, s.id, from, s.chosen_vertex,
                                  ReorientReason::ConflictAdvance});
        } else {
          detail::assign_min_overlap(states, loser, cfg, acfg.position_mode);
          trace.events.push_back({trace.iterations, s.id, from, s.chosen_vertex,
                                  ReorientReason::ExhaustedMinOverlap});
        }
        changed = true;
      }
    }
  }
  for (const auto& s : states)
    if (s.exhausted) trace.exhausted.push_back(s.id);
  return {std::move(states), std::move(trace)};
}

struct AlgoResult {
  std::vector<SensorState> states;
  AlgoTrace trace;
  VoronoiDiagram diagram;
};

// Full pipeline: Voronoi partition, per-sensor RRF, perimeter filtering,
// greedy orientation, collaborative adjustment.
inline AlgoResult run_algorithm(const Deployment& dep, const SensorConfig& scfg,
                                const AlgoConfig& acfg, double rho_min, double rho_max,
                                double rrf_tol = 1e-3) {
  VoronoiDiagram vd = build_voronoi(dep);
  std::vector<SensorState> states;
  states.reserve(dep.size());
  for (std::size_t i = 0; i < dep.size(); ++i) {
    SensorState s;
    s.id = static_cast<int>(i);
    s.nominal = dep.positions[i];
    auto rrf = compute_rrf(s.id, vd, dep, rho_min, rho_max, rrf_tol);
    s.rho = rrf.rho;
    s.rho_raw = rrf.rho_raw;
    auto cands = perimeter_filter(s, vd, acfg.epsilon);
    states.push_back(localized_orientation(std::move(s), cands, scfg, vd.cells[i],
                                           acfg.position_mode));
  }
  auto [final_states, trace] = collaborative_adjustment(std::move(states), vd, scfg, acfg);
  return {std::move(final_states), std::move(trace), std::move(vd)};
}

}  // namespace rrfcov
