#pragma once

// Directional sensing model: the point-coverage predicate and the coverage
// area a sensor attains inside its own Voronoi cell when aimed at a
// candidate vertex.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rrfcov/rrf.hpp"

namespace rrfcov {

struct SensorConfig {
  double range;       // r_s
  double view_angle;  // full opening angle, (0, 2pi]

  SensorConfig(double range_, double view_angle_) : range(range_), view_angle(view_angle_) {
    if (!(range > 0.0)) throw std::invalid_argument("SensorConfig: range must be positive");
    if (view_angle > kTwoPi && view_angle <= kTwoPi + 1e-12) view_angle = kTwoPi;
    if (!(view_angle > 0.0) || view_angle > kTwoPi)
      throw std::invalid_argument("SensorConfig: view angle must lie in (0, 2pi]");
  }
};

struct VertexCandidate {
  Vec2 vertex;
  double area;
};

struct SensorState {
  int id = 0;
  Vec2 nominal{};
  double rho = 0.0;      // clamped RRF used for displacement
  double rho_raw = 0.0;  // unclamped RRF, kept for reporting
  bool has_vertex = false;
  Vec2 chosen_vertex{};
  double orientation = 0.0;  // (-pi, pi]
  Vec2 evaluated{};          // apex position the sector is placed at
  std::vector<VertexCandidate> candidates;  // sorted descending by area
  std::size_t cursor = 0;                   // index of the current candidate
  bool exhausted = false;
};

// Closed-sector membership via the dot-product form: p is covered when it is
// within range and its included angle from the aim direction is <= theta_s/2.
inline bool covers(Vec2 position, double orientation, const SensorConfig& cfg, Vec2 p) {
  Vec2 d = p - position;
  double len2 = norm2(d);
  if (len2 > cfg.range * cfg.range) return false;
  if (len2 == 0.0) return true;
  double len = std::sqrt(len2);
  return dot(d, unit_from_angle(orientation)) >= len * std::cos(0.5 * cfg.view_angle);
}

// Apex the sector is placed at under the given mode. Forward displacement is
// capped at the vertex so the apex never overshoots the aim point.
inline Vec2 sector_apex(Vec2 nominal, Vec2 vertex, double rho, PositionMode mode) {
  if (mode == PositionMode::Nominal) return nominal;
  double eff = mode == PositionMode::BestRobust ? std::min(rho, distance(nominal, vertex)) : rho;
  return evaluated_position(nominal, vertex, eff, mode);
}

// Aim direction from the apex toward the vertex; when the apex sits exactly
// on the vertex the limit direction nominal->vertex is used.
inline double aim_orientation(Vec2 apex, Vec2 vertex, Vec2 nominal) {
  Vec2 d = vertex - apex;
  if (norm(d) <= 1e-12) d = vertex - nominal;
  return normalize_angle(std::atan2(d.y, d.x));
}

// Cell-clipped coverage area if the sensor aims at `vertex` under `mode`.
inline double coverage_for_vertex(const SensorState& sensor, Vec2 vertex,
                                  const SensorConfig& cfg, const ConvexPolygon& cell,
                                  PositionMode mode) {
  Vec2 apex = sector_apex(sensor.nominal, vertex, sensor.rho, mode);
  double theta = aim_orientation(apex, vertex, sensor.nominal);
  return sector_polygon_area(Sector(apex, theta, cfg.view_angle, cfg.range), cell);
}

}  // namespace rrfcov
