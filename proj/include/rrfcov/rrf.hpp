#pragma once

// Radius of robust feasibility (RRF) of a sensor's Voronoi cell under
// location uncertainty. Each neighbour constraint "x is no farther from
// sensor i than from neighbour j" is a linear inequality whose coefficients
// wander when the two sensor positions wander inside radius-alpha disks.
// The RRF of cell i is the largest alpha for which some point of the cell
// still satisfies every perturbed constraint:
//
//   rho_raw = sup_{x in cell} min_j (b_j - a_j . x) / (4|x| + b_rate_j)
//
// computed by bisection over alpha with an inner concave feasibility search.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rrfcov/voronoi.hpp"

namespace rrfcov {

// Where a sensor is assumed to sit when a sector is evaluated:
// at its nominal position, or displaced by its RRF toward (best case)
// or away from (worst case) its aimed vertex.
enum class PositionMode { Nominal, BestRobust, WorstRobust };

// Linearized uncertainty of the half-plane constraint between sensors i, j:
// nominal a.x <= b with a = 2(s_j - s_i), b = |s_j|^2 - |s_i|^2. When both
// positions move by at most alpha, |a - a_nom| <= a_rate*alpha and
// |b - b_nom| <= b_rate*alpha to first order.
struct PairCoefficients {
  Vec2 a;
  double b = 0.0;
  double b_rate = 0.0;
  static constexpr double a_rate = 4.0;
};

inline PairCoefficients neighbor_coefficients(Vec2 s_i, Vec2 s_j) {
  if (distance(s_i, s_j) <= 1e-12)
    throw std::invalid_argument("neighbor_coefficients: coincident sensors");
  PairCoefficients pc;
  pc.a = 2.0 * (s_j - s_i);
  pc.b = norm2(s_j) - norm2(s_i);
  pc.b_rate = 2.0 * (norm(s_i) + norm(s_j));
  return pc;
}

// Worst-case constraint erosion per unit of uncertainty radius at point x.
inline double support_value(Vec2 x, const PairCoefficients& pc) {
  return PairCoefficients::a_rate * norm(x) + pc.b_rate;
}

namespace detail {

inline double pair_ratio(Vec2 x, const PairCoefficients& pc) {
  return (pc.b - dot(pc.a, x)) / support_value(x, pc);
}

inline double min_ratio(Vec2 x, const std::vector<PairCoefficients>& pairs) {
  double nx = PairCoefficients::a_rate * norm(x);
  double r = std::numeric_limits<double>::infinity();
  for (const auto& pc : pairs) r = std::min(r, (pc.b - dot(pc.a, x)) / (nx + pc.b_rate));
  return r;
}

inline constexpr double kCellBoundaryTol = 1e-7;

// Maximizes f over the cell: coarse-to-fine 21x21 grids refined 4 times,
// seeded with the cell's vertices and centroid, then a compass pattern
// search to polish. f is concave for every use in this module, so the
// refinement cannot get trapped. Returns (argmax, max). Stops early once
// f reaches stop_above (used by the bisection feasibility test).
template <class F>
std::pair<Vec2, double> maximize_over_cell(
    const ConvexPolygon& cell, F&& f,
    double stop_above = std::numeric_limits<double>::infinity()) {
  Vec2 best_p = cell.centroid();
  double best_v = f(best_p);
  auto consider = [&](Vec2 p) {
    if (!cell.contains(p, kCellBoundaryTol)) return false;
    double v = f(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
    return best_v >= stop_above;
  };

  for (const Vec2& v : cell.vertices())
    if (consider(v)) return {best_p, best_v};

  const Aabb& bb = cell.bounding_box();
  constexpr int kGrid = 21;
  constexpr int kLevels = 4;
  Vec2 center{0.5 * (bb.xmin + bb.xmax), 0.5 * (bb.ymin + bb.ymax)};
  double hx = 0.5 * bb.width(), hy = 0.5 * bb.height();
  for (int level = 0; level < kLevels; ++level) {
    for (int iy = 0; iy < kGrid; ++iy)
      for (int ix = 0; ix < kGrid; ++ix) {
        Vec2 p{center.x - hx + 2.0 * hx * ix / (kGrid - 1),
               center.y - hy + 2.0 * hy * iy / (kGrid - 1)};
        if (consider(p)) return {best_p, best_v};
      }
    center = best_p;
    hx /= 10.0;
    hy /= 10.0;
  }

  double step = 2.0 * std::max(hx, hy);
  for (int it = 0; it < 100; ++it) {
    bool moved = false;
    const Vec2 moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const Vec2& d : moves) {
      Vec2 p = best_p + d;
      if (!cell.contains(p, kCellBoundaryTol)) continue;
      double v = f(p);
      if (v > best_v) {
        best_v = v;
        best_p = p;
        moved = true;
        if (best_v >= stop_above) return {best_p, best_v};
      }
    }
    if (!moved) step *= 0.5;
  }
  return {best_p, best_v};
}

}  // namespace detail

// Worst-case slack ratio at x for sensor i: min over its Voronoi neighbours
// of (margin at x) / (erosion rate at x). +infinity when the sensor has no
// neighbours. x must lie in the closed cell of sensor i.
inline double margin_ratio(Vec2 x, int sensor, const VoronoiDiagram& vd,
                           const Deployment& dep) {
  const auto& cell = vd.cells.at(static_cast<std::size_t>(sensor));
  if (!cell.contains(x, detail::kCellBoundaryTol))
    throw std::domain_error("margin_ratio: point outside the sensor's cell");
  const Vec2 si = dep.positions.at(static_cast<std::size_t>(sensor));
  double r = std::numeric_limits<double>::infinity();
  for (int j : vd.neighbors[static_cast<std::size_t>(sensor)])
    r = std::min(r, detail::pair_ratio(x, neighbor_coefficients(
                                              si, dep.positions[static_cast<std::size_t>(j)])));
  return r;
}

struct RobustFeasibilityResult {
  double rho_raw = 0.0;       // unclamped radius of robust feasibility
  double rho = 0.0;           // rho_raw clamped into [r_min, r_max]
  Vec2 argmax_point;          // cell point attaining the best worst-case ratio
  int active_neighbor = -1;   // neighbour whose constraint binds there, -1 if none
};

// Bisection on the uncertainty radius alpha over [0, 2*r_max]: a level is
// feasible when some cell point keeps every eroded constraint nonnegative,
// i.e. max_x min_j (b_j - a_j.x - alpha*(4|x| + b_rate_j)) >= 0. The inner
// max is of a concave function. Terminates when the bracket is below tol
// and reports the proven-feasible lower end.
inline RobustFeasibilityResult compute_rrf(int sensor, const VoronoiDiagram& vd,
                                           const Deployment& dep, double r_min,
                                           double r_max, double tol = 1e-3) {
  if (!(tol > 0.0)) throw std::invalid_argument("compute_rrf: tol must be positive");
  if (!(r_min >= 0.0) || !(r_min <= r_max))
    throw std::invalid_argument("compute_rrf: need 0 <= r_min <= r_max");
  const auto idx = static_cast<std::size_t>(sensor);
  const auto& cell = vd.cells.at(idx);
  const Vec2 si = dep.positions.at(idx);

  std::vector<PairCoefficients> pairs;
  pairs.reserve(vd.neighbors[idx].size());
  for (int j : vd.neighbors[idx])
    pairs.push_back(neighbor_coefficients(si, dep.positions[static_cast<std::size_t>(j)]));

  RobustFeasibilityResult res;
  const double hi_cap = 2.0 * r_max;
  if (pairs.empty()) {
    res.rho_raw = hi_cap;  // unconstrained cell: stop at the search cap
    res.argmax_point = si;
  } else {
    auto feasible = [&](double alpha) {
      auto g = [&](Vec2 x) {
        double nx = PairCoefficients::a_rate * norm(x);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& pc : pairs)
          worst = std::min(worst, pc.b - dot(pc.a, x) - alpha * (nx + pc.b_rate));
        return worst;
      };
      return detail::maximize_over_cell(cell, g, 0.0).second >= 0.0;
    };

    auto ratio = [&](Vec2 x) { return detail::min_ratio(x, pairs); };
    auto [arg, ratio_max] = detail::maximize_over_cell(cell, ratio);
    res.argmax_point = arg;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      double r = detail::pair_ratio(arg, pairs[k]);
      if (r < worst) {
        worst = r;
        res.active_neighbor = vd.neighbors[idx][k];
      }
    }

    double lo = 0.0, hi = hi_cap;
    if (feasible(hi)) {
      lo = hi;
    } else {
      // The worst-case ratio is quasi-concave, so its direct maximum already
      // locates the answer; two probes around it usually collapse the
      // bracket to width tol and the loop below just confirms it.
      double ph = std::min(ratio_max + 0.5 * tol, hi);
      if (ph < hi && ph > lo && !feasible(ph)) hi = ph;
      double pl = std::max(ratio_max - 0.5 * tol, lo);
      if (pl > lo && pl < hi && feasible(pl)) lo = pl;
      while (hi - lo >= tol) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
      }
    }
    res.rho_raw = lo;
  }
  res.rho = std::clamp(res.rho_raw, r_min, r_max);
  return res;
}

// Robust aiming position: the nominal location displaced by rho toward the
// chosen vertex.
inline Vec2 robust_location(Vec2 nominal, Vec2 vertex, double rho) {
  double d = distance(nominal, vertex);
  if (d <= 1e-12)
    throw std::invalid_argument("robust_location: vertex coincides with the sensor");
  if (rho < 0.0) throw std::invalid_argument("robust_location: negative rho");
  return nominal + (vertex - nominal) * (rho / d);
}

// Assumed sensor position under the given mode: displaced along the aiming
// direction by rho toward the vertex (BestRobust) or away from it
// (WorstRobust). Callers that place sectors cap the forward displacement so
// the apex never overshoots the vertex; the raw formula lives here.
inline Vec2 evaluated_position(Vec2 nominal, Vec2 vertex, double rho, PositionMode mode) {
  if (mode == PositionMode::Nominal) return nominal;
  double d = distance(nominal, vertex);
  if (d <= 1e-12)
    throw std::invalid_argument("evaluated_position: vertex coincides with the sensor");
  Vec2 u = (vertex - nominal) * (1.0 / d);
  return mode == PositionMode::BestRobust ? nominal + u * rho : nominal - u * rho;
}

}  // namespace rrfcov
