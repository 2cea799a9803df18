#pragma once

// Experiment harness: scenario configuration, random deployments, the three
// orientation strategies, per-run metric evaluation, and deterministic
// parameter sweeps. A (seed, run_index) pair fully determines a run, so
// sweeps can execute runs on any number of threads and still aggregate
// bit-identical results in run-index order.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrfcov/optimizer.hpp"
#include "rrfcov/parallel.hpp"

namespace rrfcov {

enum class Strategy { Random, Ids, Proposed };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Random: return "random";
    case Strategy::Ids: return "ids";
    default: return "proposed";
  }
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "random") return Strategy::Random;
  if (s == "ids") return Strategy::Ids;
  if (s == "proposed") return Strategy::Proposed;
  throw std::invalid_argument("unknown strategy: " + s);
}

// Position modes map onto the experiment cases I/II/III.
inline const char* case_name(PositionMode m) {
  switch (m) {
    case PositionMode::Nominal: return "I";
    case PositionMode::BestRobust: return "II";
    default: return "III";
  }
}

inline PositionMode parse_case(const std::string& s) {
  if (s == "I") return PositionMode::Nominal;
  if (s == "II") return PositionMode::BestRobust;
  if (s == "III") return PositionMode::WorstRobust;
  throw std::invalid_argument("unknown case: " + s + " (expected I, II or III)");
}

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct ScenarioConfig {
  Region region{1000.0, 1000.0};
  int m = 40;                    // sensor count
  double r_s = 100.0;            // sensing range
  double theta_s = deg2rad(90);  // view angle, radians (degrees at interfaces)
  double rho_min = 50.0;
  double rho_max = 150.0;
  std::optional<double> epsilon;  // boundary threshold; defaults to r_s/3
  Strategy strategy = Strategy::Proposed;
  PositionMode mode = PositionMode::Nominal;
  int runs = 500;
  std::uint64_t seed = 1;
  double tol = 1e-3;  // RRF bisection tolerance

  double effective_epsilon() const { return epsilon ? *epsilon : r_s / 3.0; }

  void validate() const {
    if (m < 1) throw std::invalid_argument("ScenarioConfig: m must be >= 1");
    if (runs < 1) throw std::invalid_argument("ScenarioConfig: runs must be >= 1");
    if (!(r_s > 0.0)) throw std::invalid_argument("ScenarioConfig: range must be positive");
    if (!(theta_s > 0.0) || theta_s > kTwoPi + 1e-12)
      throw std::invalid_argument("ScenarioConfig: view angle must lie in (0, 360] degrees");
    if (!(rho_min >= 0.0) || !(rho_min <= rho_max))
      throw std::invalid_argument("ScenarioConfig: need 0 <= rho_min <= rho_max");
    if (epsilon && *epsilon < 0.0)
      throw std::invalid_argument("ScenarioConfig: epsilon must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("ScenarioConfig: tol must be positive");
  }
};

namespace detail {

inline constexpr std::uint64_t kOrientationStream = 0x6f7269656e74ULL;
inline constexpr std::uint64_t kUnionMcStream = 0x756e696f6eULL;
inline constexpr double kDeployMargin = 1e-3;

}  // namespace detail

// m i.i.d. uniform positions over the region interior (margin 1e-3),
// rejection-resampled until pairwise separations hold. Seeded with
// seed + run_index, so a run is reproducible in isolation.
inline Deployment deploy_random(const ScenarioConfig& cfg, std::uint64_t run_index) {
  cfg.validate();
  std::mt19937_64 g(cfg.seed + run_index);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(cfg.m));
  long attempts = 0;
  while (pts.size() < static_cast<std::size_t>(cfg.m)) {
    if (++attempts > 1000000)
      throw std::runtime_error("deploy_random: cannot satisfy the separation constraint");
    Vec2 p{uniform(g, detail::kDeployMargin, cfg.region.width - detail::kDeployMargin),
           uniform(g, detail::kDeployMargin, cfg.region.height - detail::kDeployMargin)};
    bool ok = true;
    for (const Vec2& q : pts)
      if (distance(p, q) <= kMinSensorSeparation) {
        ok = false;
        break;
      }
    if (ok) pts.push_back(p);
  }
  return Deployment(cfg.region, std::move(pts));
}

struct OrientationOutcome {
  std::vector<SensorState> states;
  VoronoiDiagram diagram;
  AlgoTrace trace;
};

// Orientation assignment per strategy:
//   Random   - i.i.d. uniform orientations, no vertex choice; under the
//              displaced modes the orientation direction doubles as the
//              displacement direction.
//   IDS      - the greedy pipeline with rho forced to 0 (nominal-position
//              greedy); the true clamped RRF is then restored for the
//              per-mode evaluation.
//   Proposed - the full pipeline with RRF-aware evaluation at cfg.mode.
inline OrientationOutcome assign_orientations(const Deployment& dep, const ScenarioConfig& cfg,
                                              std::uint64_t run_index) {
  SensorConfig scfg(cfg.r_s, cfg.theta_s);
  AlgoConfig acfg(cfg.effective_epsilon(), cfg.mode);

  if (cfg.strategy == Strategy::Random) {
    VoronoiDiagram vd = build_voronoi(dep);
    std::mt19937_64 g(substream_seed(cfg.seed, run_index, detail::kOrientationStream));
    std::vector<SensorState> states;
    states.reserve(dep.size());
    for (std::size_t i = 0; i < dep.size(); ++i) {
      SensorState s;
      s.id = static_cast<int>(i);
      s.nominal = dep.positions[i];
      auto rrf = compute_rrf(s.id, vd, dep, cfg.rho_min, cfg.rho_max, cfg.tol);
      s.rho = rrf.rho;
      s.rho_raw = rrf.rho_raw;
      s.orientation = kPi * (1.0 - 2.0 * canonical(g));  // uniform on (-pi, pi]
      Vec2 u = unit_from_angle(s.orientation);
      s.evaluated = s.nominal;
      if (cfg.mode == PositionMode::BestRobust) s.evaluated = s.nominal + u * s.rho;
      else if (cfg.mode == PositionMode::WorstRobust) s.evaluated = s.nominal - u * s.rho;
      states.push_back(std::move(s));
    }
    return {std::move(states), std::move(vd), {}};
  }

  if (cfg.strategy == Strategy::Ids) {
    AlgoResult res = run_algorithm(dep, scfg, acfg, 0.0, 0.0, cfg.tol);
    for (auto& s : res.states) {
      auto rrf = compute_rrf(s.id, res.diagram, dep, cfg.rho_min, cfg.rho_max, cfg.tol);
      s.rho = rrf.rho;
      s.rho_raw = rrf.rho_raw;
      s.evaluated = sector_apex(s.nominal, s.chosen_vertex, s.rho, cfg.mode);
      s.orientation = aim_orientation(s.evaluated, s.chosen_vertex, s.nominal);
    }
    return {std::move(res.states), std::move(res.diagram), std::move(res.trace)};
  }

  AlgoResult res = run_algorithm(dep, scfg, acfg, cfg.rho_min, cfg.rho_max, cfg.tol);
  return {std::move(res.states), std::move(res.diagram), std::move(res.trace)};
}

struct RunResult {
  double total_coverage = 0.0;
  std::vector<double> per_sensor_area;
  std::vector<double> rrf_values;
  std::optional<double> union_coverage_mc;  // diagnostic; skipped inside sweeps
  double wall_time_s = 0.0;
};

// A_j = sector/own-cell intersection area at the evaluated position; the
// total metric is their sum. Union coverage is estimated separately by
// Monte-Carlo over the whole region with the covers predicate.
inline RunResult evaluate(const std::vector<SensorState>& states, const VoronoiDiagram& vd,
                          const ScenarioConfig& cfg, std::uint64_t run_index,
                          bool with_union_mc = true) {
  SensorConfig scfg(cfg.r_s, cfg.theta_s);
  RunResult r;
  r.per_sensor_area.reserve(states.size());
  r.rrf_values.reserve(states.size());
  for (const auto& s : states) {
    double a = sector_polygon_area(Sector(s.evaluated, s.orientation, scfg.view_angle, scfg.range),
                                   vd.cells[static_cast<std::size_t>(s.id)]);
    r.per_sensor_area.push_back(a);
    r.rrf_values.push_back(s.rho);
    r.total_coverage += a;
  }
  if (with_union_mc) {
    Aabb box{0.0, 0.0, cfg.region.width, cfg.region.height};
    auto covered = [&](Vec2 p) {
      for (const auto& s : states)
        if (covers(s.evaluated, s.orientation, scfg, p)) return true;
      return false;
    };
    r.union_coverage_mc =
        mc_area_oracle(covered, box, 100000,
                       substream_seed(cfg.seed, run_index, detail::kUnionMcStream))
            .area;
  }
  return r;
}

struct ScenarioOutcome {
  Deployment deployment;
  VoronoiDiagram diagram;
  std::vector<SensorState> states;
  AlgoTrace trace;
  RunResult result;
};

// One fully seeded run: deploy, orient, evaluate.
inline ScenarioOutcome run_scenario(const ScenarioConfig& cfg, std::uint64_t run_index,
                                    bool with_union_mc = true) {
  auto t0 = std::chrono::steady_clock::now();
  Deployment dep = deploy_random(cfg, run_index);
  OrientationOutcome orient = assign_orientations(dep, cfg, run_index);
  RunResult result = evaluate(orient.states, orient.diagram, cfg, run_index, with_union_mc);
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(dep), std::move(orient.diagram), std::move(orient.states),
          std::move(orient.trace), std::move(result)};
}

// Per-run totals for cfg.runs independent runs; deterministic content for
// any thread count since each slot depends only on its run index.
inline std::vector<double> run_totals(const ScenarioConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  std::vector<double> totals(static_cast<std::size_t>(cfg.runs), 0.0);
  parallel_for_index(totals.size(), threads, [&](std::size_t r) {
    totals[r] = run_scenario(cfg, r, false).result.total_coverage;
  });
  return totals;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Mean and sample standard deviation, accumulated in index order.
inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd ms;
  if (xs.empty()) return ms;
  for (double x : xs) ms.mean += x;
  ms.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - ms.mean) * (x - ms.mean);
    ms.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return ms;
}

struct SweepSpec {
  ScenarioConfig base;
  std::vector<double> theta_deg;                 // view angles, degrees
  std::vector<double> r_s;                       // ranges
  std::vector<int> m;                            // sensor counts
  std::vector<std::pair<double, double>> rho;    // (rho_min, rho_max) pairs
  std::vector<Strategy> strategies;
  std::vector<PositionMode> modes;
};

struct SweepRow {
  double theta_deg;
  double r_s;
  int m;
  double rho_min;
  double rho_max;
  Strategy strategy;
  PositionMode mode;
  int runs;
  double mean_coverage;
  double std_coverage;
};

// Full grid in fixed nesting order theta -> r_s -> m -> rho -> strategy ->
// mode; every empty axis falls back to the base config's value.
inline std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned threads = 0) {
  spec.base.validate();
  auto thetas = spec.theta_deg.empty() ? std::vector<double>{rad2deg(spec.base.theta_s)}
                                       : spec.theta_deg;
  auto ranges = spec.r_s.empty() ? std::vector<double>{spec.base.r_s} : spec.r_s;
  auto counts = spec.m.empty() ? std::vector<int>{spec.base.m} : spec.m;
  auto rhos = spec.rho.empty()
                  ? std::vector<std::pair<double, double>>{{spec.base.rho_min, spec.base.rho_max}}
                  : spec.rho;
  auto strategies = spec.strategies.empty() ? std::vector<Strategy>{spec.base.strategy}
                                            : spec.strategies;
  auto modes = spec.modes.empty() ? std::vector<PositionMode>{spec.base.mode} : spec.modes;

  std::vector<SweepRow> rows;
  rows.reserve(thetas.size() * ranges.size() * counts.size() * rhos.size() * strategies.size() *
               modes.size());
  for (double th : thetas)
    for (double rs : ranges)
      for (int mm : counts)
        for (auto [rlo, rhi] : rhos)
          for (Strategy st : strategies)
            for (PositionMode md : modes) {
              ScenarioConfig cfg = spec.base;
              cfg.theta_s = deg2rad(th);
              cfg.r_s = rs;
              cfg.m = mm;
              cfg.rho_min = rlo;
              cfg.rho_max = rhi;
              cfg.strategy = st;
              cfg.mode = md;
              MeanStd ms = mean_std(run_totals(cfg, threads));
              rows.push_back({th, rs, mm, rlo, rhi, st, md, cfg.runs, ms.mean, ms.std});
            }
  return rows;
}

// CSV with the fixed header; fixed-point value formatting keeps repeated
// sweeps byte-identical.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "theta_deg,r_s,m,rho_min,rho_max,strategy,case,runs,mean_coverage,std_coverage\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%g,%g,%d,%g,%g,%s,%s,%d,%.6f,%.6f\n", r.theta_deg, r.r_s,
                  r.m, r.rho_min, r.rho_max, to_string(r.strategy), case_name(r.mode), r.runs,
                  r.mean_coverage, r.std_coverage);
    out += buf;
  }
  return out;
}

}  // namespace rrfcov
