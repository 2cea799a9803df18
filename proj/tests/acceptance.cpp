// Acceptance gate for the coverage simulator: nine end-to-end checks, one
// pass/fail line each, nonzero exit if any fails. Tolerances are pinned
// alongside each check.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rrfcov/rrfcov.hpp"

using namespace rrfcov;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. Analytic sector/cell areas vs Monte-Carlo on 100 seeded instances,
//    each with a million samples; must finish within two minutes.
Outcome check_geometry_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  auto rows = geometry_selfcheck(100, 1000000, 20240811);
  double elapsed = seconds_since(t0);
  int bad = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (!r.ok) ++bad;
    if (r.limit > 0.0) worst = std::max(worst, r.abs_err / r.limit);
  }
  Outcome o;
  o.pass = bad == 0 && elapsed < 120.0;
  o.detail = fmt("%d/100 within tolerance, worst err/limit %.3f, %.1f s", 100 - bad, worst,
                 elapsed);
  return o;
}

// 2. Quarter-turn sector of radius 10 clipped by x <= 5: area 25 exactly.
Outcome check_sector_clip_closed_form() {
  ConvexPolygon cell({{0, -20}, {5, -20}, {5, 20}, {0, 20}});
  Sector s({0, 0}, 0.0, kPi / 2, 10.0);
  double area = sector_polygon_area(s, cell);
  Outcome o;
  o.pass = std::fabs(area - 25.0) <= 1e-6;
  o.detail = fmt("area %.12f, |err| %.3g (tol 1e-6)", area, std::fabs(area - 25.0));
  return o;
}

// 3. 100 random 40-sensor diagrams: cells tile the region to 1e-6 relative
//    and agree with the nearest-site rule on a 10-unit raster.
Outcome check_voronoi_partition() {
  ScenarioConfig cfg;
  cfg.m = 40;
  cfg.seed = 77000;
  double worst_rel = 0.0;
  long raster_bad = 0, raster_pts = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    Deployment dep = deploy_random(cfg, run);
    VoronoiDiagram vd = build_voronoi(dep);
    double total = 0.0;
    for (const auto& c : vd.cells) total += c.area();
    worst_rel = std::max(worst_rel, std::fabs(total - 1e6) / 1e6);

    for (int gx = 0; gx <= 1000; gx += 10) {
      for (int gy = 0; gy <= 1000; gy += 10) {
        Vec2 p{static_cast<double>(gx), static_cast<double>(gy)};
        std::size_t best = 0;
        double d0 = norm2(p - dep.positions[0]), d1 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < dep.size(); ++i) {
          double d = norm2(p - dep.positions[i]);
          if (d < d0) {
            d1 = d0;
            d0 = d;
            best = i;
          } else {
            d1 = std::min(d1, d);
          }
        }
        if (d1 - d0 < 1e-9) continue;  // equidistant: either cell may own it
        ++raster_pts;
        if (!vd.cells[best].contains(p, 1e-6)) ++raster_bad;
      }
    }
  }
  Outcome o;
  o.pass = worst_rel <= 1e-6 && raster_bad == 0;
  o.detail = fmt("worst relative tiling error %.3g, %ld/%ld raster points agree", worst_rel,
                 raster_pts - raster_bad, raster_pts);
  return o;
}

// 4. Two sensors 10 apart in a 10x10 region: the ratio for the sensor at the
//    origin peaks at its cell corner (0,0) with value 5; the bisection must
//    land within its tolerance and clamping to [r_min, r_max] must be exact.
//    The far sensor is not symmetric (the erosion rates grow with distance
//    from the origin): its ratio peaks at (10,0) with value (200-100)/60.
Outcome check_rrf_analytic() {
  Deployment dep(Region(10.0, 10.0), {{0.0, 0.0}, {10.0, 0.0}});
  VoronoiDiagram vd = build_voronoi(dep);
  auto r0 = compute_rrf(0, vd, dep, 0.0, 10.0, 1e-3);
  auto r1 = compute_rrf(1, vd, dep, 0.0, 10.0, 1e-3);
  bool raw_ok = std::fabs(r0.rho_raw - 5.0) <= 1e-3 && norm(r0.argmax_point) < 0.01 &&
                std::fabs(r1.rho_raw - 5.0 / 3.0) <= 1e-3;

  auto lo = compute_rrf(0, vd, dep, 50.0, 150.0, 1e-3);
  bool clamp_lo = lo.rho == 50.0;

  Deployment wide(Region(1000.0, 1000.0), {{100.0, 500.0}, {900.0, 500.0}});
  VoronoiDiagram wvd = build_voronoi(wide);
  auto hi = compute_rrf(0, wvd, wide, 0.0, 150.0, 1e-3);
  bool clamp_hi = hi.rho_raw > 150.0 && hi.rho == 150.0;

  Outcome o;
  o.pass = raw_ok && clamp_lo && clamp_hi;
  o.detail =
      fmt("rho_raw %.6f (target 5 +/- 1e-3) and %.6f (target 5/3), clamp up -> %.1f, "
          "clamp down -> %.1f",
          r0.rho_raw, r1.rho_raw, lo.rho, hi.rho);
  return o;
}

// 5. Omnidirectional sensing: per-run totals agree across the three
//    strategies to 1e-9 relative on 100 runs.
Outcome check_full_angle_invariance() {
  ScenarioConfig cfg;
  cfg.m = 40;
  cfg.theta_s = deg2rad(360.0);
  cfg.mode = PositionMode::Nominal;
  cfg.seed = 31;
  double worst = 0.0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    double t[3];
    int k = 0;
    for (Strategy s : {Strategy::Random, Strategy::Ids, Strategy::Proposed}) {
      cfg.strategy = s;
      t[k++] = run_scenario(cfg, run, false).result.total_coverage;
    }
    double scale = std::max({std::fabs(t[0]), std::fabs(t[1]), std::fabs(t[2]), 1.0});
    worst = std::max(worst, std::max(std::fabs(t[1] - t[0]), std::fabs(t[2] - t[0])) / scale);
  }
  Outcome o;
  o.pass = worst <= 1e-9;
  o.detail = fmt("worst relative spread %.3g over 100 runs (tol 1e-9)", worst);
  return o;
}

// 6. Standard omnidirectional scenario, 500 runs: mean total coverage within
//    5% of the reference value 682367; must finish within ten minutes.
Outcome check_reference_mean() {
  auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig cfg;
  cfg.m = 40;
  cfg.r_s = 100.0;
  cfg.theta_s = deg2rad(360.0);
  cfg.strategy = Strategy::Proposed;
  cfg.mode = PositionMode::Nominal;
  cfg.runs = 500;
  cfg.seed = 1;
  MeanStd ms = mean_std(run_totals(cfg));
  double elapsed = seconds_since(t0);
  constexpr double kReference = 682367.0;
  double rel = std::fabs(ms.mean - kReference) / kReference;
  Outcome o;
  o.pass = rel <= 0.05 && elapsed < 600.0;
  o.detail = fmt("mean %.0f vs %.0f (off by %.2f%%, tol 5%%), std %.0f, %.1f s", ms.mean,
                 kReference, 100.0 * rel, ms.std, elapsed);
  return o;
}

// 7. Directional sensing, 200 runs: the greedy pipeline beats random
//    orientations by at least 8% on mean total coverage.
Outcome check_strategy_ordering() {
  ScenarioConfig cfg;
  cfg.m = 40;
  cfg.r_s = 100.0;
  cfg.theta_s = deg2rad(90.0);
  cfg.mode = PositionMode::Nominal;
  cfg.runs = 200;
  cfg.seed = 7;
  cfg.strategy = Strategy::Random;
  MeanStd random_ms = mean_std(run_totals(cfg));
  cfg.strategy = Strategy::Proposed;
  MeanStd prop_ms = mean_std(run_totals(cfg));
  double ratio = prop_ms.mean / random_ms.mean;
  Outcome o;
  o.pass = ratio >= 1.08;
  o.detail = fmt("proposed %.0f vs random %.0f, ratio %.4f (need >= 1.08)", prop_ms.mean,
                 random_ms.mean, ratio);
  return o;
}

// 8. Mean coverage is nondecreasing in the sensor count and in the range;
//    one inversion per axis is tolerated if within one pooled standard error.
Outcome check_monotonicity() {
  auto series = [](const std::vector<ScenarioConfig>& cfgs, std::string& desc) {
    int inversions = 0;
    bool ok = true;
    MeanStd prev{};
    bool first = true;
    for (const auto& cfg : cfgs) {
      MeanStd ms = mean_std(run_totals(cfg));
      desc += fmt(first ? "%.0f" : " -> %.0f", ms.mean);
      if (!first && ms.mean < prev.mean) {
        ++inversions;
        double n = static_cast<double>(cfg.runs);
        double pooled = std::sqrt((prev.std * prev.std + ms.std * ms.std) / n);
        if (inversions > 1 || prev.mean - ms.mean > pooled) ok = false;
      }
      prev = ms;
      first = false;
    }
    return ok;
  };

  ScenarioConfig base;
  base.r_s = 100.0;
  base.theta_s = deg2rad(90.0);
  base.strategy = Strategy::Proposed;
  base.mode = PositionMode::Nominal;
  base.runs = 200;
  base.seed = 11;

  std::vector<ScenarioConfig> by_m;
  for (int m : {10, 40, 60, 100}) {
    ScenarioConfig c = base;
    c.m = m;
    by_m.push_back(c);
  }
  std::string m_desc = "m: ";
  bool m_ok = series(by_m, m_desc);

  std::vector<ScenarioConfig> by_r;
  for (double r : {50.0, 100.0, 200.0, 300.0}) {
    ScenarioConfig c = base;
    c.m = 40;
    c.r_s = r;
    by_r.push_back(c);
  }
  std::string r_desc = "r_s: ";
  bool r_ok = series(by_r, r_desc);

  Outcome o;
  o.pass = m_ok && r_ok;
  o.detail = m_desc + "; " + r_desc;
  return o;
}

// 9. Optimizer guarantees on 100 seeded 40-sensor runs: event count bounded
//    by the candidate total, no unresolved conflicts between non-exhausted
//    sensors, and bit-identical traces and sweep CSV on identical seeds.
Outcome check_algorithm_properties() {
  ScenarioConfig cfg;
  cfg.m = 40;
  cfg.theta_s = deg2rad(90.0);
  cfg.strategy = Strategy::Proposed;
  cfg.mode = PositionMode::Nominal;
  cfg.seed = 99;
  SensorConfig scfg(cfg.r_s, cfg.theta_s);

  long bound_violations = 0, unresolved = 0, trace_mismatches = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    auto out = run_scenario(cfg, run, false);
    std::size_t cap = 0;
    for (const auto& s : out.states) cap += s.candidates.size();
    if (out.trace.events.size() > cap) ++bound_violations;
    for (std::size_t i = 0; i < out.states.size(); ++i)
      for (std::size_t j = i + 1; j < out.states.size(); ++j)
        if (detect_conflict(out.states[i], out.states[j], scfg.range) &&
            !out.states[i].exhausted && !out.states[j].exhausted)
          ++unresolved;
    auto rerun = run_scenario(cfg, run, false);
    if (rerun.trace.to_log() != out.trace.to_log() ||
        rerun.result.total_coverage != out.result.total_coverage)
      ++trace_mismatches;
  }

  SweepSpec spec;
  spec.base = cfg;
  spec.base.runs = 3;
  spec.theta_deg = {90.0, 360.0};
  spec.strategies = {Strategy::Random, Strategy::Proposed};
  bool csv_stable = sweep_csv(sweep(spec)) == sweep_csv(sweep(spec));

  Outcome o;
  o.pass =
      bound_violations == 0 && unresolved == 0 && trace_mismatches == 0 && csv_stable;
  o.detail = fmt("bound violations %ld, unresolved conflicts %ld, trace mismatches %ld, "
                 "csv stable %s",
                 bound_violations, unresolved, trace_mismatches, csv_stable ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"geometry areas match the Monte-Carlo oracle", check_geometry_oracle},
      {"closed-form sector clip", check_sector_clip_closed_form},
      {"voronoi cells tile the region", check_voronoi_partition},
      {"robust radius analytic instance and clamps", check_rrf_analytic},
      {"full view angle makes strategies equivalent", check_full_angle_invariance},
      {"reference scenario mean coverage", check_reference_mean},
      {"greedy orientation beats random", check_strategy_ordering},
      {"coverage monotone in count and range", check_monotonicity},
      {"optimizer termination, bounds and determinism", check_algorithm_properties},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = criteria[i].run();
    double elapsed = seconds_since(t0);
    std::printf("[%s] criterion %zu: %s - %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (failed) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
