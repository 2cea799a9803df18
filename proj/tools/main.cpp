// Command-line front end: single runs with JSON metrics and optional SVG,
// CSV parameter sweeps, per-sensor RRF reports, and the geometry self-check.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rrfcov/rrfcov.hpp"

namespace {

using nlohmann::json;
using namespace rrfcov;

struct ScenarioFlags {
  std::string config_path;
  std::vector<double> region;
  int sensors = 0;
  double range = 0.0;
  double angle_deg = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double epsilon = 0.0;
  std::string strategy;
  std::string case_name;
  int runs = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
  cmd->add_option("--region", f.region, "region width and height (default 1000 1000)")
      ->expected(2);
  cmd->add_option("--sensors", f.sensors, "sensor count (default 40)");
  cmd->add_option("--range", f.range, "sensing range (default 100)");
  cmd->add_option("--angle", f.angle_deg, "view angle in degrees, (0,360] (default 90)");
  cmd->add_option("--rho-min", f.rho_min, "lower RRF clamp (default 50)");
  cmd->add_option("--rho-max", f.rho_max, "upper RRF clamp (default 150)");
  cmd->add_option("--epsilon", f.epsilon, "boundary vertex threshold (default range/3)");
  cmd->add_option("--strategy", f.strategy, "random|ids|proposed (default proposed)")
      ->check(CLI::IsMember({"random", "ids", "proposed"}));
  cmd->add_option("--case", f.case_name, "position case I|II|III (default I)")
      ->check(CLI::IsMember({"I", "II", "III"}));
  cmd->add_option("--runs", f.runs, "independent runs per configuration (default 500)");
  cmd->add_option("--seed", f.seed, "base PRNG seed (default 1)");
  cmd->add_option("--tol", f.tol, "RRF bisection tolerance (default 1e-3)");
}

void apply_json_config(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(in);
  if (j.contains("region")) {
    const json& r = j["region"];
    if (r.is_array()) cfg.region = Region(r.at(0).get<double>(), r.at(1).get<double>());
    else cfg.region = Region(r.at("width").get<double>(), r.at("height").get<double>());
  }
  if (j.contains("m")) cfg.m = j["m"].get<int>();
  if (j.contains("r_s")) cfg.r_s = j["r_s"].get<double>();
  if (j.contains("theta_s")) cfg.theta_s = deg2rad(j["theta_s"].get<double>());
  if (j.contains("rho_min")) cfg.rho_min = j["rho_min"].get<double>();
  if (j.contains("rho_max")) cfg.rho_max = j["rho_max"].get<double>();
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("strategy")) cfg.strategy = parse_strategy(j["strategy"].get<std::string>());
  if (j.contains("mode")) cfg.mode = parse_case(j["mode"].get<std::string>());
  if (j.contains("runs")) cfg.runs = j["runs"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
}

ScenarioConfig build_config(const CLI::App* cmd, const ScenarioFlags& f) {
  ScenarioConfig cfg;
  if (cmd->count("--config")) apply_json_config(cfg, f.config_path);
  if (cmd->count("--region")) cfg.region = Region(f.region[0], f.region[1]);
  if (cmd->count("--sensors")) cfg.m = f.sensors;
  if (cmd->count("--range")) cfg.r_s = f.range;
  if (cmd->count("--angle")) cfg.theta_s = deg2rad(f.angle_deg);
  if (cmd->count("--rho-min")) cfg.rho_min = f.rho_min;
  if (cmd->count("--rho-max")) cfg.rho_max = f.rho_max;
  if (cmd->count("--epsilon")) cfg.epsilon = f.epsilon;
  if (cmd->count("--strategy")) cfg.strategy = parse_strategy(f.strategy);
  if (cmd->count("--case")) cfg.mode = parse_case(f.case_name);
  if (cmd->count("--runs")) cfg.runs = f.runs;
  if (cmd->count("--seed")) cfg.seed = f.seed;
  if (cmd->count("--tol")) cfg.tol = f.tol;
  cfg.validate();
  return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
  return json{{"region", {{"width", cfg.region.width}, {"height", cfg.region.height}}},
              {"m", cfg.m},
              {"r_s", cfg.r_s},
              {"theta_s", rad2deg(cfg.theta_s)},
              {"rho_min", cfg.rho_min},
              {"rho_max", cfg.rho_max},
              {"epsilon", cfg.effective_epsilon()},
              {"strategy", to_string(cfg.strategy)},
              {"mode", case_name(cfg.mode)},
              {"runs", cfg.runs},
              {"seed", cfg.seed},
              {"tol", cfg.tol}};
}

int cmd_run(const CLI::App* cmd, const ScenarioFlags& f, std::uint64_t run_index,
            const std::string& svg_path) {
  ScenarioConfig cfg = build_config(cmd, f);
  ScenarioOutcome out = run_scenario(cfg, run_index);
  json result{{"total_coverage", out.result.total_coverage},
              {"per_sensor_area", out.result.per_sensor_area},
              {"rrf_values", out.result.rrf_values},
              {"union_coverage_mc", out.result.union_coverage_mc.value()},
              {"wall_time_s", out.result.wall_time_s},
              {"iterations", out.trace.iterations},
              {"reorientation_events", out.trace.events.size()},
              {"exhausted_sensors", out.trace.exhausted}};
  json doc{{"config", config_to_json(cfg)}, {"run_index", run_index}, {"result", result}};
  std::cout << doc.dump(2) << "\n";
  if (!svg_path.empty()) render_svg(out.states, out.diagram, cfg, svg_path);
  return 0;
}

std::pair<double, double> parse_rho_pair(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos)
    throw CLI::ValidationError("--rhos", "expected LO:HI, got " + s);
  return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

int cmd_sweep(const CLI::App* cmd, const ScenarioFlags& f, const std::vector<double>& thetas,
              const std::vector<double>& ranges, const std::vector<int>& counts,
              const std::vector<std::string>& rhos, const std::vector<std::string>& strategies,
              const std::vector<std::string>& cases, const std::string& out_path,
              unsigned threads) {
  SweepSpec spec;
  spec.base = build_config(cmd, f);
  spec.theta_deg = thetas;
  spec.r_s = ranges;
  spec.m = counts;
  for (const auto& s : rhos) spec.rho.push_back(parse_rho_pair(s));
  for (const auto& s : strategies) spec.strategies.push_back(parse_strategy(s));
  for (const auto& s : cases) spec.modes.push_back(parse_case(s));

  std::string csv = sweep_csv(sweep(spec, threads));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 1;
    }
    out << csv;
  }
  return 0;
}

int cmd_rrf(const CLI::App* cmd, const ScenarioFlags& f, std::uint64_t run_index,
            const std::string& positions_path) {
  ScenarioConfig cfg = build_config(cmd, f);
  std::optional<Deployment> dep;
  if (!positions_path.empty()) {
    std::ifstream in(positions_path);
    if (!in) {
      std::cerr << "cannot open " << positions_path << "\n";
      return 1;
    }
    json j = json::parse(in);
    std::vector<Vec2> pts;
    for (const auto& p : j) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    dep.emplace(cfg.region, std::move(pts));
  } else {
    dep.emplace(deploy_random(cfg, run_index));
  }
  VoronoiDiagram vd = build_voronoi(*dep);
  std::printf("sensor,x,y,rho_raw,rho,argmax_x,argmax_y,active_neighbor\n");
  for (std::size_t i = 0; i < dep->size(); ++i) {
    auto r = compute_rrf(static_cast<int>(i), vd, *dep, cfg.rho_min, cfg.rho_max, cfg.tol);
    std::printf("%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n", i, dep->positions[i].x,
                dep->positions[i].y, r.rho_raw, r.rho, r.argmax_point.x, r.argmax_point.y,
                r.active_neighbor);
  }
  return 0;
}

int cmd_oracle(int instances, std::size_t samples, std::uint64_t seed) {
  auto rows = geometry_selfcheck(instances, samples, seed);
  std::printf("index,exact,mc,std_error,abs_err,limit,status\n");
  int passed = 0;
  for (const auto& r : rows) {
    std::printf("%d,%.6f,%.6f,%.6f,%.6f,%.6f,%s\n", r.index, r.exact, r.mc, r.std_error,
                r.abs_err, r.limit, r.ok ? "ok" : "FAIL");
    passed += r.ok ? 1 : 0;
  }
  std::printf("oracle: %d/%d instances within tolerance\n", passed, instances);
  return passed == instances ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust directional sensor coverage simulator"};
  app.require_subcommand(1);

  ScenarioFlags run_f, sweep_f, rrf_f;
  std::uint64_t run_index = 0;
  std::string svg_path;
  auto* run = app.add_subcommand("run", "execute one scenario, print metrics JSON");
  add_scenario_flags(run, run_f);
  run->add_option("--run-index", run_index, "which seeded run to execute (default 0)");
  run->add_option("--svg", svg_path, "also render the scenario to an SVG file");

  std::vector<double> thetas, ranges;
  std::vector<int> counts;
  std::vector<std::string> rhos, strategies, cases;
  std::string out_path;
  unsigned threads = 0;
  auto* sw = app.add_subcommand("sweep", "run a parameter grid, print CSV");
  add_scenario_flags(sw, sweep_f);
  sw->add_option("--thetas", thetas, "view-angle axis, degrees (e.g. 90 180 270 360)");
  sw->add_option("--ranges", ranges, "sensing-range axis");
  sw->add_option("--counts", counts, "sensor-count axis");
  sw->add_option("--rhos", rhos, "RRF clamp axis as LO:HI pairs (e.g. 50:150)");
  sw->add_option("--strategies", strategies, "strategies to cross")
      ->check(CLI::IsMember({"random", "ids", "proposed"}));
  sw->add_option("--cases", cases, "cases to cross")->check(CLI::IsMember({"I", "II", "III"}));
  sw->add_option("--out", out_path, "write CSV here instead of standard output");
  sw->add_option("--threads", threads, "worker threads (0 = hardware)");

  std::uint64_t rrf_run_index = 0;
  std::string positions_path;
  auto* rr = app.add_subcommand("rrf", "print per-sensor robust-feasibility radii");
  add_scenario_flags(rr, rrf_f);
  rr->add_option("--run-index", rrf_run_index, "seeded deployment to analyze (default 0)");
  rr->add_option("--positions", positions_path, "JSON file [[x,y],...] with fixed positions");

  int instances = 100;
  std::size_t samples = 1000000;
  std::uint64_t oracle_seed = 20240811;
  auto* orc = app.add_subcommand("oracle", "geometry kernel self-check vs Monte-Carlo");
  orc->add_option("--instances", instances, "number of random instances (default 100)");
  orc->add_option("--samples", samples, "Monte-Carlo samples per instance (default 1e6)");
  orc->add_option("--seed", oracle_seed, "oracle PRNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run, run_f, run_index, svg_path);
    if (sw->parsed())
      return cmd_sweep(sw, sweep_f, thetas, ranges, counts, rhos, strategies, cases, out_path,
                       threads);
    if (rr->parsed()) return cmd_rrf(rr, rrf_f, rrf_run_index, positions_path);
    if (orc->parsed()) return cmd_oracle(instances, samples, oracle_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
