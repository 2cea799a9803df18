#pragma once

// Static SVG snapshot of a scenario: Voronoi cells, uncertainty circles,
// sector wedges, and markers, one layer group each. Output bytes are a pure
// function of the input.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrfcov/harness.hpp"

namespace rrfcov {

namespace detail {

inline void svg_num(std::string& out, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  out += buf;
}

inline void svg_attr(std::string& out, const char* name, double v) {
  out += ' ';
  out += name;
  out += "=\"";
  svg_num(out, v);
  out += '"';
}

}  // namespace detail

inline std::string render_svg_string(const std::vector<SensorState>& states,
                                     const VoronoiDiagram& vd, const ScenarioConfig& cfg) {
  const double w = vd.region.width, h = vd.region.height;
  std::string s;
  s.reserve(4096 + states.size() * 512);
  char head[256];
  std::snprintf(head, sizeof head,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n"
                "<g transform=\"matrix(1 0 0 -1 0 %g)\">\n",
                w, h, w, h, h);
  s += head;

  s += "<g id=\"cells\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\">\n";
  char rect[160];
  std::snprintf(rect, sizeof rect, "<rect x=\"0\" y=\"0\" width=\"%g\" height=\"%g\"/>\n", w, h);
  s += rect;
  for (const auto& cell : vd.cells) {
    s += "<polygon points=\"";
    bool first = true;
    for (const Vec2& p : cell.vertices()) {
      if (!first) s += ' ';
      first = false;
      detail::svg_num(s, p.x);
      s += ',';
      detail::svg_num(s, p.y);
    }
    s += "\"/>\n";
  }
  s += "</g>\n";

  s += "<g id=\"circles\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" "
       "stroke-dasharray=\"4 3\">\n";
  for (const auto& st : states) {
    if (st.rho <= 0.0) continue;
    s += "<circle";
    detail::svg_attr(s, "cx", st.nominal.x);
    detail::svg_attr(s, "cy", st.nominal.y);
    detail::svg_attr(s, "r", st.rho);
    s += "/>\n";
  }
  s += "</g>\n";

  s += "<g id=\"sectors\" fill=\"#ff7f0e\" fill-opacity=\"0.30\" stroke=\"#d62728\" "
       "stroke-width=\"1\">\n";
  for (const auto& st : states) {
    if (cfg.theta_s >= kTwoPi - 1e-12) {
      s += "<circle";
      detail::svg_attr(s, "cx", st.evaluated.x);
      detail::svg_attr(s, "cy", st.evaluated.y);
      detail::svg_attr(s, "r", cfg.r_s);
      s += "/>\n";
      continue;
    }
    double half = 0.5 * cfg.theta_s;
    Vec2 p1 = st.evaluated + cfg.r_s * unit_from_angle(st.orientation - half);
    Vec2 p2 = st.evaluated + cfg.r_s * unit_from_angle(st.orientation + half);
    int large = cfg.theta_s > kPi ? 1 : 0;
    s += "<path d=\"M ";
    detail::svg_num(s, st.evaluated.x);
    s += ' ';
    detail::svg_num(s, st.evaluated.y);
    s += " L ";
    detail::svg_num(s, p1.x);
    s += ' ';
    detail::svg_num(s, p1.y);
    s += " A ";
    detail::svg_num(s, cfg.r_s);
    s += ' ';
    detail::svg_num(s, cfg.r_s);
    s += " 0 ";
    s += large ? '1' : '0';
    s += " 1 ";  // positive-angle sweep in the flipped (mathematical) frame
    detail::svg_num(s, p2.x);
    s += ' ';
    detail::svg_num(s, p2.y);
    s += " Z\"/>\n";
  }
  s += "</g>\n";

  s += "<g id=\"markers\">\n";
  for (const auto& st : states) {
    s += "<circle fill=\"#d62728\"";
    detail::svg_attr(s, "cx", st.nominal.x);
    detail::svg_attr(s, "cy", st.nominal.y);
    s += " r=\"3\"/>\n";
  }
  for (const auto& st : states) {
    if (!st.has_vertex) continue;
    s += "<rect fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\"";
    detail::svg_attr(s, "x", st.chosen_vertex.x - 4.0);
    detail::svg_attr(s, "y", st.chosen_vertex.y - 4.0);
    s += " width=\"8\" height=\"8\"/>\n";
  }
  s += "</g>\n</g>\n</svg>\n";
  return s;
}

inline void render_svg(const std::vector<SensorState>& states, const VoronoiDiagram& vd,
                       const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("render_svg: cannot open " + path);
  std::string body = render_svg_string(states, vd, cfg);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("render_svg: write failed for " + path);
}

}  // namespace rrfcov
