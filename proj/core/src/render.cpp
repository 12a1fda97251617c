#include "rrdt/render.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace rrdt {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string point(std::span<const double> q) { return num(q[0]) + "," + num(q[1]); }

}  // namespace

std::string render_svg(const Environment& env, const GraphSnapshot& graph, const std::optional<Path>& path,
                       std::span<const Configuration> arms) {
  if (env.dimension() != 2) throw std::invalid_argument("SVG rendering needs a 2-D environment");
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(env.extent(0)) + "\" height=\"" +
         num(env.extent(1)) + "\" viewBox=\"" + num(env.lower(0)) + " " + num(env.lower(1)) + " " +
         num(env.extent(0)) + " " + num(env.extent(1)) + "\">\n";
  out += "<rect x=\"" + num(env.lower(0)) + "\" y=\"" + num(env.lower(1)) + "\" width=\"" + num(env.extent(0)) +
         "\" height=\"" + num(env.extent(1)) + "\" fill=\"#ffffff\"/>\n";

  out += "<g class=\"obstacles\" fill=\"#303030\">\n";
  const std::size_t nx = env.cell_count(0), ny = env.cell_count(1);
  const double cx = env.cell_size(0), cy = env.cell_size(1);
  for (std::size_t y = 0; y < ny; ++y) {
    std::size_t x = 0;
    while (x < nx) {
      if (!env.cell_occupied(y * nx + x)) {
        ++x;
        continue;
      }
      const std::size_t start = x;
      while (x < nx && env.cell_occupied(y * nx + x)) ++x;
      out += "<rect class=\"obstacle\" x=\"" + num(env.lower(0) + static_cast<double>(start) * cx) + "\" y=\"" +
             num(env.lower(1) + static_cast<double>(y) * cy) + "\" width=\"" +
             num(static_cast<double>(x - start) * cx) + "\" height=\"" + num(cy) + "\"/>\n";
    }
  }
  out += "</g>\n";

  if (graph.dimension != 0 && graph.dimension != 2) throw std::invalid_argument("graph is not 2-D");
  out += "<g class=\"edges\" fill=\"none\" stroke-width=\"0.6\">\n";
  for (const auto& [a, b] : graph.edges) {
    const char* colour = kPalette[graph.group.at(b) % kPalette.size()];
    out += "<polyline class=\"edge\" stroke=\"" + std::string(colour) + "\" points=\"" + point(graph.point(a)) + " " +
           point(graph.point(b)) + "\"/>\n";
  }
  out += "</g>\n";

  if (path && !path->waypoints.empty()) {
    out += "<polyline class=\"path\" fill=\"none\" stroke=\"#e00000\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < path->waypoints.size(); ++i) {
      if (i) out += ' ';
      out += point(path->waypoints[i]);
    }
    out += "\"/>\n";
  }

  for (const auto& arm : arms)
    out += "<circle class=\"arm\" cx=\"" + num(arm[0]) + "\" cy=\"" + num(arm[1]) +
           "\" r=\"3\" fill=\"#ffd700\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace rrdt
