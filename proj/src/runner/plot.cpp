#include "hiernav/runner/plot.hpp"

#include <cstdio>
#include <stdexcept>

namespace hiernav::runner
{

namespace
{

enum class Shade { Unknown, Free, Occupied };

const char * fill(Shade s)
{
  switch (s) {
    case Shade::Free: return "#ffffff";
    case Shade::Occupied: return "#202020";
    case Shade::Unknown: return "#b8b8b8";
  }
  return "#ff00ff";
}

std::string format(const char * fmt, double a, double b)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

}  // namespace

PlotInput plot_input(const EpisodeResult & episode, const world::GroundTruthMap & truth, bool with_target)
{
  PlotInput in;
  in.shape = truth.shape();
  in.belief = episode.belief;
  in.trajectory.push_back(episode.start_pose);
  for (const StepRecord & r : episode.records) {
    in.trajectory.push_back(r.pose);
  }
  in.beacons = episode.beacons;
  if (with_target && truth.target()) {
    in.target = truth.shape().center(*truth.target());
  }
  return in;
}

std::string emit_plot(const PlotInput & in, int ppc)
{
  if (in.trajectory.empty()) {
    throw std::invalid_argument("emit_plot: trajectory needs at least the start pose");
  }
  const world::GridShape & shape = in.shape;
  const double scale = ppc / shape.cell_size;  // pixels per meter
  const int width = shape.width * ppc;
  const int height = shape.height * ppc;
  auto shade = [&](int x, int y) {
      const world::CellIndex c{x, y};
      if (in.belief) {
        switch (in.belief->at(c)) {
          case world::Belief::Free: return Shade::Free;
          case world::Belief::Occupied: return Shade::Occupied;
          case world::Belief::Unknown: return Shade::Unknown;
        }
      }
      if (in.truth) {
        return (*in.truth)[shape.index(c)] == world::Cell::Occupied ? Shade::Occupied : Shade::Free;
      }
      return Shade::Unknown;
    };

  std::string svg;
  char buf[256];
  std::snprintf(
    buf, sizeof(buf),
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
    width, height, width, height);
  svg += buf;
  std::snprintf(buf, sizeof(buf), "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"%s\"/>\n", width, height, fill(Shade::Unknown));
  svg += buf;
  for (int y = 0; y < shape.height; ++y) {
    int x = 0;
    while (x < shape.width) {
      const Shade s = shade(x, y);
      int end = x + 1;
      while (end < shape.width && shade(end, y) == s) {
        ++end;
      }
      if (s != Shade::Unknown) {
        std::snprintf(
          buf, sizeof(buf), "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"%s\"/>\n",
          x * ppc, y * ppc, (end - x) * ppc, ppc, fill(s));
        svg += buf;
      }
      x = end;
    }
  }
  if (in.trajectory.size() > 1) {
    svg += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < in.trajectory.size(); ++i) {
      if (i > 0) {
        svg += ' ';
      }
      svg += format("%.2f,%.2f", in.trajectory[i].x * scale, in.trajectory[i].y * scale);
    }
    svg += "\"/>\n";
  }
  for (const world::Point & b : in.beacons) {
    svg += "<circle cx=\"" + format("%.2f\" cy=\"%.2f", b.x * scale, b.y * scale) +
      "\" r=\"3\" fill=\"#e08000\"/>\n";
  }
  const world::Point & start = in.trajectory.front();
  svg += "<circle cx=\"" + format("%.2f\" cy=\"%.2f", start.x * scale, start.y * scale) +
    "\" r=\"5\" fill=\"#20a020\" stroke=\"#000000\"/>\n";
  if (in.target) {
    svg += "<rect x=\"" + format("%.2f\" y=\"%.2f", in.target->x * scale - 5, in.target->y * scale - 5) +
      "\" width=\"10\" height=\"10\" fill=\"#d02020\" stroke=\"#000000\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hiernav::runner
