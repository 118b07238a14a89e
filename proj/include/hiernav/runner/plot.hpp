#ifndef HIERNAV_RUNNER_PLOT_HPP_
#define HIERNAV_RUNNER_PLOT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hiernav/runner/episode.hpp"

namespace hiernav::runner
{

/// What a trajectory plot shows. Cells are drawn from `belief` when given,
/// otherwise from `truth`.
struct PlotInput
{
  world::GridShape shape;
  std::optional<world::BeliefMap> belief;
  std::optional<std::vector<world::Cell>> truth;
  std::vector<world::Point> trajectory;  ///< start pose followed by one pose per step
  std::vector<world::Point> beacons;
  std::optional<world::Point> target;
};

PlotInput plot_input(const EpisodeResult & episode, const world::GroundTruthMap & truth, bool with_target);

/// SVG drawing: cell raster (row runs), trajectory polyline, beacon markers,
/// start and target glyphs. The output depends only on the input.
std::string emit_plot(const PlotInput & input, int pixels_per_cell = 10);

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_PLOT_HPP_
