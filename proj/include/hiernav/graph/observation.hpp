#ifndef HIERNAV_GRAPH_OBSERVATION_HPP_
#define HIERNAV_GRAPH_OBSERVATION_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "hiernav/graph/planning_set.hpp"
#include "hiernav/graph/viewpoint_graph.hpp"

namespace hiernav::graph
{

/// 1 = masked (no attention), 0 = attend.
using EdgeMask = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kExplorationFeatures = 5;
inline constexpr int kNavigationFeatures = 8;

class ObservationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Network input assembled from the viewpoint graph and planning set.
///
/// Feature columns per node: relative position to the robot scaled by the
/// map diagonal (2), normalised utility (1), visited flag (1), beacon flag (1);
/// in navigation mode also the target offset from the node scaled by the
/// diagonal (2) and its norm (1).
struct Observation
{
  Eigen::MatrixXd features;
  Adjacency adjacency;
  int current{-1};
  std::vector<int> beacons;    ///< node indices, ascending
  std::vector<int> neighbors;  ///< node indices adjacent to `current`, ascending

  int node_count() const {return static_cast<int>(features.rows());}
  int feature_dim() const {return static_cast<int>(features.cols());}
  /// Encoder mask: M(i, j) = 0 iff i == j or (i, j) is an edge.
  EdgeMask edge_mask() const;
};

Observation assemble_observation(
  const ViewpointGraph & graph, const PlanningSet & planning, const world::Point & pose,
  const std::optional<world::Point> & target, const world::GridShape & shape);

/// Node whose position coincides with `pose`, or -1.
int node_at(const ViewpointGraph & graph, const world::Point & pose);

/// One JSON-lines debug record: {"step", "nodes":[[x,y],...],
/// "edges":[[i,j],...] (i<j), "utility":[...], "beacons":[...],
/// "visited":[...], "current"}.
nlohmann::json debug_record(
  int step, const ViewpointGraph & graph, const PlanningSet & planning, int current);

}  // namespace hiernav::graph

#endif  // HIERNAV_GRAPH_OBSERVATION_HPP_
