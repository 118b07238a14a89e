#include "hiernav/graph/viewpoint_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "hiernav/world/line_of_sight.hpp"

namespace hiernav::graph
{

world::Point Lattice::position(int lattice_id, const world::GridShape & shape) const
{
  const int i = lattice_id % columns;
  const int j = lattice_id / columns;
  return {(i + 0.5) * shape.width_m() / columns, (j + 0.5) * shape.height_m() / rows};
}

int ViewpointSet::node_of(int lattice_id) const
{
  const auto it = std::lower_bound(lattice_ids.begin(), lattice_ids.end(), lattice_id);
  if (it == lattice_ids.end() || *it != lattice_id) {
    return -1;
  }
  return static_cast<int>(it - lattice_ids.begin());
}

ViewpointSet sample_viewpoints(const world::BeliefMap & belief, const Lattice & lattice)
{
  if (lattice.columns < 1 || lattice.rows < 1) {
    throw std::invalid_argument("lattice dimensions must be >= 1");
  }
  ViewpointSet set;
  const world::GridShape & shape = belief.shape();
  for (int id = 0; id < lattice.size(); ++id) {
    const world::Point p = lattice.position(id, shape);
    const world::CellIndex c = shape.cell_at(p);
    if (shape.contains(c) && belief.at(c) == world::Belief::Free) {
      set.lattice_ids.push_back(id);
      set.positions.push_back(p);
    }
  }
  return set;
}

Adjacency build_edges(
  const std::vector<world::Point> & nodes, const world::BeliefMap & belief, int k)
{
  const int n = static_cast<int>(nodes.size());
  Adjacency adjacency(n);
  if (k <= 0 || n < 2) {
    return adjacency;
  }
  std::vector<std::pair<double, int>> candidates;
  candidates.reserve(n);
  for (int i = 0; i < n; ++i) {
    candidates.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        const double dx = nodes[i].x - nodes[j].x;
        const double dy = nodes[i].y - nodes[j].y;
        candidates.emplace_back(dx * dx + dy * dy, j);
      }
    }
    const int take = std::min<int>(k, static_cast<int>(candidates.size()));
    std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end());
    for (int c = 0; c < take; ++c) {
      const int j = candidates[c].second;
      if (world::line_of_sight(nodes[i], nodes[j], belief)) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
    }
  }
  for (auto & list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adjacency;
}

double ViewpointGraph::edge_length(int a, int b) const
{
  return world::distance(position(a), position(b));
}

bool ViewpointGraph::has_edge(int a, int b) const
{
  const auto & list = adjacency[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t ViewpointGraph::edge_count() const
{
  std::size_t twice = 0;
  for (const auto & list : adjacency) {
    twice += list.size();
  }
  return twice / 2;
}

ViewpointGraph build_viewpoint_graph(
  const world::BeliefMap & belief, const Lattice & lattice, int k)
{
  ViewpointGraph graph;
  graph.k = k;
  graph.nodes = sample_viewpoints(belief, lattice);
  graph.adjacency = build_edges(graph.nodes.positions, belief, k);
  return graph;
}

}  // namespace hiernav::graph
