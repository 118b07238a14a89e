#ifndef HIERNAV_GRAPH_VIEWPOINT_GRAPH_HPP_
#define HIERNAV_GRAPH_VIEWPOINT_GRAPH_HPP_

#include <cstddef>
#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::graph
{

/// Uniform lattice of candidate viewpoints over the map bounding box.
/// Point (i, j) sits at the centre of the i-th of `columns` equal slices
/// along x and the j-th of `rows` slices along y; its global id is j*columns+i.
struct Lattice
{
  int columns{40};
  int rows{30};

  int size() const {return columns * rows;}
  world::Point position(int lattice_id, const world::GridShape & shape) const;
};

/// Viewpoints as lattice ids plus positions, always sorted by lattice id so
/// that the id-to-node mapping is stable as the belief grows.
struct ViewpointSet
{
  std::vector<int> lattice_ids;
  std::vector<world::Point> positions;

  std::size_t size() const {return positions.size();}
  bool empty() const {return positions.empty();}
  /// Node index holding `lattice_id`, or -1.
  int node_of(int lattice_id) const;
};

/// Lattice points that fall in known-free cells.
ViewpointSet sample_viewpoints(const world::BeliefMap & belief, const Lattice & lattice);

/// Undirected adjacency; every list is sorted ascending with no duplicates.
using Adjacency = std::vector<std::vector<int>>;

/// Each node proposes edges to its k Euclidean-nearest nodes (ties by lower
/// index); proposals survive only with conservative belief line of sight,
/// then the edge set is symmetrised.
Adjacency build_edges(
  const std::vector<world::Point> & nodes, const world::BeliefMap & belief, int k);

struct ViewpointGraph
{
  ViewpointSet nodes;
  Adjacency adjacency;
  int k{20};

  std::size_t size() const {return nodes.size();}
  const world::Point & position(int node) const {return nodes.positions[node];}
  double edge_length(int a, int b) const;
  bool has_edge(int a, int b) const;
  std::size_t edge_count() const;
};

ViewpointGraph build_viewpoint_graph(
  const world::BeliefMap & belief, const Lattice & lattice, int k);

}  // namespace hiernav::graph

#endif  // HIERNAV_GRAPH_VIEWPOINT_GRAPH_HPP_
