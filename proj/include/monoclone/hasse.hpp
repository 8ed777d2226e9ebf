#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace monoclone {

using Edge = std::pair<std::size_t, std::size_t>;

/// Nodes of a finite lattice with its covering relation; (i, j) in edges
/// means node i is covered by node j.
template <class Node>
struct HasseDiagram {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::size_t bottom = 0;
  std::size_t top = 0;
};

/// Covering pairs of the partial order leq (reflexive, antisymmetric,
/// transitive), sorted.
std::vector<Edge> covering_edges(const std::vector<std::vector<bool>>& leq);

}  // namespace monoclone
