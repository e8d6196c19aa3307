#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "capcover/graph.hpp"
#include "capcover/oracle.hpp"

namespace capcover {

/// Edges outside the BFS spanning forest grown from the smallest unvisited id,
/// neighbors in edge-index order. Size m - n + #components.
std::vector<int> feedback_edge_set(const CapacitatedGraph& g);

/// Forest part plus the heads already fixed for every other edge.
struct ForestInstance {
  std::vector<int> forest_edges;
  std::vector<std::pair<int, Vertex>> forced;  // (edge, head)
};

/// p(v): in-degree committed by forced arcs.
std::vector<int> preloads(const CapacitatedGraph& g, const ForestInstance& fi);

inline constexpr long long kForestInf = std::numeric_limits<long long>::max() / 4;

struct ChildOption {
  long long toward_parent;  // child's subtree cost when the edge points at the parent
  long long away;           // ... when it points at the child
};

struct ChildSelection {
  long long cost = kForestInf;  // includes [indeg(v) > 0]
  std::vector<char> toward_parent;
};

/// Picks which child edges enter v given `room` = c(v) - p(v) - [parent arc in].
/// `already_in` says v has in-degree from its preload or parent arc. Children
/// forced either way are taken as such; flexible ones are ranked by
/// toward_parent - away and a prefix of that order is taken.
ChildSelection select_children(std::span<const ChildOption> children, int room, bool already_in);

/// Exact minimum of the forest instance on a graph whose capacities are
/// already normalized. Throws StructuralError if the forest has a cycle or the
/// forced arcs do not cover exactly the remaining edges.
SolveResult forest_dp(const CapacitatedGraph& g, const ForestInstance& fi);

inline constexpr int kDefaultFesCap = 22;

struct FesStats {
  int fes = 0;
  std::uint64_t assignments = 0;  // forest instances actually solved
};

/// Minimum over all head assignments of the feedback edges of forest_dp.
SolveResult solve_fes(const CapacitatedGraph& g, int cap = kDefaultFesCap, FesStats* stats = nullptr);

}  // namespace capcover
