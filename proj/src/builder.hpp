#pragma once

#include <algorithm>
#include <vector>

#include "capcover/graph.hpp"

namespace capcover::detail {

/// Grows a graph where every vertex carries a demand; capacities are
/// deg - demand once the graph is complete.
class Builder {
 public:
  Vertex vertex(int demand = 0) {
    Vertex v = g_.add_vertex(0);
    demand_.push_back(demand);
    owner_.push_back(0);
    return v;
  }

  void edge(Vertex a, Vertex b) { g_.add_edge(a, b); }

  /// `count` pendant vertices on v.
  void leaves(Vertex v, int count, int leaf_demand = 0) {
    for (int i = 0; i < count; ++i) {
      Vertex l = vertex(leaf_demand);
      owner_[l - 1] = v;
      edge(v, l);
    }
  }

  /// The vertex a pendant leaf was attached to, or 0.
  Vertex leaf_owner(Vertex v) const { return owner_[v - 1]; }
  int num_vertices() const { return g_.num_vertices(); }

  CapacitatedGraph finish(int k) {
    for (Vertex v = 1; v <= g_.num_vertices(); ++v)
      g_.set_capacity(v, std::max(0, g_.degree(v) - demand_[v - 1]));
    g_.budget = k;
    return std::move(g_);
  }

 private:
  CapacitatedGraph g_;
  std::vector<int> demand_;
  std::vector<Vertex> owner_;
};

}  // namespace capcover::detail
