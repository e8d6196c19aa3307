#pragma once

// Test-side reference solvers. Deliberately naive and independent of the
// library's flow code.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "capcover/graph.hpp"

namespace testing_support {

using capcover::CapacitatedGraph;
using capcover::Orientation;
using capcover::Vertex;

/// caps empty: capacity = degree.
inline CapacitatedGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<int>& caps = {}) {
  CapacitatedGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  for (Vertex v = 1; v <= n; ++v) g.set_capacity(v, caps.empty() ? g.degree(v) : caps[v - 1]);
  return g;
}

inline int clamp_cap(const CapacitatedGraph& g, Vertex v) {
  int c = g.capacity(v);
  if (c < 0) c = 0;
  if (c > g.degree(v)) c = g.degree(v);
  return c;
}

/// Minimum size over all 2^m orientations.
inline std::optional<int> orientation_min(const CapacitatedGraph& g) {
  const int m = g.num_edges(), n = g.num_vertices();
  std::optional<int> best;
  std::vector<int> in(n + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::fill(in.begin(), in.end(), 0);
    for (int e = 0; e < m; ++e) ++in[(mask >> e & 1) ? g.edge(e).v : g.edge(e).u];
    bool ok = true;
    int size = 0;
    for (Vertex v = 1; v <= n && ok; ++v) {
      ok = in[v] <= clamp_cap(g, v);
      size += in[v] > 0;
    }
    if (ok && (!best || size < *best)) best = size;
  }
  return best;
}

/// Kuhn matching of edges into capacity slots of vertices in S.
inline bool assignable(const CapacitatedGraph& g, std::uint32_t S) {
  const int m = g.num_edges(), n = g.num_vertices();
  std::vector<int> base(n + 2, 0);
  for (Vertex v = 1; v <= n; ++v) base[v + 1] = base[v] + ((S >> (v - 1) & 1) ? clamp_cap(g, v) : 0);
  std::vector<int> owner(base[n + 1], -1);
  std::vector<char> seen;
  std::function<bool(int)> grab = [&](int e) -> bool {
    for (Vertex w : {g.edge(e).u, g.edge(e).v})
      for (int s = base[w]; s < base[w + 1]; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        if (owner[s] < 0 || grab(owner[s])) {
          owner[s] = e;
          return true;
        }
      }
    return false;
  };
  for (int e = 0; e < m; ++e) {
    seen.assign(owner.size(), 0);
    if (!grab(e)) return false;
  }
  return true;
}

/// Minimum |S| over all vertex subsets admitting an assignment (n <= 20).
inline std::optional<int> subset_min(const CapacitatedGraph& g) {
  const int n = g.num_vertices();
  std::optional<int> best;
  for (std::uint32_t S = 0; S < (std::uint32_t{1} << n); ++S) {
    int sz = std::popcount(S);
    if (best && sz >= *best) continue;
    if (assignable(g, S)) best = sz;
  }
  return best;
}

inline bool certificate_ok(const CapacitatedGraph& g, const Orientation& o, int size) {
  if (static_cast<int>(o.head.size()) != g.num_edges()) return false;
  std::vector<int> in(g.num_vertices() + 1, 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    Vertex h = o.head[e];
    if (h != g.edge(e).u && h != g.edge(e).v) return false;
    ++in[h];
  }
  int s = 0;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (in[v] > clamp_cap(g, v)) return false;
    s += in[v] > 0;
  }
  return s == size;
}

}  // namespace testing_support
