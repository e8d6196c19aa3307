#include "capcover/fes.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace capcover {

std::vector<int> feedback_edge_set(const CapacitatedGraph& g) {
  const int n = g.num_vertices();
  std::vector<char> seen(n + 1, 0), tree(g.num_edges(), 0);
  for (Vertex s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (int e : g.incident(v)) {
        Vertex w = g.edge(e).other(v);
        if (seen[w]) continue;
        seen[w] = 1;
        tree[e] = 1;
        q.push(w);
      }
    }
  }
  std::vector<int> out;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!tree[e]) out.push_back(e);
  return out;
}

std::vector<int> preloads(const CapacitatedGraph& g, const ForestInstance& fi) {
  std::vector<int> p(g.num_vertices() + 1, 0);
  for (auto [e, h] : fi.forced) {
    if (h != g.edge(e).u && h != g.edge(e).v)
      throw StructuralError("forced head " + std::to_string(h) + " is not an endpoint of its edge");
    ++p[h];
  }
  return p;
}

ChildSelection select_children(std::span<const ChildOption> children, int room, bool already_in) {
  ChildSelection out;
  if (room < 0) return out;
  const int c = static_cast<int>(children.size());
  std::vector<char> pick(c, 0);
  std::vector<std::pair<long long, int>> flex;
  long long base = 0;
  int forced_in = 0;
  for (int i = 0; i < c; ++i) {
    const auto& ch = children[i];
    bool tp_ok = ch.toward_parent < kForestInf, aw_ok = ch.away < kForestInf;
    if (!tp_ok && !aw_ok) return out;
    if (!aw_ok) {
      base += ch.toward_parent;
      pick[i] = 1;
      ++forced_in;
    } else {
      base += ch.away;
      if (tp_ok) flex.push_back({ch.toward_parent - ch.away, i});
    }
  }
  if (forced_in > room) return out;
  std::sort(flex.begin(), flex.end());
  const int most = std::min<int>(static_cast<int>(flex.size()), room - forced_in);
  long long run = base, best = kForestInf;
  int best_t = 0;
  for (int t = 0; t <= most; ++t) {
    if (t > 0) run += flex[t - 1].first;
    long long cost = run + ((forced_in + t > 0 || already_in) ? 1 : 0);
    if (cost < best) {
      best = cost;
      best_t = t;
    }
  }
  for (int t = 0; t < best_t; ++t) pick[flex[t].second] = 1;
  out.cost = best;
  out.toward_parent = std::move(pick);
  return out;
}

namespace {

/// Rooted structure of a fixed forest, reused across preload vectors.
class ForestSolver {
 public:
  ForestSolver(const CapacitatedGraph& g, std::span<const int> forest_edges) : g_(g) {
    const int n = g.num_vertices();
    std::vector<std::vector<int>> adj(n + 1);
    for (int e : forest_edges) {
      adj[g.edge(e).u].push_back(e);
      adj[g.edge(e).v].push_back(e);
    }
    parent_edge_.assign(n + 1, -1);
    children_.assign(n + 1, {});
    std::vector<char> seen(n + 1, 0);
    for (Vertex r = 1; r <= n; ++r) {
      if (seen[r]) continue;
      roots_.push_back(r);
      seen[r] = 1;
      std::size_t head = order_.size();
      order_.push_back(r);
      while (head < order_.size()) {
        Vertex v = order_[head++];
        for (int e : adj[v]) {
          if (e == parent_edge_[v]) continue;
          Vertex w = g.edge(e).other(v);
          if (seen[w]) throw StructuralError("forest edges contain a cycle");
          seen[w] = 1;
          parent_edge_[w] = e;
          children_[v].push_back({w, e});
          order_.push_back(w);
        }
      }
    }
    f_[0].assign(n + 1, 0);
    f_[1].assign(n + 1, 0);
  }

  /// Minimum size, or kForestInf.
  long long solve(const std::vector<int>& preload) {
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      Vertex v = *it;
      fill_options(v);
      for (int pin = 0; pin < 2; ++pin) {
        if (pin == 1 && parent_edge_[v] < 0) {
          f_[1][v] = kForestInf;
          continue;
        }
        f_[pin][v] = select_children(options_, g_.capacity(v) - preload[v] - pin,
                                     preload[v] > 0 || pin == 1)
                         .cost;
      }
    }
    long long total = 0;
    for (Vertex r : roots_) {
      if (f_[0][r] >= kForestInf) return kForestInf;
      total += f_[0][r];
    }
    return total;
  }

  /// Writes forest heads for the optimum of the last solve() call.
  void orient(const std::vector<int>& preload, Orientation& o) {
    std::vector<char> pin(g_.num_vertices() + 1, 0);
    for (Vertex v : order_) {
      fill_options(v);
      auto sel = select_children(options_, g_.capacity(v) - preload[v] - pin[v], preload[v] > 0 || pin[v]);
      const auto& ch = children_[v];
      for (std::size_t i = 0; i < ch.size(); ++i) {
        Vertex c = ch[i].first;
        if (sel.toward_parent[i]) {
          o.head[ch[i].second] = v;
        } else {
          o.head[ch[i].second] = c;
          pin[c] = 1;
        }
      }
    }
  }

 private:
  void fill_options(Vertex v) {
    options_.clear();
    for (auto [c, e] : children_[v]) options_.push_back({f_[0][c], f_[1][c]});
  }

  const CapacitatedGraph& g_;
  std::vector<Vertex> roots_, order_;
  std::vector<int> parent_edge_;
  std::vector<std::vector<std::pair<Vertex, int>>> children_;
  std::vector<long long> f_[2];
  std::vector<ChildOption> options_;
};

}  // namespace

SolveResult forest_dp(const CapacitatedGraph& g, const ForestInstance& fi) {
  std::vector<int> role(g.num_edges(), 0);
  for (int e : fi.forest_edges) {
    if (e < 0 || e >= g.num_edges() || role[e]) throw StructuralError("bad forest edge list");
    role[e] = 1;
  }
  for (auto [e, h] : fi.forced) {
    if (e < 0 || e >= g.num_edges() || role[e]) throw StructuralError("forced arcs overlap the forest");
    role[e] = 2;
  }
  for (int r : role)
    if (!r) throw StructuralError("forced arcs do not cover the non-forest edges");

  auto p = preloads(g, fi);
  ForestSolver solver(g, fi.forest_edges);
  long long best = solver.solve(p);
  if (best >= kForestInf) return {};
  Orientation o;
  o.head.assign(g.num_edges(), 0);
  for (auto [e, h] : fi.forced) o.head[e] = h;
  solver.orient(p, o);
  return {static_cast<int>(best), std::move(o)};
}

SolveResult solve_fes(const CapacitatedGraph& input, int cap, FesStats* stats) {
  const CapacitatedGraph g = normalize_capacities(input);
  const auto fes = feedback_edge_set(g);
  if (static_cast<int>(fes.size()) > cap)
    throw CapExceeded("feedback edge set of size " + std::to_string(fes.size()) + " exceeds cap " +
                      std::to_string(cap));
  FesStats local;
  FesStats& st = stats ? *stats : local;
  st = FesStats{};
  st.fes = static_cast<int>(fes.size());

  std::vector<char> in_fes(g.num_edges(), 0);
  for (int e : fes) in_fes[e] = 1;
  std::vector<int> forest;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in_fes[e]) forest.push_back(e);
  ForestSolver solver(g, forest);

  std::vector<int> preload(g.num_vertices() + 1, 0);
  std::vector<Vertex> heads(fes.size(), 0), best_heads;
  long long best = kForestInf;
  int positive = 0;

  // heads of feedback edges by DFS; preloaded vertices already count toward the size
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (positive >= best) return;
    if (i == fes.size()) {
      ++st.assignments;
      long long val = solver.solve(preload);
      if (val < best) {
        best = val;
        best_heads = heads;
      }
      return;
    }
    const Edge& e = g.edge(fes[i]);
    for (Vertex h : {e.u, e.v}) {
      if (preload[h] + 1 > g.capacity(h)) continue;
      if (preload[h]++ == 0) ++positive;
      heads[i] = h;
      self(self, i + 1);
      if (--preload[h] == 0) --positive;
    }
  };
  dfs(dfs, 0);
  if (best >= kForestInf) return {};

  std::fill(preload.begin(), preload.end(), 0);
  Orientation o;
  o.head.assign(g.num_edges(), 0);
  for (std::size_t i = 0; i < fes.size(); ++i) {
    o.head[fes[i]] = best_heads[i];
    ++preload[best_heads[i]];
  }
  solver.solve(preload);
  solver.orient(preload, o);
  return {static_cast<int>(best), std::move(o)};
}

}  // namespace capcover
