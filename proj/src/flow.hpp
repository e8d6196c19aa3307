#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace capcover::detail {

/// Dinic max flow on small integral networks.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  int add_arc(int from, int to, int cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[from].push_back(id);
    arcs_.push_back({from, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  int flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

  int run(int s, int t) {
    int total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (int f = dfs(s, t, std::numeric_limits<int>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int id : adj_[x]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[x] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int x, int t, int pushed) {
    if (x == t) return pushed;
    for (int& i = it_[x]; i < static_cast<int>(adj_[x].size()); ++i) {
      int id = adj_[x][i];
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[x] + 1) continue;
      if (int f = dfs(a.to, t, std::min(pushed, a.cap))) {
        a.cap -= f;
        arcs_[id ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace capcover::detail
