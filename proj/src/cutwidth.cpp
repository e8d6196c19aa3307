#include "capcover/cutwidth.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "text.hpp"

namespace capcover {

LinearArrangement::LinearArrangement(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = size();
  pos_.assign(n + 1, 0);
  for (int p = 0; p < n; ++p) {
    Vertex v = order_[p];
    if (v < 1 || v > n || pos_[v] != 0)
      throw StructuralError("arrangement is not a permutation of 1.." + std::to_string(n));
    pos_[v] = p + 1;
  }
}

LinearArrangement LinearArrangement::identity(int n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  return LinearArrangement(std::move(order));
}

LinearArrangement parse_arrangement(std::string_view body) {
  auto lines = text::tokenize(body);
  if (lines.empty() || lines[0].tokens[0] != "arrangement" || lines[0].tokens.size() != 2)
    throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'arrangement <n>'");
  long long n = text::to_int(lines[0].tokens[1], lines[0].number);
  std::vector<Vertex> order;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (auto tok : lines[i].tokens)
      order.push_back(static_cast<Vertex>(text::to_int(tok, lines[i].number)));
  if (static_cast<long long>(order.size()) != n)
    throw ParseError(0, "arrangement declares " + std::to_string(n) + " vertices, found " +
                            std::to_string(order.size()));
  return LinearArrangement(std::move(order));
}

std::string format_arrangement(const LinearArrangement& pi) {
  std::ostringstream os;
  os << "arrangement " << pi.size() << '\n';
  for (int p = 1; p <= pi.size(); ++p) os << pi.at(p) << (p == pi.size() ? '\n' : ' ');
  return os.str();
}

namespace {

void check_arrangement(const CapacitatedGraph& g, const LinearArrangement& pi) {
  if (pi.size() != g.num_vertices())
    throw StructuralError("arrangement has " + std::to_string(pi.size()) +
                          " vertices but the graph has " + std::to_string(g.num_vertices()));
}

}  // namespace

std::vector<int> cut_edges(const CapacitatedGraph& g, const LinearArrangement& pi, int i) {
  check_arrangement(g, pi);
  std::vector<std::pair<std::pair<int, int>, int>> keyed;
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = pi.position(g.edge(e).u), b = pi.position(g.edge(e).v);
    if (a > b) std::swap(a, b);
    if (a <= i && i < b) keyed.push_back({{a, b}, e});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

int cutwidth_of(const CapacitatedGraph& g, const LinearArrangement& pi) {
  check_arrangement(g, pi);
  const int n = g.num_vertices();
  // difference array over cut indices
  std::vector<int> diff(n + 2, 0);
  for (const Edge& e : g.edges()) {
    int a = pi.position(e.u), b = pi.position(e.v);
    if (a > b) std::swap(a, b);
    ++diff[a];
    --diff[b];
  }
  int best = 0, run = 0;
  for (int i = 0; i <= n; ++i) {
    run += diff[i];
    best = std::max(best, run);
  }
  return best;
}

DpLayer initial_layer() {
  DpLayer layer;
  layer.cut_index = 0;
  layer.table = {DpValue::of(0)};
  layer.predecessor = {0};
  return layer;
}

DpLayer process_layer(const DpLayer& prev, const CapacitatedGraph& g, const LinearArrangement& pi,
                      int i, LayerStats* stats) {
  const Vertex v = pi.at(i);
  const int capacity = g.capacity(v);

  DpLayer next;
  next.cut_index = i;
  next.edges = cut_edges(g, pi, i);
  if (next.edges.size() > static_cast<std::size_t>(kMaxDpCutwidth))
    throw CapExceeded("cut of size " + std::to_string(next.edges.size()) + " exceeds DP cap");

  auto touches_v = [&](int e) { return g.edge(e).u == v || g.edge(e).v == v; };

  // Bit positions of C, L (in prev) and C, R (in next). C keeps its relative
  // order in both layers because both use the same canonical key.
  std::vector<int> c_prev, c_next, l_prev, r_next;
  for (int b = 0; b < static_cast<int>(prev.edges.size()); ++b)
    (touches_v(prev.edges[b]) ? l_prev : c_prev).push_back(b);
  for (int b = 0; b < static_cast<int>(next.edges.size()); ++b)
    (touches_v(next.edges[b]) ? r_next : c_next).push_back(b);

  const int nc = static_cast<int>(c_prev.size());
  const int nl = static_cast<int>(l_prev.size());
  const int nr = static_cast<int>(r_next.size());

  auto scatter_table = [](const std::vector<int>& bits) {
    std::vector<std::uint32_t> out(std::size_t{1} << bits.size(), 0);
    for (std::size_t x = 1; x < out.size(); ++x) {
      int low = std::countr_zero(x);
      out[x] = out[x & (x - 1)] | (std::uint32_t{1} << bits[low]);
    }
    return out;
  };
  const auto l_scatter = scatter_table(l_prev);
  const auto r_scatter = scatter_table(r_next);

  next.table.assign(std::size_t{1} << next.edges.size(), DpValue::unreachable());
  next.predecessor.assign(next.table.size(), 0);

  std::vector<DpValue> bucket(nl + 1);
  std::vector<std::uint32_t> bucket_pred(nl + 1);
  std::uint64_t work = 0;

  for (std::uint32_t tau = 0; tau < (std::uint32_t{1} << nc); ++tau) {
    std::uint32_t tau_prev = 0, tau_next = 0;
    for (int c = 0; c < nc; ++c)
      if (tau >> c & 1) {
        tau_prev |= std::uint32_t{1} << c_prev[c];
        tau_next |= std::uint32_t{1} << c_next[c];
      }

    std::fill(bucket.begin(), bucket.end(), DpValue::unreachable());
    // l increases => scattered predecessor index increases, so the first
    // minimum seen is the smallest predecessor signature.
    for (std::uint32_t l = 0; l < l_scatter.size(); ++l) {
      ++work;
      std::uint32_t sig = tau_prev | l_scatter[l];
      DpValue val = prev.table[sig];
      if (!val.reachable()) continue;
      int t = std::popcount(l);  // left edges oriented into v
      if (!bucket[t].reachable() || val.value() < bucket[t].value()) {
        bucket[t] = val;
        bucket_pred[t] = sig;
      }
    }

    for (std::uint32_t r = 0; r < r_scatter.size(); ++r) {
      std::uint32_t sig = tau_next | r_scatter[r];
      int b = nr - std::popcount(r);  // right edges oriented into v
      DpValue best = DpValue::unreachable();
      std::uint32_t best_pred = 0;
      for (int t = 0; t <= nl; ++t) {
        ++work;
        if (t + b > capacity) break;
        if (!bucket[t].reachable()) continue;
        int cand = bucket[t].value() + (t + b > 0 ? 1 : 0);
        if (!best.reachable() || cand < best.value() ||
            (cand == best.value() && bucket_pred[t] < best_pred)) {
          best = DpValue::of(cand);
          best_pred = bucket_pred[t];
        }
      }
      next.table[sig] = best;
      next.predecessor[sig] = best_pred;
    }
  }

  if (stats) {
    stats->cut_index = i;
    stats->prev_cut_size = static_cast<int>(prev.edges.size());
    stats->cut_size = static_cast<int>(next.edges.size());
    stats->table_size = next.table.size();
    stats->work = work;
  }
  return next;
}

CutDpResult solve_cutdp(const CapacitatedGraph& input, const LinearArrangement& pi) {
  check_arrangement(input, pi);
  const CapacitatedGraph g = normalize_capacities(input);
  const int n = g.num_vertices();
  if (n >= 0xFFFF) throw CapExceeded("cut DP supports fewer than 65535 vertices");
  if (cutwidth_of(g, pi) > kMaxDpCutwidth)
    throw CapExceeded("arrangement cutwidth exceeds DP cap " + std::to_string(kMaxDpCutwidth));

  CutDpResult result;
  std::vector<DpLayer> layers;
  layers.reserve(n + 1);
  layers.push_back(initial_layer());
  for (int i = 1; i <= n; ++i) {
    LayerStats st;
    layers.push_back(process_layer(layers.back(), g, pi, i, &st));
    result.layers.push_back(st);
  }

  const DpValue final_value = layers[n].table[0];
  if (!final_value.reachable()) return result;
  result.min_size = final_value.value();

  std::vector<std::uint32_t> sig(n + 1, 0);
  for (int i = n; i >= 1; --i) sig[i - 1] = layers[i].predecessor[sig[i]];

  Orientation o;
  o.head.assign(g.num_edges(), 0);
  for (int i = 1; i <= n; ++i) {
    const Vertex v = pi.at(i);
    const auto& edges = layers[i].edges;
    for (int b = 0; b < static_cast<int>(edges.size()); ++b) {
      const Edge& e = g.edge(edges[b]);
      if (e.u != v && e.v != v) continue;
      Vertex right = e.other(v);
      o.head[edges[b]] = (sig[i] >> b & 1) ? right : v;
    }
  }
  result.certificate = std::move(o);
  result.traced_signatures = std::move(sig);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

LinearArrangement exact_arrangement(const CapacitatedGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return LinearArrangement();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u - 1] |= std::uint32_t{1} << (e.v - 1);
    adj[e.v - 1] |= std::uint32_t{1} << (e.u - 1);
  }
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  std::vector<int> cut(std::size_t{full} + 1, 0), best(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int v = std::countr_zero(s);
    std::uint32_t rest = s & (s - 1);
    cut[s] = cut[rest] + std::popcount(adj[v]) - 2 * std::popcount(adj[v] & rest);
    int inner = INT32_MAX;
    for (std::uint32_t t = s; t; t &= t - 1) {
      int w = std::countr_zero(t);
      inner = std::min(inner, best[s & ~(std::uint32_t{1} << w)]);
    }
    best[s] = std::max(cut[s], inner);
  }
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (int p = n - 1; p >= 0; --p) {
    for (std::uint32_t t = s; t; t &= t - 1) {
      int w = std::countr_zero(t);
      std::uint32_t rest = s & ~(std::uint32_t{1} << w);
      if (std::max(cut[s], best[rest]) == best[s]) {
        order[p] = w + 1;
        s = rest;
        break;
      }
    }
  }
  return LinearArrangement(std::move(order));
}

// (max cut, sum of cuts) for an order
std::pair<int, long long> cut_profile(const CapacitatedGraph& g, const std::vector<Vertex>& order,
                                      std::vector<int>& pos) {
  const int n = static_cast<int>(order.size());
  for (int p = 0; p < n; ++p) pos[order[p]] = p + 1;
  std::vector<int> diff(n + 2, 0);
  for (const Edge& e : g.edges()) {
    int a = pos[e.u], b = pos[e.v];
    if (a > b) std::swap(a, b);
    ++diff[a];
    --diff[b];
  }
  int mx = 0, run = 0;
  long long sum = 0;
  for (int i = 0; i <= n; ++i) {
    run += diff[i];
    mx = std::max(mx, run);
    sum += run;
  }
  return {mx, sum};
}

LinearArrangement heuristic_arrangement(const CapacitatedGraph& g) {
  const int n = g.num_vertices();
  std::vector<char> placed(n + 1, 0);
  std::vector<int> inside(n + 1, 0);  // neighbors already placed
  std::vector<Vertex> order;
  order.reserve(n);
  int cut = 0;
  for (int step = 0; step < n; ++step) {
    Vertex pick = 0;
    int pick_cut = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (placed[v]) continue;
      int c = cut + g.degree(v) - 2 * inside[v];
      if (pick == 0 || c < pick_cut || (c == pick_cut && inside[v] > inside[pick])) {
        pick = v;
        pick_cut = c;
      }
    }
    placed[pick] = 1;
    cut = pick_cut;
    order.push_back(pick);
    for (int e : g.incident(pick)) ++inside[g.edge(e).other(pick)];
  }

  std::vector<int> pos(n + 1, 0);
  auto score = cut_profile(g, order, pos);
  for (int round = 0; round < 4 * n + 4; ++round) {
    bool improved = false;
    for (int p = 0; p + 1 < n; ++p) {
      std::swap(order[p], order[p + 1]);
      auto s = cut_profile(g, order, pos);
      if (s < score) {
        score = s;
        improved = true;
      } else {
        std::swap(order[p], order[p + 1]);
      }
    }
    if (!improved) break;
  }
  return LinearArrangement(std::move(order));
}

}  // namespace

LinearArrangement find_arrangement(const CapacitatedGraph& g, ArrangementMode mode, int exact_cap) {
  if (mode == ArrangementMode::heuristic) return heuristic_arrangement(g);
  if (g.num_vertices() > std::min(exact_cap, 26))
    throw CapExceeded("exact arrangement refuses " + std::to_string(g.num_vertices()) +
                      " vertices (cap " + std::to_string(exact_cap) + ")");
  return exact_arrangement(g);
}

}  // namespace capcover
