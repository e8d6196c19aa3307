#include "capcover/vertex_integrity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "text.hpp"

namespace capcover {

std::vector<std::vector<Vertex>> components_without(const CapacitatedGraph& g,
                                                    const std::vector<char>& removed) {
  const int n = g.num_vertices();
  std::vector<char> seen(n + 1, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (removed[s] || seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int e : g.incident(v)) {
        Vertex w = g.edge(e).other(v);
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::vector<char> mask_of(const CapacitatedGraph& g, std::span<const Vertex> U) {
  std::vector<char> m(g.num_vertices() + 1, 0);
  for (Vertex u : U) {
    if (!g.has_vertex(u)) throw StructuralError("modulator names unknown vertex " + std::to_string(u));
    if (m[u]) throw StructuralError("modulator lists vertex " + std::to_string(u) + " twice");
    m[u] = 1;
  }
  return m;
}

int largest_component(const CapacitatedGraph& g, const std::vector<char>& removed) {
  std::size_t best = 0;
  for (const auto& c : components_without(g, removed)) best = std::max(best, c.size());
  return static_cast<int>(best);
}

template <class F>
bool for_each_combination(int n, int size, F&& f) {
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(idx)) return false;
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Modulator modulator_from(const CapacitatedGraph& g, std::vector<Vertex> U) {
  std::sort(U.begin(), U.end());
  auto removed = mask_of(g, U);
  Modulator m;
  m.vi = static_cast<int>(U.size()) + largest_component(g, removed);
  m.vertices = std::move(U);
  return m;
}

Modulator compute_modulator(const CapacitatedGraph& g, int cap) {
  const int n = g.num_vertices();
  if (n > cap)
    throw CapExceeded("modulator search refuses " + std::to_string(n) + " vertices (cap " +
                      std::to_string(cap) + ")");
  if (n == 0) return {};
  std::vector<char> removed(n + 1, 0);
  for (int vi = 1; vi <= n; ++vi) {
    for (int s = 0; s < vi; ++s) {
      std::optional<Modulator> hit;
      for_each_combination(n, s, [&](const std::vector<int>& idx) {
        std::fill(removed.begin(), removed.end(), 0);
        for (int i : idx) removed[i + 1] = 1;
        if (largest_component(g, removed) <= vi - s) {
          Modulator m{{}, vi};
          for (int i : idx) m.vertices.push_back(i + 1);
          hit = std::move(m);
          return false;
        }
        return true;
      });
      if (hit) return *hit;
    }
  }
  return {{}, n};  // unreachable: U = {} always works at vi = n
}

Modulator choose_work_modulator(const CapacitatedGraph& g, int cap) {
  const int n = g.num_vertices();
  if (n > cap)
    throw CapExceeded("modulator search refuses " + std::to_string(n) + " vertices (cap " +
                      std::to_string(cap) + ")");
  std::vector<char> removed(n + 1, 0);
  double best_cost = 0;
  std::vector<Vertex> best;
  bool have = false;
  for (int s = 0; s <= n; ++s) {
    for_each_combination(n, s, [&](const std::vector<int>& idx) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : idx) removed[i + 1] = 1;
      int inner = 0;
      for (const Edge& e : g.edges())
        if (removed[e.u] && removed[e.v]) ++inner;
      long double sum = 0;
      for (const auto& comp : components_without(g, removed)) {
        int f = 0;
        for (Vertex v : comp)
          for (int e : g.incident(v)) {
            Vertex w = g.edge(e).other(v);
            // count each internal edge once, every edge to U once
            if (removed[w] || v < w) ++f;
          }
        sum += std::ldexp(1.0L, f);
      }
      double cost = s + inner + static_cast<double>(std::log2(std::max(sum, 1.0L)));
      if (!have || cost < best_cost - 1e-9) {
        have = true;
        best_cost = cost;
        best.clear();
        for (int i : idx) best.push_back(i + 1);
      }
      return true;
    });
  }
  return modulator_from(g, best);
}

Modulator parse_modulator(const CapacitatedGraph& g, std::string_view body) {
  auto lines = text::tokenize(body);
  if (lines.size() != 1 || lines[0].tokens[0] != "modulator")
    throw ParseError(lines.empty() ? 0 : lines[0].number, "expected one line 'modulator <ids...>'");
  std::vector<Vertex> U;
  for (std::size_t i = 1; i < lines[0].tokens.size(); ++i)
    U.push_back(static_cast<Vertex>(text::to_int(lines[0].tokens[i], lines[0].number)));
  return modulator_from(g, std::move(U));
}

std::string format_modulator(const Modulator& m) {
  std::ostringstream os;
  os << "modulator";
  for (Vertex u : m.vertices) os << ' ' << u;
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

std::uint64_t for_each_guess(const CapacitatedGraph& g, std::span<const Vertex> U,
                             const std::function<bool(const ModulatorGuess&)>& visit) {
  auto in_u = mask_of(g, U);
  const int r = static_cast<int>(U.size());
  std::vector<int> index(g.num_vertices() + 1, -1);
  for (int i = 0; i < r; ++i) index[U[i]] = i;

  ModulatorGuess guess;
  for (int e = 0; e < g.num_edges(); ++e)
    if (in_u[g.edge(e).u] && in_u[g.edge(e).v]) guess.internal_edges.push_back(e);
  const int ie = static_cast<int>(guess.internal_edges.size());
  if (r > 62 || ie > 62) throw CapExceeded("modulator too large for guess enumeration");

  std::uint64_t count = 0;
  std::vector<char> in_s(r);
  std::vector<int> indeg(r);
  guess.internal_heads.resize(ie);
  guess.residual.resize(r);
  for (int s = 0; s <= r; ++s) {
    bool go_on = for_each_combination(r, s, [&](const std::vector<int>& idx) {
      std::fill(in_s.begin(), in_s.end(), 0);
      guess.selected.clear();
      for (int i : idx) {
        in_s[i] = 1;
        guess.selected.push_back(U[i]);
      }
      for (std::uint64_t o = 0; o < (std::uint64_t{1} << ie); ++o) {
        std::fill(indeg.begin(), indeg.end(), 0);
        bool valid = true;
        for (int b = 0; b < ie && valid; ++b) {
          const Edge& ed = g.edge(guess.internal_edges[b]);
          Vertex h = (o >> b & 1) ? ed.v : ed.u;
          int hi = index[h];
          guess.internal_heads[b] = h;
          valid = in_s[hi] && ++indeg[hi] <= g.capacity(h);
        }
        if (!valid) continue;
        for (int i = 0; i < r; ++i)
          guess.residual[i] = in_s[i] ? g.capacity(U[i]) - indeg[i] : 0;
        ++count;
        if (!visit(guess)) return false;
      }
      return true;
    });
    if (!go_on) break;
  }
  return count;
}

std::vector<ModulatorGuess> enumerate_guesses(const CapacitatedGraph& g, std::span<const Vertex> U) {
  std::vector<ModulatorGuess> out;
  for_each_guess(g, U, [&](const ModulatorGuess& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------

Vertex ComponentCatalog::head(std::size_t q, int f, const CapacitatedGraph& g) const {
  const Edge& e = g.edge(edges[f]);
  return (bits[q] >> f & 1) ? e.v : e.u;
}

ComponentCatalog component_catalog(const CapacitatedGraph& g, std::span<const Vertex> U,
                                   std::span<const Vertex> selected,
                                   std::span<const Vertex> component, int j) {
  const int n = g.num_vertices();
  const int r = static_cast<int>(U.size());
  const int cs = static_cast<int>(component.size());
  ComponentCatalog cat;
  cat.component = j;
  cat.vertices.assign(component.begin(), component.end());
  cat.modulator_size = r;

  std::vector<int> u_index(n + 1, -1), c_index(n + 1, -1);
  for (int i = 0; i < r; ++i) u_index[U[i]] = i;
  for (int i = 0; i < cs; ++i) c_index[component[i]] = i;
  std::vector<char> in_s(r, 0);
  for (Vertex s : selected) {
    if (u_index[s] < 0) throw StructuralError("selected vertex outside the modulator");
    in_s[u_index[s]] = 1;
  }

  for (int e = 0; e < g.num_edges(); ++e)
    if (c_index[g.edge(e).u] >= 0 || c_index[g.edge(e).v] >= 0) cat.edges.push_back(e);
  const int fsz = static_cast<int>(cat.edges.size());
  if (fsz > 62) throw CapExceeded("component has more than 62 incident edges");

  // profile layout: component in-degrees, then loads on U
  std::vector<int> offset(cs + r), width(cs + r, 0), last(cs, -1);
  std::vector<int> u_edges(r, 0);
  for (int f = 0; f < fsz; ++f) {
    const Edge& e = g.edge(cat.edges[f]);
    for (Vertex x : {e.u, e.v}) {
      if (c_index[x] >= 0) last[c_index[x]] = f;
      else if (u_index[x] >= 0) ++u_edges[u_index[x]];
      else throw StructuralError("component is not a component of G - U");
    }
  }
  int total = 0;
  for (int i = 0; i < cs + r; ++i) {
    int maxv = i < cs ? std::max(g.capacity(component[i]), 1) : (in_s[i - cs] ? u_edges[i - cs] : 0);
    width[i] = std::bit_width(static_cast<unsigned>(maxv));
    offset[i] = total;
    total += width[i];
  }
  if (total > 64) throw CapExceeded("component profile exceeds 64 bits");
  auto field = [&](std::uint64_t key, int i) {
    return static_cast<int>(width[i] == 0 ? 0 : (key >> offset[i]) & ((std::uint64_t{1} << width[i]) - 1));
  };

  struct Rep {
    std::uint64_t bits;
    std::uint64_t count;
  };
  std::unordered_map<std::uint64_t, Rep> cur{{0, {0, 1}}}, nxt;
  for (int f = 0; f < fsz; ++f) {
    const Edge& e = g.edge(cat.edges[f]);
    nxt.clear();
    for (const auto& [key, rep] : cur) {
      for (int side = 0; side < 2; ++side) {
        Vertex h = side ? e.v : e.u;
        int slot;
        if (c_index[h] >= 0) {
          slot = c_index[h];
          if (field(key, slot) + 1 > g.capacity(h)) continue;  // rule (ii)
        } else {
          if (!in_s[u_index[h]]) continue;  // rule (i)
          slot = cs + u_index[h];
        }
        std::uint64_t nk = key + (std::uint64_t{1} << offset[slot]);
        // vertices finished at this edge only matter through indeg > 0
        for (Vertex x : {e.u, e.v}) {
          int ci = c_index[x];
          if (ci >= 0 && last[ci] == f && field(nk, ci) > 1) {
            nk &= ~(((std::uint64_t{1} << width[ci]) - 1) << offset[ci]);
            nk |= std::uint64_t{1} << offset[ci];
          }
        }
        std::uint64_t nb = rep.bits | (static_cast<std::uint64_t>(side) << f);
        auto [it, fresh] = nxt.try_emplace(nk, Rep{nb, rep.count});
        if (!fresh) {
          it->second.count += rep.count;
          it->second.bits = std::min(it->second.bits, nb);
        }
      }
    }
    std::swap(cur, nxt);
  }

  std::map<std::vector<int>, Rep> profiles;
  for (const auto& [key, rep] : cur) {
    std::vector<int> a(r + 1, 0);
    for (int i = 0; i < r; ++i) a[i] = field(key, cs + i);
    for (int i = 0; i < cs; ++i) a[r] += field(key, i) > 0;
    auto [it, fresh] = profiles.try_emplace(std::move(a), rep);
    if (!fresh) {
      it->second.count += rep.count;
      it->second.bits = std::min(it->second.bits, rep.bits);
    }
  }
  for (const auto& [a, rep] : profiles) {
    for (int i = 0; i < r; ++i) cat.loads.push_back(static_cast<std::uint16_t>(a[i]));
    cat.sizes.push_back(a[r]);
    cat.bits.push_back(rep.bits);
    cat.valid_orientations += rep.count;
  }
  return cat;
}

// ---------------------------------------------------------------------------

BlockSelection solve_block_selection(std::span<const ComponentCatalog> catalogs,
                                     std::span<const int> residual) {
  const int r = static_cast<int>(residual.size());
  const int J = static_cast<int>(catalogs.size());
  for (const auto& c : catalogs)
    if (c.modulator_size != r) throw StructuralError("catalog and residual disagree on |U|");
  for (const auto& c : catalogs)
    if (c.size() == 0) return {};

  std::vector<int> cap(r, 0);
  for (int i = 0; i < r; ++i) {
    long long most = 0;
    for (const auto& c : catalogs) {
      int m = 0;
      for (std::size_t q = 0; q < c.size(); ++q) m = std::max(m, c.load(q, i));
      most += m;
    }
    cap[i] = static_cast<int>(std::min<long long>(std::max(residual[i], 0), most));
  }
  std::vector<std::uint64_t> stride(r, 1);
  {
    long double prod = 1;
    for (int i = 0; i < r; ++i) {
      stride[i] = static_cast<std::uint64_t>(prod);
      prod *= cap[i] + 1;
    }
    if (prod > 1e18L) throw CapExceeded("block-selection state space too large");
  }

  // options that fit alone, one per load vector (smallest d, then smallest index)
  std::vector<std::vector<int>> usable(J);
  for (int j = 0; j < J; ++j) {
    const auto& c = catalogs[j];
    std::map<std::vector<int>, int> by_load;
    for (std::size_t q = 0; q < c.size(); ++q) {
      std::vector<int> a(r);
      bool fits = true;
      for (int i = 0; i < r; ++i) {
        a[i] = c.load(q, i);
        fits = fits && a[i] <= cap[i];
      }
      if (!fits) continue;
      auto [it, fresh] = by_load.try_emplace(std::move(a), static_cast<int>(q));
      if (!fresh && c.sizes[q] < c.sizes[it->second]) it->second = static_cast<int>(q);
    }
    if (by_load.empty()) return {};
    for (auto& [a, q] : by_load) usable[j].push_back(q);
  }

  struct Entry {
    int value;
    std::uint64_t prev;
    int option;
  };
  std::vector<std::unordered_map<std::uint64_t, Entry>> layer(J + 1);
  layer[0][0] = {0, 0, -1};
  std::vector<int> coord(r);
  for (int j = 0; j < J; ++j) {
    const auto& c = catalogs[j];
    for (const auto& [key, entry] : layer[j]) {
      std::uint64_t rest = key;
      for (int i = 0; i < r; ++i) {
        coord[i] = static_cast<int>(rest % (cap[i] + 1));
        rest /= cap[i] + 1;
      }
      for (int q : usable[j]) {
        std::uint64_t nk = key;
        bool ok = true;
        for (int i = 0; i < r && ok; ++i) {
          int a = c.load(q, i);
          ok = coord[i] + a <= cap[i];
          nk += stride[i] * a;
        }
        if (!ok) continue;
        Entry cand{entry.value + c.sizes[q], key, q};
        auto [it, fresh] = layer[j + 1].try_emplace(nk, cand);
        if (!fresh && std::tie(cand.value, cand.prev, cand.option) <
                          std::tie(it->second.value, it->second.prev, it->second.option))
          it->second = cand;
      }
    }
    if (layer[j + 1].empty()) return {};
  }

  std::uint64_t best_key = 0;
  int best = -1;
  for (const auto& [key, entry] : layer[J])
    if (best < 0 || entry.value < best || (entry.value == best && key < best_key)) {
      best = entry.value;
      best_key = key;
    }
  BlockSelection out;
  out.min_size = best;
  out.choice.assign(J, 0);
  std::uint64_t key = best_key;
  for (int j = J; j > 0; --j) {
    const Entry& e = layer[j].at(key);
    out.choice[j - 1] = e.option;
    key = e.prev;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ViRun {
  std::optional<int> best;
  std::optional<Orientation> certificate;
};

ViRun run_vi(const CapacitatedGraph& input, std::optional<int> k, std::optional<Modulator> modulator,
             ViStats* stats) {
  const CapacitatedGraph g = normalize_capacities(input);
  Modulator mod = modulator ? modulator_from(g, modulator->vertices) : choose_work_modulator(g);
  const auto& U = mod.vertices;
  auto removed = mask_of(g, U);
  auto comps = components_without(g, removed);

  ViStats local;
  ViStats& st = stats ? *stats : local;
  st = ViStats{};
  st.modulator = mod;

  // catalogs depend on S only
  std::map<std::vector<Vertex>, std::optional<std::vector<ComponentCatalog>>> cache;
  auto catalogs_for = [&](const std::vector<Vertex>& S) -> const std::optional<std::vector<ComponentCatalog>>& {
    auto it = cache.find(S);
    if (it != cache.end()) return it->second;
    std::vector<ComponentCatalog> cats;
    bool ok = true;
    for (int j = 0; j < static_cast<int>(comps.size()) && ok; ++j) {
      cats.push_back(component_catalog(g, U, S, comps[j], j));
      st.catalog_options += cats.back().size();
      ok = cats.back().size() > 0;
    }
    auto& slot = cache[S];
    if (ok) slot = std::move(cats);
    return slot;
  };

  ViRun run;
  st.guesses = for_each_guess(g, U, [&](const ModulatorGuess& guess) {
    const int s = static_cast<int>(guess.selected.size());
    // guesses come by increasing |S|: nothing later can beat the bound
    if (k && s > *k) return false;
    if (run.best && s >= *run.best) return false;
    const auto& cats = catalogs_for(guess.selected);
    if (!cats) {
      ++st.discarded;
      return true;
    }
    auto sel = solve_block_selection(*cats, guess.residual);
    if (!sel.min_size) {
      ++st.discarded;
      return true;
    }
    int total = s + *sel.min_size;
    if (k && total > *k) return true;
    if (run.best && total >= *run.best) return true;
    Orientation o;
    o.head.assign(g.num_edges(), 0);
    for (std::size_t b = 0; b < guess.internal_edges.size(); ++b)
      o.head[guess.internal_edges[b]] = guess.internal_heads[b];
    for (std::size_t j = 0; j < cats->size(); ++j) {
      const auto& c = (*cats)[j];
      for (int f = 0; f < static_cast<int>(c.edges.size()); ++f)
        o.head[c.edges[f]] = c.head(sel.choice[j], f, g);
    }
    run.best = total;
    run.certificate = std::move(o);
    return !k.has_value();
  });
  for (const Edge& e : g.edges())
    if (removed[e.u] && removed[e.v]) ++st.internal_edges;
  return run;
}

}  // namespace

Decision solve_vi(const CapacitatedGraph& g, int k, std::optional<Modulator> modulator, ViStats* stats) {
  if (k < 0) return {};
  auto run = run_vi(g, k, std::move(modulator), stats);
  Decision d;
  d.yes = run.best.has_value();
  d.certificate = std::move(run.certificate);
  return d;
}

SolveResult solve_vi_min(const CapacitatedGraph& g, std::optional<Modulator> modulator, ViStats* stats) {
  auto run = run_vi(g, std::nullopt, std::move(modulator), stats);
  if (!run.best) return {};
  // the assembled orientation may use fewer vertices than |S| + d; it is still optimal
  int size = verify_orientation(normalize_capacities(g), *run.certificate).size;
  return {size, std::move(run.certificate)};
}

}  // namespace capcover
