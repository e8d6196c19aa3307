#include "capcover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "text.hpp"

namespace capcover {

void validate_choice_groups(const CapacitatedGraph& g, const ChoiceGroups& meta) {
  std::vector<char> used(g.num_vertices() + 1, 0);
  auto claim = [&](Vertex v) {
    if (!g.has_vertex(v)) throw StructuralError("metadata names unknown vertex " + std::to_string(v));
    if (used[v]) throw StructuralError("metadata lists vertex " + std::to_string(v) + " twice");
    used[v] = 1;
  };
  for (Vertex v : meta.forced) claim(v);
  for (const auto& grp : meta.groups)
    for (Vertex v : grp) claim(v);
  for (Vertex v : meta.free) claim(v);
}

ChoiceGroups parse_choice_groups(std::string_view body) {
  ChoiceGroups meta;
  auto ids = [](const text::Line& l) {
    std::vector<Vertex> out;
    for (std::size_t i = 1; i < l.tokens.size(); ++i)
      out.push_back(static_cast<Vertex>(text::to_int(l.tokens[i], l.number)));
    return out;
  };
  for (const auto& l : text::tokenize(body)) {
    if (l.tokens[0] == "forced") {
      auto v = ids(l);
      meta.forced.insert(meta.forced.end(), v.begin(), v.end());
    } else if (l.tokens[0] == "group") {
      meta.groups.push_back(ids(l));
    } else if (l.tokens[0] == "free") {
      auto v = ids(l);
      meta.free.insert(meta.free.end(), v.begin(), v.end());
    } else {
      throw ParseError(l.number, "unknown metadata record '" + std::string(l.tokens[0]) + "'");
    }
  }
  return meta;
}

std::string format_choice_groups(const ChoiceGroups& meta) {
  std::ostringstream os;
  os << "forced";
  for (Vertex v : meta.forced) os << ' ' << v;
  os << '\n';
  for (const auto& grp : meta.groups) {
    os << "group";
    for (Vertex v : grp) os << ' ' << v;
    os << '\n';
  }
  os << "free";
  for (Vertex v : meta.free) os << ' ' << v;
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

SolveResult solve_exact(const CapacitatedGraph& input, int max_vertices) {
  if (input.num_vertices() > std::min(max_vertices, 63))
    throw CapExceeded("exact oracle refuses " + std::to_string(input.num_vertices()) +
                      " vertices (cap " + std::to_string(max_vertices) + ")");
  const CapacitatedGraph g = normalize_capacities(input);
  const int n = g.num_vertices();
  if (g.num_edges() == 0) return {0, Orientation{}};

  std::vector<Vertex> cand;
  for (Vertex v = 1; v <= n; ++v)
    if (g.degree(v) > 0) cand.push_back(v);
  std::vector<std::uint64_t> edge_mask;
  for (const Edge& e : g.edges())
    edge_mask.push_back((std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v));

  EdgeAssigner assigner(g);
  std::vector<char> in_set(n + 1, 0);
  const int c = static_cast<int>(cand.size());
  std::vector<int> idx;
  for (int size = 1; size <= c; ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t mask = 0;
      long long room = 0;
      for (int i : idx) {
        mask |= std::uint64_t{1} << cand[i];
        room += g.capacity(cand[i]);
      }
      bool cover = room >= g.num_edges();
      for (std::size_t e = 0; cover && e < edge_mask.size(); ++e) cover = (mask & edge_mask[e]) != 0;
      if (cover) {
        std::fill(in_set.begin(), in_set.end(), 0);
        for (int i : idx) in_set[cand[i]] = 1;
        if (auto o = assigner.assign(in_set)) return {size, std::move(o)};
      }
      // next combination in lexicographic order
      int i = size - 1;
      while (i >= 0 && idx[i] == c - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

struct PendantStar {
  Vertex center;
  std::vector<Vertex> leaves;  // selectable leaves (capacity 1), sorted
};

class PrunedSearch {
 public:
  PrunedSearch(const CapacitatedGraph& g, int k, std::vector<Vertex> forced,
               std::vector<Vertex> free, std::vector<PendantStar> stars)
      : g_(g),
        k_(k),
        forced_(std::move(forced)),
        free_(std::move(free)),
        stars_(std::move(stars)),
        assigner_(g),
        in_set_(g.num_vertices() + 1, 0) {}

  std::optional<Orientation> run() {
    for (Vertex v : forced_) in_set_[v] = 1;
    int used = static_cast<int>(forced_.size());
    if (used > k_) return std::nullopt;
    if (free_step(0, used)) return std::move(found_);
    return std::nullopt;
  }

 private:
  bool free_step(std::size_t i, int used) {
    if (i == free_.size()) return star_step(0, used);
    Vertex v = free_[i];
    // exclude first: smaller sets are tried before larger ones along each branch
    if (free_step(i + 1, used)) return true;
    if (used + 1 > k_) return false;
    in_set_[v] = 1;
    bool ok = free_step(i + 1, used + 1);
    in_set_[v] = 0;
    return ok;
  }

  bool star_step(std::size_t s, int used) {
    if (s == stars_.size()) return check();
    const auto& star = stars_[s];
    int most = std::min<int>(static_cast<int>(star.leaves.size()), k_ - used);
    for (int t = 0; t <= most; ++t) {
      for (int i = 0; i < t; ++i) in_set_[star.leaves[i]] = 1;
      bool ok = star_step(s + 1, used + t);
      for (int i = 0; i < t; ++i) in_set_[star.leaves[i]] = 0;
      if (ok) return true;
    }
    return false;
  }

  bool check() {
    for (const Edge& e : g_.edges())
      if (!in_set_[e.u] && !in_set_[e.v]) return false;
    if (auto o = assigner_.assign(in_set_)) {
      found_ = std::move(o);
      return true;
    }
    return false;
  }

  const CapacitatedGraph& g_;
  int k_;
  std::vector<Vertex> forced_, free_;
  std::vector<PendantStar> stars_;
  EdgeAssigner assigner_;
  std::vector<char> in_set_;
  std::optional<Orientation> found_;
};

}  // namespace

Decision solve_pruned(const CapacitatedGraph& input, int k, std::uint64_t max_candidates) {
  if (k < 0) return {};
  const CapacitatedGraph g = normalize_capacities(input);
  const int n = g.num_vertices();

  auto is_leaf = [&](Vertex v) {
    if (g.degree(v) != 1) return false;
    Vertex w = g.edge(g.incident(v)[0]).other(v);
    return g.degree(w) >= 2;
  };

  std::map<Vertex, std::vector<Vertex>> by_center;
  std::vector<char> leaf(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (!is_leaf(v)) continue;
    leaf[v] = 1;
    by_center[g.edge(g.incident(v)[0]).other(v)].push_back(v);
  }

  std::vector<Vertex> forced, free;
  std::vector<PendantStar> stars;
  for (Vertex v = 1; v <= n; ++v) {
    if (leaf[v] || g.degree(v) == 0) continue;
    auto it = by_center.find(v);
    int pendants = it == by_center.end() ? 0 : static_cast<int>(it->second.size());
    if (pendants > k)
      forced.push_back(v);  // R1
    else
      free.push_back(v);
  }
  for (auto& [center, leaves] : by_center) {
    PendantStar star{center, {}};
    for (Vertex l : leaves)
      if (g.capacity(l) >= 1) star.leaves.push_back(l);
    if (!star.leaves.empty()) stars.push_back(std::move(star));
  }

  // R2 search-space size: 2^|free| * prod(min(#leaves, k) + 1)
  long double space = std::ldexp(1.0L, static_cast<int>(free.size()));
  for (const auto& s : stars) space *= std::min<int>(static_cast<int>(s.leaves.size()), k) + 1;
  if (space > static_cast<long double>(max_candidates))
    throw CapExceeded("pruned oracle search space exceeds cap " + std::to_string(max_candidates));

  PrunedSearch search(g, k, std::move(forced), std::move(free), std::move(stars));
  auto cert = search.run();
  Decision d;
  d.yes = cert.has_value();
  d.certificate = std::move(cert);
  return d;
}

// ---------------------------------------------------------------------------

namespace {

class CanonicalSearch {
 public:
  CanonicalSearch(const CapacitatedGraph& g, const ChoiceGroups& meta, int k)
      : g_(g), meta_(meta), k_(k), assigner_(g), in_set_(g.num_vertices() + 1, 0) {}

  std::optional<Orientation> run() {
    int base = static_cast<int>(meta_.forced.size() + meta_.groups.size());
    if (base > k_) return std::nullopt;
    for (const auto& grp : meta_.groups)
      if (grp.empty()) return std::nullopt;
    // relaxation: every still-open candidate selected
    for (Vertex v : meta_.forced) in_set_[v] = 1;
    for (const auto& grp : meta_.groups)
      for (Vertex v : grp) in_set_[v] = 1;
    for (Vertex v : meta_.free) in_set_[v] = 1;
    if (!assigner_.feasible(in_set_)) return std::nullopt;
    if (group_step(0, base)) return std::move(found_);
    return std::nullopt;
  }

 private:
  // Selecting more vertices never hurts assign_edges, so a failed relaxation
  // prunes the whole subtree.
  bool group_step(std::size_t gi, int used) {
    if (gi == meta_.groups.size()) return free_step(0, used);
    const auto& grp = meta_.groups[gi];
    for (Vertex v : grp) in_set_[v] = 0;
    for (Vertex pick : grp) {
      in_set_[pick] = 1;
      if (assigner_.feasible(in_set_) && group_step(gi + 1, used)) return true;
      in_set_[pick] = 0;
    }
    for (Vertex v : grp) in_set_[v] = 1;
    return false;
  }

  bool free_step(std::size_t fi, int used) {
    if (fi == meta_.free.size()) {
      if (used > k_) return false;
      if (auto o = assigner_.assign(in_set_)) {
        found_ = std::move(o);
        return true;
      }
      return false;
    }
    Vertex v = meta_.free[fi];
    in_set_[v] = 0;
    if (assigner_.feasible(in_set_) && free_step(fi + 1, used)) return true;
    in_set_[v] = 1;
    if (used + 1 <= k_ && free_step(fi + 1, used + 1)) return true;
    return false;
  }

  const CapacitatedGraph& g_;
  const ChoiceGroups& meta_;
  int k_;
  EdgeAssigner assigner_;
  std::vector<char> in_set_;
  std::optional<Orientation> found_;
};

}  // namespace

Decision solve_canonical(const CapacitatedGraph& input, const ChoiceGroups& meta, int k) {
  validate_choice_groups(input, meta);
  const CapacitatedGraph g = normalize_capacities(input);
  CanonicalSearch search(g, meta, k);
  auto cert = search.run();
  Decision d;
  d.yes = cert.has_value();
  d.certificate = std::move(cert);
  return d;
}

}  // namespace capcover
