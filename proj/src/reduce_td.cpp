#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "builder.hpp"
#include "capcover/reductions.hpp"
#include "text.hpp"

namespace capcover {

MccInstance parse_mcc(std::string_view body) {
  auto lines = text::tokenize(body);
  if (lines.empty() || lines[0].tokens[0] != "mcc")
    throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'mcc <k> <n>'");
  text::expect_arity(lines[0], 3);
  MccInstance I;
  I.k = static_cast<int>(text::to_int(lines[0].tokens[1], lines[0].number));
  I.n = static_cast<int>(text::to_int(lines[0].tokens[2], lines[0].number));
  if (I.k < 1 || I.n < 1) throw ParseError(lines[0].number, "need k >= 1 and n >= 1");
  I.classes.assign(I.k, {});
  std::vector<char> given(I.k, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] == "class") {
      if (l.tokens.size() < 2) throw ParseError(l.number, "expected 'class <i> <ids...>'");
      long long c = text::to_int(l.tokens[1], l.number);
      if (c < 1 || c > I.k) throw ParseError(l.number, "class index out of range");
      if (given[c - 1]) throw ParseError(l.number, "class " + std::to_string(c) + " given twice");
      given[c - 1] = 1;
      for (std::size_t t = 2; t < l.tokens.size(); ++t)
        I.classes[c - 1].push_back(static_cast<int>(text::to_int(l.tokens[t], l.number)));
    } else if (l.tokens[0] == "e") {
      text::expect_arity(l, 3);
      I.edges.push_back({static_cast<int>(text::to_int(l.tokens[1], l.number)),
                         static_cast<int>(text::to_int(l.tokens[2], l.number))});
    } else {
      throw ParseError(l.number, "unknown record '" + std::string(l.tokens[0]) + "'");
    }
  }
  return I;
}

std::string format_mcc(const MccInstance& I) {
  std::ostringstream os;
  os << "mcc " << I.k << ' ' << I.n << '\n';
  for (int c = 0; c < I.k; ++c) {
    os << "class " << c + 1;
    for (int v : I.classes[c]) os << ' ' << v;
    os << '\n';
  }
  for (auto [u, v] : I.edges) os << "e " << u << ' ' << v << '\n';
  return os.str();
}

namespace {

/// Class/index lookup plus adjacency with implicit self-loops and padding.
struct MccIndex {
  int k = 0, padded = 0, n = 0;
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> adj;

  explicit MccIndex(const MccInstance& I) : k(I.k), n(I.n) {
    if (static_cast<int>(I.classes.size()) != k) throw StructuralError("class count disagrees with k");
    std::map<int, std::pair<int, int>> where;
    for (int c = 0; c < k; ++c) {
      if (static_cast<int>(I.classes[c].size()) != n)
        throw StructuralError("class " + std::to_string(c + 1) + " does not have n vertices");
      for (int j = 0; j < n; ++j)
        if (!where.emplace(I.classes[c][j], std::pair{c, j}).second)
          throw StructuralError("vertex " + std::to_string(I.classes[c][j]) + " listed twice");
    }
    for (auto [u, v] : I.edges) {
      auto a = where.find(u), b = where.find(v);
      if (a == where.end() || b == where.end()) throw StructuralError("edge names an unknown vertex");
      if (a->second.first == b->second.first)
        throw StructuralError("edge inside class " + std::to_string(a->second.first + 1) +
                              ": classes must be independent");
      adj.insert({a->second, b->second});
      adj.insert({b->second, a->second});
    }
    padded = 1;
    while (padded < k) padded *= 2;
  }

  bool adjacent(int c1, int j1, int c2, int j2) const {
    if (c1 == c2) return j1 == j2;
    if (c1 >= k || c2 >= k) return true;
    return adj.count({{c1, j1}, {c2, j2}}) > 0;
  }
};

}  // namespace

std::optional<std::vector<int>> mcc_brute_force(const MccInstance& I) {
  MccIndex idx(I);
  std::vector<int> s(I.k, 0);
  while (true) {
    bool clique = true;
    for (int a = 0; a < I.k && clique; ++a)
      for (int b = a + 1; b < I.k && clique; ++b) clique = idx.adjacent(a, s[a], b, s[b]);
    if (clique) return s;
    int t = 0;
    while (t < I.k && ++s[t] == I.n) s[t++] = 0;
    if (t == I.k) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

TreedepthWitness parse_witness(std::string_view body, int n) {
  TreedepthWitness w;
  w.parent.assign(n + 1, -1);
  for (const auto& l : text::tokenize(body)) {
    if (l.tokens[0] != "parent") throw ParseError(l.number, "expected 'parent <v> <p|0>'");
    text::expect_arity(l, 3);
    long long v = text::to_int(l.tokens[1], l.number);
    long long p = text::to_int(l.tokens[2], l.number);
    if (v < 1 || v > n || p < 0 || p > n) throw ParseError(l.number, "vertex id out of range");
    if (w.parent[v] != -1) throw ParseError(l.number, "vertex " + std::to_string(v) + " given twice");
    w.parent[v] = static_cast<Vertex>(p);
  }
  for (int v = 1; v <= n; ++v)
    if (w.parent[v] == -1) throw ParseError(0, "vertex " + std::to_string(v) + " has no parent line");
  w.parent[0] = 0;
  return w;
}

std::string format_witness(const TreedepthWitness& w) {
  std::ostringstream os;
  for (std::size_t v = 1; v < w.parent.size(); ++v) os << "parent " << v << ' ' << w.parent[v] << '\n';
  return os.str();
}

WitnessCheck verify_td_witness(const CapacitatedGraph& g, const TreedepthWitness& w) {
  const int n = g.num_vertices();
  if (static_cast<int>(w.parent.size()) != n + 1) return {};
  for (int v = 1; v <= n; ++v)
    if (w.parent[v] < 0 || w.parent[v] > n || w.parent[v] == v) return {};

  std::vector<int> depth(n + 1, 0);  // 0 = unknown, -1 = on the current path
  std::vector<Vertex> path;
  for (Vertex s = 1; s <= n; ++s) {
    Vertex v = s;
    while (v != 0 && depth[v] == 0) {
      depth[v] = -1;
      path.push_back(v);
      v = w.parent[v];
    }
    if (v != 0 && depth[v] < 0) return {};  // cycle
    int d = v == 0 ? 0 : depth[v];
    while (!path.empty()) {
      depth[path.back()] = ++d;
      path.pop_back();
    }
  }
  WitnessCheck out;
  for (const Edge& e : g.edges()) {
    Vertex lo = e.u, hi = e.v;
    if (depth[lo] > depth[hi]) std::swap(lo, hi);
    Vertex x = hi;
    for (int steps = depth[hi] - depth[lo]; steps > 0; --steps) x = w.parent[x];
    if (x != lo) return {};
  }
  out.valid = true;
  for (int v = 1; v <= n; ++v) out.depth = std::max(out.depth, depth[v]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class TdBuilder {
 public:
  TdBuilder(const MccIndex& idx, TdReduction& out) : idx_(idx), out_(out), n_(idx.n) {}

  void run() {
    const int K = idx_.padded;
    root_ = gadget(0, K - 1, 0, K - 1).node;

    out_.delta = static_cast<int>(marked_.size());
    out_.gamma = static_cast<int>(out_.instances.size());
    const int kp = K * K + out_.gamma + out_.delta;
    for (Vertex v : marked_) b_.leaves(v, kp + 1);

    out_.k_padded = K;
    out_.n = n_;
    out_.k = kp;
    const int total = b_.num_vertices();
    out_.witness.parent.assign(total + 1, 0);
    hang(root_, 0);
    for (auto [z, owner] : a_owner_) out_.witness.parent[z] = owner;
    for (Vertex v = 1; v <= total; ++v)
      if (Vertex o = b_.leaf_owner(v)) out_.witness.parent[v] = o;
    out_.graph = b_.finish(kp);

    out_.meta.forced = marked_;
    for (const auto& inst : out_.instances) out_.meta.groups.push_back(inst.options);
    for (const auto& leaf : out_.leaves) {
      std::vector<Vertex> grp;
      for (const auto& [jj, v] : leaf.edges) grp.push_back(v);
      out_.meta.groups.push_back(std::move(grp));
    }
  }

 private:
  struct Node {
    std::vector<Vertex> chain;
    std::vector<int> instances;
    int leaf = -1;
    std::vector<int> children;
  };
  struct Built {
    int node;
    std::map<int, int> left, right;  // class -> instance id
  };

  Vertex marked(int demand) {
    Vertex v = b_.vertex(demand);
    marked_.push_back(v);
    return v;
  }

  int instance(int cls) {
    TdReduction::ChoiceInstance inst{cls, marked(1), {}};
    for (int j = 0; j < n_; ++j) {
      Vertex v = b_.vertex(0);
      b_.edge(inst.hub, v);
      inst.options.push_back(v);
    }
    out_.instances.push_back(std::move(inst));
    return static_cast<int>(out_.instances.size()) - 1;
  }

  void a_edge(Vertex owner, Vertex other, int count) {
    for (int t = 0; t < count; ++t) {
      Vertex z = marked(1);
      b_.edge(z, owner);
      b_.edge(z, other);
      a_owner_.push_back({z, owner});
    }
  }

  void copy_gadget(int first, int second, Node& node) {
    Vertex g1 = marked(n_), g2 = marked(n_);
    node.chain.push_back(g1);
    node.chain.push_back(g2);
    for (int j = 1; j <= n_; ++j) {
      Vertex v = out_.instances[first].options[j - 1];
      a_edge(v, g1, j);
      a_edge(v, g2, n_ - j);
    }
    for (int j = 1; j <= n_; ++j) {
      Vertex v = out_.instances[second].options[j - 1];
      a_edge(v, g1, n_ - j);
      a_edge(v, g2, j);
    }
  }

  Built gadget(int i1, int i2, int j1, int j2) {
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Built built{id, {}, {}};
    if (i1 == i2) {
      leaf_gadget(i1, j1, built);
      return built;
    }
    for (int p = i1; p <= i2; ++p) built.left[p] = instance(p);
    for (int p = j1; p <= j2; ++p) built.right[p] = instance(p);
    for (auto [cls, inst] : built.left) nodes_[id].instances.push_back(inst);
    for (auto [cls, inst] : built.right) nodes_[id].instances.push_back(inst);

    const int mi = (i1 + i2) / 2, mj = (j1 + j2) / 2;
    Built sub[4] = {gadget(i1, mi, j1, mj), gadget(i1, mi, mj + 1, j2), gadget(mi + 1, i2, j1, mj),
                    gadget(mi + 1, i2, mj + 1, j2)};
    for (auto& s : sub) nodes_[id].children.push_back(s.node);
    for (int p = i1; p <= i2; ++p) {
      const Built& a = p <= mi ? sub[0] : sub[2];
      const Built& c = p <= mi ? sub[1] : sub[3];
      copy_gadget(built.left[p], a.left.at(p), nodes_[id]);
      copy_gadget(built.left[p], c.left.at(p), nodes_[id]);
    }
    for (int p = j1; p <= j2; ++p) {
      const Built& a = p <= mj ? sub[0] : sub[1];
      const Built& c = p <= mj ? sub[2] : sub[3];
      copy_gadget(built.right[p], a.right.at(p), nodes_[id]);
      copy_gadget(built.right[p], c.right.at(p), nodes_[id]);
    }
    return built;
  }

  void leaf_gadget(int i, int ip, Built& built) {
    Node& node = nodes_[built.node];
    int first = instance(i), second = instance(ip);
    built.left[i] = first;
    built.right[ip] = second;
    node.instances = {first, second};

    TdReduction::LeafGadget leaf{i, ip, marked(1), {}};
    for (int j = 0; j < n_; ++j)
      for (int jp = 0; jp < n_; ++jp)
        if (idx_.adjacent(i, j, ip, jp)) {
          Vertex v = b_.vertex(0);
          b_.edge(leaf.hub, v);
          leaf.edges.push_back({{j, jp}, v});
        }
    Vertex alpha = marked(n_), beta = marked(n_), kappa = marked(n_), lambda = marked(n_);
    node.chain = {alpha, beta, kappa, lambda};
    for (int j = 1; j <= n_; ++j) {
      Vertex v = out_.instances[first].options[j - 1];
      a_edge(v, alpha, j);
      a_edge(v, beta, n_ - j);
    }
    for (int j = 1; j <= n_; ++j) {
      Vertex v = out_.instances[second].options[j - 1];
      a_edge(v, kappa, j);
      a_edge(v, lambda, n_ - j);
    }
    for (const auto& [jj, v] : leaf.edges) {
      int j = jj.first + 1, jp = jj.second + 1;
      a_edge(v, alpha, n_ - j);
      a_edge(v, beta, j);
      a_edge(v, kappa, n_ - jp);
      a_edge(v, lambda, jp);
    }
    out_.leaves.push_back(std::move(leaf));
    node.leaf = static_cast<int>(out_.leaves.size()) - 1;
  }

  // elimination forest: copy/validation vertices form a path, everything else hangs below it
  void hang(int id, Vertex anchor) {
    auto& parent = out_.witness.parent;
    const Node& node = nodes_[id];
    Vertex above = anchor;
    for (Vertex c : node.chain) {
      parent[c] = above;
      above = c;
    }
    for (int inst : node.instances) {
      const auto& ci = out_.instances[inst];
      parent[ci.hub] = above;
      for (Vertex v : ci.options) parent[v] = ci.hub;
    }
    if (node.leaf >= 0) {
      const auto& leaf = out_.leaves[node.leaf];
      parent[leaf.hub] = above;
      for (const auto& [jj, v] : leaf.edges) parent[v] = leaf.hub;
    }
    for (int child : node.children) hang(child, above);
  }

  const MccIndex& idx_;
  TdReduction& out_;
  const int n_;
  detail::Builder b_;
  std::vector<Vertex> marked_;
  std::vector<std::pair<Vertex, Vertex>> a_owner_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace

TdReduction reduce_mcc_td(const MccInstance& I) {
  MccIndex idx(I);
  TdReduction r;
  TdBuilder(idx, r).run();
  return r;
}

std::vector<Vertex> td_forward_solution(const TdReduction& r, std::span<const int> s) {
  auto pick = [&](int cls) { return cls < static_cast<int>(s.size()) ? s[cls] : 0; };
  std::vector<Vertex> out = r.meta.forced;
  for (const auto& inst : r.instances) out.push_back(inst.options.at(pick(inst.cls)));
  for (const auto& leaf : r.leaves)
    for (const auto& [jj, v] : leaf.edges)
      if (jj.first == pick(leaf.cls_a) && jj.second == pick(leaf.cls_b)) out.push_back(v);
  return out;
}

}  // namespace capcover
