#include "capcover/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "flow.hpp"
#include "text.hpp"

namespace capcover {

CapacitatedGraph::CapacitatedGraph(int n) {
  if (n < 0) throw StructuralError("negative vertex count");
  capacity_.assign(n + 1, 0);
  incident_.assign(n + 1, {});
}

Vertex CapacitatedGraph::add_vertex(int capacity) {
  capacity_.push_back(capacity);
  incident_.emplace_back();
  return num_vertices();
}

std::uint64_t CapacitatedGraph::key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

int CapacitatedGraph::add_edge(Vertex a, Vertex b) {
  if (!has_vertex(a) || !has_vertex(b))
    throw StructuralError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                          "} has an unknown endpoint");
  if (a == b) throw StructuralError("loop at vertex " + std::to_string(a));
  if (!edge_keys_.insert(key(a, b)).second)
    throw StructuralError("duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  int id = num_edges();
  edges_.push_back({std::min(a, b), std::max(a, b)});
  incident_[a].push_back(id);
  incident_[b].push_back(id);
  return id;
}

void CapacitatedGraph::set_capacity(Vertex v, int capacity) {
  if (!has_vertex(v)) throw StructuralError("unknown vertex " + std::to_string(v));
  capacity_[v] = capacity;
}

bool CapacitatedGraph::has_edge(Vertex a, Vertex b) const {
  return a != b && edge_keys_.count(key(a, b)) > 0;
}

std::optional<int> CapacitatedGraph::find_edge(Vertex a, Vertex b) const {
  if (!has_vertex(a) || !has_vertex(b) || !has_edge(a, b)) return std::nullopt;
  const auto& shorter = degree(a) <= degree(b) ? incident_[a] : incident_[b];
  for (int e : shorter)
    if (edges_[e] == Edge{std::min(a, b), std::max(a, b)}) return e;
  return std::nullopt;
}

std::vector<int> indegrees(const CapacitatedGraph& g, const Orientation& o) {
  if (static_cast<int>(o.head.size()) != g.num_edges())
    throw StructuralError("orientation has " + std::to_string(o.head.size()) +
                          " arcs but the graph has " + std::to_string(g.num_edges()) + " edges");
  std::vector<int> in(g.num_vertices() + 1, 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    Vertex h = o.head[e];
    if (h != ed.u && h != ed.v)
      throw StructuralError("arc head " + std::to_string(h) + " is not an endpoint of edge {" +
                            std::to_string(ed.u) + "," + std::to_string(ed.v) + "}");
    ++in[h];
  }
  return in;
}

CapacitatedGraph normalize_capacities(const CapacitatedGraph& g) {
  CapacitatedGraph out = g;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    int deg = g.degree(v);
    // c = 0 on a non-isolated vertex stays 0: raising it would change answers.
    out.set_capacity(v, deg == 0 ? 0 : std::min(std::max(g.capacity(v), 0), deg));
  }
  return out;
}

FeasReport verify_orientation(const CapacitatedGraph& g, const Orientation& o) {
  auto in = indegrees(g, o);
  FeasReport r;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (in[v] > 0) ++r.size;
    if (in[v] > g.capacity(v)) r.violations.push_back({v, in[v], g.capacity(v)});
  }
  r.feasible = r.violations.empty();
  return r;
}

Orientation orientation_from_arcs(const CapacitatedGraph& g,
                                  std::span<const std::pair<Vertex, Vertex>> arcs) {
  Orientation o;
  o.head.assign(g.num_edges(), 0);
  for (auto [tail, head] : arcs) {
    auto e = g.find_edge(tail, head);
    if (!e)
      throw StructuralError("arc (" + std::to_string(tail) + "," + std::to_string(head) +
                            ") is not an edge of the graph");
    if (o.head[*e] != 0)
      throw StructuralError("edge {" + std::to_string(tail) + "," + std::to_string(head) +
                            "} oriented twice");
    o.head[*e] = head;
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (o.head[e] == 0)
      throw StructuralError("edge {" + std::to_string(g.edge(e).u) + "," +
                            std::to_string(g.edge(e).v) + "} has no arc");
  return o;
}

// ---- edge assignment ----

EdgeAssigner::EdgeAssigner(const CapacitatedGraph& g) : g_(g) {}

bool EdgeAssigner::feasible(const std::vector<char>& in_set) { return run(in_set, nullptr); }

std::optional<Orientation> EdgeAssigner::assign(const std::vector<char>& in_set) {
  Orientation o;
  if (!run(in_set, &o)) return std::nullopt;
  return o;
}

bool EdgeAssigner::run(const std::vector<char>& in_set, Orientation* out) {
  const int n = g_.num_vertices();
  residual_.assign(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) residual_[v] = in_set[v] ? g_.capacity(v) : 0;
  shared_.clear();
  if (out) out->head.assign(g_.num_edges(), 0);

  for (int e = 0; e < g_.num_edges(); ++e) {
    const Edge& ed = g_.edge(e);
    bool su = in_set[ed.u], sv = in_set[ed.v];
    if (su && sv) {
      shared_.push_back(e);
    } else if (su || sv) {
      Vertex h = su ? ed.u : ed.v;
      if (--residual_[h] < 0) return false;
      if (out) out->head[e] = h;
    } else {
      return false;
    }
  }
  if (shared_.empty()) return true;

  // Quick reject on total capacity.
  long long room = 0;
  for (Vertex v = 1; v <= n; ++v)
    if (in_set[v]) room += residual_[v];
  if (room < static_cast<long long>(shared_.size())) return false;

  std::unordered_map<Vertex, int> node_of;
  std::vector<Vertex> vertex_of;
  for (int e : shared_)
    for (Vertex w : {g_.edge(e).u, g_.edge(e).v})
      if (node_of.emplace(w, static_cast<int>(vertex_of.size())).second) vertex_of.push_back(w);

  const int m = static_cast<int>(shared_.size());
  const int k = static_cast<int>(vertex_of.size());
  const int source = m + k, sink = m + k + 1;
  detail::MaxFlow flow(m + k + 2);
  std::vector<int> arc_to_u(m);
  for (int i = 0; i < m; ++i) {
    const Edge& ed = g_.edge(shared_[i]);
    flow.add_arc(source, i, 1);
    arc_to_u[i] = flow.add_arc(i, m + node_of[ed.u], 1);
    flow.add_arc(i, m + node_of[ed.v], 1);
  }
  for (int j = 0; j < k; ++j)
    if (residual_[vertex_of[j]] > 0) flow.add_arc(m + j, sink, residual_[vertex_of[j]]);
  if (flow.run(source, sink) < m) return false;
  if (out) {
    for (int i = 0; i < m; ++i) {
      const Edge& ed = g_.edge(shared_[i]);
      out->head[shared_[i]] = flow.flow_on(arc_to_u[i]) ? ed.u : ed.v;
    }
  }
  return true;
}

std::optional<Orientation> assign_edges(const CapacitatedGraph& g,
                                        std::span<const Vertex> selected) {
  std::vector<char> in_set(g.num_vertices() + 1, 0);
  for (Vertex v : selected) {
    if (!g.has_vertex(v)) throw StructuralError("unknown vertex " + std::to_string(v));
    in_set[v] = 1;
  }
  return EdgeAssigner(g).assign(in_set);
}

// ---- text formats ----

CapacitatedGraph parse_instance(std::string_view text) {
  auto lines = text::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty instance");
  const auto& head = lines[0];
  if (head.tokens[0] != "cvc" || (head.tokens.size() != 3 && head.tokens.size() != 4))
    throw ParseError(head.number, "expected header 'cvc <n> <m> [k]'");
  long long n = text::to_int(head.tokens[1], head.number);
  long long m = text::to_int(head.tokens[2], head.number);
  if (n < 0 || m < 0) throw ParseError(head.number, "negative count in header");
  CapacitatedGraph g(static_cast<int>(n));
  if (head.tokens.size() == 4) {
    long long k = text::to_int(head.tokens[3], head.number);
    if (k < 0) throw ParseError(head.number, "negative budget");
    g.budget = static_cast<int>(k);
  }
  std::vector<char> seen(n + 1, 0);
  long long vertex_lines = 0, edge_lines = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] == "v") {
      text::expect_arity(l, 3);
      long long id = text::to_int(l.tokens[1], l.number);
      long long cap = text::to_int(l.tokens[2], l.number);
      if (id < 1 || id > n) throw ParseError(l.number, "unknown vertex id " + std::to_string(id));
      if (seen[id]) throw ParseError(l.number, "vertex " + std::to_string(id) + " declared twice");
      if (cap < 0) throw ParseError(l.number, "negative capacity");
      seen[id] = 1;
      g.set_capacity(static_cast<Vertex>(id), static_cast<int>(cap));
      ++vertex_lines;
    } else if (l.tokens[0] == "e") {
      text::expect_arity(l, 3);
      long long a = text::to_int(l.tokens[1], l.number);
      long long b = text::to_int(l.tokens[2], l.number);
      if (a < 1 || a > n || b < 1 || b > n)
        throw ParseError(l.number, "unknown vertex id in edge");
      if (a == b) throw ParseError(l.number, "loop at vertex " + std::to_string(a));
      if (g.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)))
        throw ParseError(l.number,
                         "duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
      g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
      ++edge_lines;
    } else {
      throw ParseError(l.number, "unknown record '" + std::string(l.tokens[0]) + "'");
    }
  }
  if (vertex_lines != n)
    throw ParseError(0, "header declares " + std::to_string(n) + " vertices, found " +
                            std::to_string(vertex_lines));
  if (edge_lines != m)
    throw ParseError(0, "header declares " + std::to_string(m) + " edges, found " +
                            std::to_string(edge_lines));
  return g;
}

std::string format_instance(const CapacitatedGraph& g) {
  std::ostringstream os;
  os << "cvc " << g.num_vertices() << ' ' << g.num_edges();
  if (g.budget) os << ' ' << *g.budget;
  os << '\n';
  for (Vertex v = 1; v <= g.num_vertices(); ++v) os << "v " << v << ' ' << g.capacity(v) << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.u << ' ' << e.v << '\n';
  return os.str();
}

Orientation parse_orientation(const CapacitatedGraph& g, std::string_view text) {
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (const auto& l : text::tokenize(text)) {
    if (l.tokens[0] != "a") throw ParseError(l.number, "expected 'a <tail> <head>'");
    text::expect_arity(l, 3);
    arcs.emplace_back(static_cast<Vertex>(text::to_int(l.tokens[1], l.number)),
                      static_cast<Vertex>(text::to_int(l.tokens[2], l.number)));
  }
  return orientation_from_arcs(g, arcs);
}

std::string format_orientation(const CapacitatedGraph& g, const Orientation& o) {
  std::ostringstream os;
  for (int e = 0; e < g.num_edges(); ++e) os << "a " << o.tail(g, e) << ' ' << o.head[e] << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

}  // namespace capcover
