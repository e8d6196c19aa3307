#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace capcover {

/// Vertex ids are 1-based and contiguous.
using Vertex = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Objects that do not fit together (an arc that is not an edge, a bad parent map, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded; the caller asked for more than we agree to enumerate.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

struct Edge {
  Vertex u;  // u < v
  Vertex v;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

/// Simple undirected graph with a capacity per vertex and an optional budget k.
///
/// Edges are indexed in insertion order; every other structure in the library
/// (orientations, cut signatures, catalogs) refers to edges by that index.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;
  explicit CapacitatedGraph(int n);

  /// Appends a fresh vertex with the given capacity and returns its id.
  Vertex add_vertex(int capacity = 0);

  /// Throws StructuralError on loops, duplicates, and unknown endpoints.
  int add_edge(Vertex a, Vertex b);

  void set_capacity(Vertex v, int capacity);

  int num_vertices() const { return static_cast<int>(capacity_.size()) - 1; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Indices of edges incident with v.
  std::span<const int> incident(Vertex v) const { return incident_[v]; }
  int degree(Vertex v) const { return static_cast<int>(incident_[v].size()); }
  int capacity(Vertex v) const { return capacity_[v]; }

  bool has_vertex(Vertex v) const { return v >= 1 && v <= num_vertices(); }
  bool has_edge(Vertex a, Vertex b) const;
  std::optional<int> find_edge(Vertex a, Vertex b) const;

  std::optional<int> budget;

 private:
  static std::uint64_t key(Vertex a, Vertex b);

  std::vector<int> capacity_{0};  // index 0 unused
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_{{}};
  std::unordered_set<std::uint64_t> edge_keys_;
};

/// Orientation as the head of every edge, indexed like CapacitatedGraph::edges().
struct Orientation {
  std::vector<Vertex> head;

  Vertex tail(const CapacitatedGraph& g, int e) const { return g.edge(e).other(head[e]); }
};

struct Violation {
  Vertex vertex;
  int indegree;
  int capacity;
  bool operator==(const Violation&) const = default;
};

struct FeasReport {
  bool feasible = false;
  int size = 0;
  std::vector<Violation> violations;
};

/// Per-vertex in-degrees (index 0 unused). Throws StructuralError if O does not cover E(G).
std::vector<int> indegrees(const CapacitatedGraph& g, const Orientation& o);

/// Clamps capacities to [0, deg]; isolated vertices get 0.
CapacitatedGraph normalize_capacities(const CapacitatedGraph& g);

FeasReport verify_orientation(const CapacitatedGraph& g, const Orientation& o);

/// Builds an orientation from (tail, head) arcs; every edge must appear exactly once.
Orientation orientation_from_arcs(const CapacitatedGraph& g,
                                  std::span<const std::pair<Vertex, Vertex>> arcs);

/// Assigns each edge to an endpoint in `selected` without exceeding capacities.
///
/// Edges with exactly one selected endpoint are forced; the remaining edges
/// (both endpoints selected) go through a unit-capacity flow network
/// source -> edge -> endpoint -> sink. Returns nullopt when some edge has no
/// selected endpoint or the flow cannot route all of them.
std::optional<Orientation> assign_edges(const CapacitatedGraph& g,
                                        std::span<const Vertex> selected);

/// Reusable form of assign_edges for hot enumeration loops. Membership is a
/// 0/1 vector indexed by vertex id.
class EdgeAssigner {
 public:
  explicit EdgeAssigner(const CapacitatedGraph& g);

  bool feasible(const std::vector<char>& in_set);
  std::optional<Orientation> assign(const std::vector<char>& in_set);

 private:
  bool run(const std::vector<char>& in_set, Orientation* out);

  const CapacitatedGraph& g_;
  std::vector<int> residual_;
  std::vector<int> shared_;  // edges with both endpoints selected
};

// ---- text formats ----

CapacitatedGraph parse_instance(std::string_view text);
std::string format_instance(const CapacitatedGraph& g);

/// `a <tail> <head>` lines, order irrelevant.
Orientation parse_orientation(const CapacitatedGraph& g, std::string_view text);
std::string format_orientation(const CapacitatedGraph& g, const Orientation& o);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace capcover
