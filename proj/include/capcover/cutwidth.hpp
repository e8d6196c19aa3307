#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/graph.hpp"

namespace capcover {

/// A vertex ordering. order[p] is the vertex at position p+1; position(v) is 1-based.
class LinearArrangement {
 public:
  LinearArrangement() = default;
  /// Throws StructuralError unless `order` is a permutation of 1..n.
  explicit LinearArrangement(std::vector<Vertex> order);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<Vertex>& order() const { return order_; }
  Vertex at(int position) const { return order_[position - 1]; }
  int position(Vertex v) const { return pos_[v]; }

  static LinearArrangement identity(int n);

 private:
  std::vector<Vertex> order_;
  std::vector<int> pos_;
};

LinearArrangement parse_arrangement(std::string_view text);
std::string format_arrangement(const LinearArrangement& pi);

/// Edges crossing cut i (first i vertices | rest), ordered by (pos(left), pos(right)).
std::vector<int> cut_edges(const CapacitatedGraph& g, const LinearArrangement& pi, int i);

int cutwidth_of(const CapacitatedGraph& g, const LinearArrangement& pi);

/// DP cell value: minimum i-size, or unreachable. Unreachable is a separate
/// sentinel that never takes part in arithmetic.
class DpValue {
 public:
  constexpr DpValue() : raw_(kUnreachable) {}
  static constexpr DpValue unreachable() { return DpValue(); }
  static constexpr DpValue of(int v) { return DpValue(static_cast<std::uint16_t>(v)); }

  constexpr bool reachable() const { return raw_ != kUnreachable; }
  constexpr int value() const { return raw_; }
  constexpr bool operator==(const DpValue&) const = default;

 private:
  static constexpr std::uint16_t kUnreachable = 0xFFFF;
  constexpr explicit DpValue(std::uint16_t v) : raw_(v) {}
  std::uint16_t raw_;
};

/// One layer of the cut DP. Signature bit b refers to edges[b]; a set bit
/// means the edge is oriented left to right.
struct DpLayer {
  int cut_index = 0;
  std::vector<int> edges;
  std::vector<DpValue> table;              // 2^|edges| entries
  std::vector<std::uint32_t> predecessor;  // signature in the previous layer
};

struct LayerStats {
  int cut_index = 0;
  int prev_cut_size = 0;
  int cut_size = 0;
  std::uint64_t table_size = 0;
  std::uint64_t work = 0;  // predecessor scans + (target, t) probes
};

/// One transition of the recurrence, evaluated per partial signature tau on the
/// common edges C: predecessors are bucketed by how many L-edges enter v_i,
/// then each target reads the buckets using how many R-edges enter v_i.
DpLayer process_layer(const DpLayer& prev, const CapacitatedGraph& g, const LinearArrangement& pi,
                      int i, LayerStats* stats = nullptr);

DpLayer initial_layer();

struct CutDpResult {
  std::optional<int> min_size;
  std::optional<Orientation> certificate;
  std::vector<LayerStats> layers;
  /// signature[i] is the traced i-signature of the certificate (empty when infeasible).
  std::vector<std::uint32_t> traced_signatures;
};

inline constexpr int kMaxDpCutwidth = 30;

/// Runs the DP over all n layers and reconstructs an optimal orientation from
/// the stored predecessor links.
CutDpResult solve_cutdp(const CapacitatedGraph& g, const LinearArrangement& pi);

enum class ArrangementMode { exact, heuristic };

inline constexpr int kDefaultExactArrangementCap = 16;

/// Exact: subset DP minimizing the largest cut. Heuristic: greedy growth
/// followed by adjacent-swap local search; no optimality guarantee.
LinearArrangement find_arrangement(const CapacitatedGraph& g, ArrangementMode mode,
                                   int exact_cap = kDefaultExactArrangementCap);

}  // namespace capcover
