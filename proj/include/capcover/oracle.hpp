#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/graph.hpp"

namespace capcover {

/// Canonical solution space emitted by the reductions: every forced vertex,
/// exactly one vertex per group, and any subset of the free vertices.
struct ChoiceGroups {
  std::vector<Vertex> forced;
  std::vector<std::vector<Vertex>> groups;
  std::vector<Vertex> free;
};

/// Throws StructuralError unless forced, groups and free are pairwise disjoint subsets of V(g).
void validate_choice_groups(const CapacitatedGraph& g, const ChoiceGroups& meta);

ChoiceGroups parse_choice_groups(std::string_view text);
std::string format_choice_groups(const ChoiceGroups& meta);

/// Optimization answer. `min_size` is empty when no feasible orientation exists.
struct SolveResult {
  std::optional<int> min_size;
  std::optional<Orientation> certificate;
};

struct Decision {
  bool yes = false;
  std::optional<Orientation> certificate;
};

inline constexpr int kDefaultOracleVertexCap = 20;
inline constexpr std::uint64_t kDefaultPrunedSearchCap = std::uint64_t{1} << 22;

/// Exhaustive minimum: candidate sets S by increasing size, lexicographic within a
/// size, each tested with assign_edges. The first success is optimal.
SolveResult solve_exact(const CapacitatedGraph& g, int max_vertices = kDefaultOracleVertexCap);

/// Decision "size <= k" with two sound reductions before enumeration:
///  R1  a vertex with more than k pendant leaves is forced into S;
///  R2  leaves of one pendant star are interchangeable, so only how many of them
///      are selected is enumerated.
Decision solve_pruned(const CapacitatedGraph& g, int k,
                      std::uint64_t max_candidates = kDefaultPrunedSearchCap);

/// Decision restricted to the canonical space of `meta`. Complete only over that
/// space; the reductions that emit `meta` guarantee optimal solutions live in it.
Decision solve_canonical(const CapacitatedGraph& g, const ChoiceGroups& meta, int k);

}  // namespace capcover
