#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/graph.hpp"
#include "capcover/oracle.hpp"

namespace capcover {

struct Modulator {
  std::vector<Vertex> vertices;  // U, sorted
  int vi = 0;                    // |U| + largest component of G - U
};

inline constexpr int kDefaultModulatorCap = 18;

/// Connected components of G - removed, each sorted, ordered by smallest id.
std::vector<std::vector<Vertex>> components_without(const CapacitatedGraph& g,
                                                    const std::vector<char>& removed);

/// Evaluates |U| + max component size for a given U.
Modulator modulator_from(const CapacitatedGraph& g, std::vector<Vertex> U);

/// Minimum vertex integrity with a witnessing U (exact search, refuses above cap).
Modulator compute_modulator(const CapacitatedGraph& g, int cap = kDefaultModulatorCap);

/// Modulator minimizing the guess-times-catalog work estimate
/// |U| + |E(G[U])| + log2(sum_j 2^|F_j|). Used by solve_vi when no U is supplied.
Modulator choose_work_modulator(const CapacitatedGraph& g, int cap = kDefaultModulatorCap);

Modulator parse_modulator(const CapacitatedGraph& g, std::string_view text);
std::string format_modulator(const Modulator& m);

struct ModulatorGuess {
  std::vector<Vertex> selected;     // S, subset of U
  std::vector<int> internal_edges;  // E(G[U]) in edge-index order
  std::vector<Vertex> internal_heads;
  std::vector<int> residual;        // aligned with U
};

/// Calls `visit` for each valid guess; S by increasing size then lexicographic,
/// O_U by binary counting over internal_edges (bit set = head is the larger id).
/// Returns the number of valid guesses visited. `visit` may return false to stop.
std::uint64_t for_each_guess(const CapacitatedGraph& g, std::span<const Vertex> U,
                             const std::function<bool(const ModulatorGuess&)>& visit);

std::vector<ModulatorGuess> enumerate_guesses(const CapacitatedGraph& g, std::span<const Vertex> U);

struct ComponentCatalog {
  int component = 0;
  std::vector<Vertex> vertices;  // C^j
  std::vector<int> edges;        // F^j: edges with an endpoint in C^j
  int modulator_size = 0;
  // option q: loads[q * modulator_size + i] = a_i, sizes[q] = d, bits[q] = orientation of F^j
  std::vector<std::uint16_t> loads;
  std::vector<int> sizes;
  std::vector<std::uint64_t> bits;
  std::uint64_t valid_orientations = 0;  // counted with multiplicity

  std::size_t size() const { return sizes.size(); }
  int load(std::size_t q, int i) const { return loads[q * modulator_size + i]; }
  Vertex head(std::size_t q, int f, const CapacitatedGraph& g) const;
};

/// Valid partial orientations of F^j for the guess: nothing oriented into U \ S,
/// capacities of C^j respected. Built edge by edge over (in-degree, load)
/// profiles, so orientations with equal (a, d) collapse into one option with a
/// representative orientation. Options are sorted by (a, d).
/// Throws CapExceeded when |F^j| > 62 or a profile does not fit 64 bits.
ComponentCatalog component_catalog(const CapacitatedGraph& g, std::span<const Vertex> U,
                                   std::span<const Vertex> selected,
                                   std::span<const Vertex> component, int j);

struct BlockSelection {
  std::optional<int> min_size;  // empty = infeasible
  std::vector<int> choice;      // option index per catalog
};

/// Exact min of sum d over one option per catalog with sum a <= residual,
/// by DP over load vectors with coordinate i capped at min(b_i, max possible load).
BlockSelection solve_block_selection(std::span<const ComponentCatalog> catalogs,
                                     std::span<const int> residual);

struct ViStats {
  Modulator modulator;
  int internal_edges = 0;
  std::uint64_t guesses = 0;
  std::uint64_t discarded = 0;
  std::uint64_t catalog_options = 0;
};

Decision solve_vi(const CapacitatedGraph& g, int k, std::optional<Modulator> modulator = {},
                  ViStats* stats = nullptr);

/// Optimization form: minimum over guesses of |S| + block-selection minimum.
SolveResult solve_vi_min(const CapacitatedGraph& g, std::optional<Modulator> modulator = {},
                         ViStats* stats = nullptr);

}  // namespace capcover
