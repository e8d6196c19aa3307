#pragma once

#include <cstdint>

#include "capcover/graph.hpp"

namespace capcover {

/// Capacities uniform in [1, deg] (0 on isolated vertices), drawn in vertex order.
void random_capacities(CapacitatedGraph& g, std::uint64_t seed);

/// G(n, p); pairs visited in lexicographic order.
CapacitatedGraph random_gnp(int n, double p, std::uint64_t seed);

/// Connected graph with exactly `fes` edges beyond a random spanning tree.
CapacitatedGraph random_sparse(int n, int fes, std::uint64_t seed);

/// Random forest: each vertex after the first joins an earlier one with probability `attach`.
CapacitatedGraph random_forest(int n, double attach, std::uint64_t seed);

/// Edges added in random order while every cut of the identity arrangement
/// stays <= width; throws StructuralError if width is not reached.
CapacitatedGraph random_layered(int n, int width, std::uint64_t seed);

}  // namespace capcover
