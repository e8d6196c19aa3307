#include "capcover/generators.hpp"

#include <algorithm>
#include <random>

namespace capcover {

void random_capacities(CapacitatedGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    int deg = g.degree(v);
    if (deg == 0) {
      g.set_capacity(v, 0);
      continue;
    }
    std::uniform_int_distribution<int> pick(1, deg);
    g.set_capacity(v, pick(rng));
  }
}

CapacitatedGraph random_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0 || p < 0 || p > 1) throw StructuralError("G(n,p) needs n >= 0 and 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  CapacitatedGraph g(n);
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  random_capacities(g, seed);
  return g;
}

CapacitatedGraph random_sparse(int n, int fes, std::uint64_t seed) {
  if (n < 1 || fes < 0) throw StructuralError("sparse model needs n >= 1 and fes >= 0");
  long long room = static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
  if (fes > room) throw StructuralError("fes " + std::to_string(fes) + " impossible on " + std::to_string(n) + " vertices");
  std::mt19937_64 rng(seed);
  CapacitatedGraph g(n);
  for (Vertex v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    g.add_edge(pick(rng), v);
  }
  std::uniform_int_distribution<int> any(1, n);
  for (int added = 0; added < fes;) {
    Vertex a = any(rng), b = any(rng);
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(a, b);
    ++added;
  }
  random_capacities(g, seed);
  return g;
}

CapacitatedGraph random_forest(int n, double attach, std::uint64_t seed) {
  if (n < 0) throw StructuralError("forest model needs n >= 0");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(attach);
  CapacitatedGraph g(n);
  for (Vertex v = 2; v <= n; ++v) {
    if (!coin(rng)) continue;
    std::uniform_int_distribution<int> pick(1, v - 1);
    g.add_edge(pick(rng), v);
  }
  random_capacities(g, seed);
  return g;
}

CapacitatedGraph random_layered(int n, int width, std::uint64_t seed) {
  if (n < 2 || width < 1) throw StructuralError("layered model needs n >= 2 and width >= 1");
  std::mt19937_64 rng(seed);
  // short edges only, so the width is reached locally everywhere
  const int span = std::max(2, width);
  std::vector<std::pair<Vertex, Vertex>> cand;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= std::min(n, u + span); ++v) cand.push_back({u, v});
  std::shuffle(cand.begin(), cand.end(), rng);
  CapacitatedGraph g(n);
  std::vector<int> cut(n + 1, 0);  // cut[i]: edges crossing between positions i and i+1
  int best = 0;
  for (auto [u, v] : cand) {
    bool fits = true;
    for (int i = u; i < v && fits; ++i) fits = cut[i] < width;
    if (!fits) continue;
    g.add_edge(u, v);
    for (int i = u; i < v; ++i) best = std::max(best, ++cut[i]);
  }
  if (best != width)
    throw StructuralError("layered model reached width " + std::to_string(best) + ", wanted " + std::to_string(width));
  random_capacities(g, seed);
  return g;
}

}  // namespace capcover
