#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capcover/detecting.hpp"
#include "capcover/graph.hpp"
#include "capcover/oracle.hpp"

namespace capcover {

/// Graph plus budget plus the canonical solution space. graph.budget == k.
struct Reduced {
  CapacitatedGraph graph;
  int k = 0;
  ChoiceGroups meta;
};

// ---- set multicover ----

struct SmcInstance {
  int m = 0;  // universe [m]
  int b = 1;
  int k = 0;
  std::vector<std::vector<int>> sets;  // S_1..S_n
};

SmcInstance parse_smc(std::string_view text);
std::string format_smc(const SmcInstance& I);

/// At most k sets covering every element at least b times (exhaustive).
bool smc_brute_force(const SmcInstance& I);

/// Element vertices 1..m, set vertices m+1..m+n, then k'+1 leaves per element.
/// Leaves get capacity 0, so an element in fewer than b sets cannot be served by them.
Reduced reduce_smc(const SmcInstance& I);

// ---- exactly-one 3-SAT ----

struct Literal {
  int var;  // 1-based
  bool positive;
};

struct Cnf1in3 {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
};

/// DIMACS: `p cnf <n> <m>`, then clauses of three literals, optionally 0-terminated.
/// `strict` additionally bounds every variable to at most 4 clauses.
Cnf1in3 parse_cnf(std::string_view text, bool strict = false);
std::string format_cnf(const Cnf1in3& psi);
void validate_cnf(const Cnf1in3& psi, bool strict = false);

bool one_in_three_brute_force(const Cnf1in3& psi);

struct FormulaGrouping {
  std::vector<std::vector<int>> var_groups;     // variable ids
  std::vector<std::vector<int>> clause_groups;  // 0-based clause indices
};

enum class GroupingMode { trivial, greedy };

/// Partitions check plus: for every (V_p, C_i) at most one occurrence of a
/// variable of V_p in the clauses of C_i.
bool grouping_ok(const Cnf1in3& psi, const FormulaGrouping& grp);

FormulaGrouping group_formula(const Cnf1in3& psi, GroupingMode mode);

/// One 4-detecting family per clause group (greedy when small, singletons otherwise).
std::vector<DetectingFamily> default_families(const FormulaGrouping& grp);

struct NaturalReduction : Reduced {
  FormulaGrouping grouping;
  std::vector<DetectingFamily> families;
  std::vector<Vertex> group_hubs;                       // u_p
  std::vector<std::vector<Vertex>> assignment_vertices;  // V_p, index q = bit pattern
  std::vector<std::pair<Vertex, Vertex>> checkers;      // (a_ij, a'_ij) in (i, j) order
};

/// Refuses (StructuralError) when the grouping or a family fails its check.
NaturalReduction reduce_sat_natural(const Cnf1in3& psi, const FormulaGrouping& grp,
                                    const std::vector<DetectingFamily>& families);

// ---- linear clique-width expressions ----

struct CwOp {
  enum Kind { intro, join, relabel } kind;
  int a;  // intro: vertex; join/relabel: first label
  int b;  // intro: label; join/relabel: second label
};

struct CwExpression {
  std::vector<CwOp> ops;
};

inline constexpr int kCwLabels = 6;

CwExpression parse_cw_expression(std::string_view text);
std::string format_cw_expression(const CwExpression& expr);

/// Replays the script. Throws StructuralError on a label outside 1..6, a vertex
/// introduced twice, or a join of a label with itself. Returns whether the
/// result has exactly the vertices and edges of g.
bool verify_cw_expression(const CwExpression& expr, const CapacitatedGraph& g);

struct CwReduction : Reduced {
  CwExpression expression;
  std::vector<Vertex> selector_true, selector_false;  // v_i, v̄_i
  std::vector<Vertex> clause_pos, clause_neg;          // c_j^+, c_j^-
};

CwReduction reduce_sat_cw(const Cnf1in3& psi);

// ---- multicolored clique to bounded tree-depth ----

struct MccInstance {
  int k = 0;
  int n = 0;
  std::vector<std::vector<int>> classes;  // vertex ids per class
  std::vector<std::pair<int, int>> edges;
};

MccInstance parse_mcc(std::string_view text);
std::string format_mcc(const MccInstance& I);

/// Index choice s (0-based per class) of a multicolored clique, if any.
std::optional<std::vector<int>> mcc_brute_force(const MccInstance& I);

struct TreedepthWitness {
  std::vector<Vertex> parent;  // index by vertex, 0 = root, index 0 unused
};

TreedepthWitness parse_witness(std::string_view text, int n);
std::string format_witness(const TreedepthWitness& w);

struct WitnessCheck {
  bool valid = false;
  int depth = 0;
};

WitnessCheck verify_td_witness(const CapacitatedGraph& g, const TreedepthWitness& w);

struct TdReduction : Reduced {
  int k_padded = 0;
  int n = 0;
  int gamma = 0;  // choice-gadget instances
  int delta = 0;  // marked vertices
  TreedepthWitness witness;

  struct ChoiceInstance {
    int cls;                      // 0-based class
    Vertex hub;                   // x̂
    std::vector<Vertex> options;  // v_1..v_n
  };
  struct LeafGadget {
    int cls_a, cls_b;
    Vertex hub;  // x̂_{i,i'}
    std::vector<std::pair<std::pair<int, int>, Vertex>> edges;  // ((j, j'), v_e), 0-based j
  };
  std::vector<ChoiceInstance> instances;
  std::vector<LeafGadget> leaves;
};

/// Refuses (StructuralError) when a class is not independent or sizes disagree.
TdReduction reduce_mcc_td(const MccInstance& I);

/// The solution induced by a clique choice s: all marked
/// vertices, option s(i) of every instance of class i, and v_e of every leaf
/// gadget for the edge picked by s. `s` covers the original classes; padded
/// classes use index 0.
std::vector<Vertex> td_forward_solution(const TdReduction& r, std::span<const int> s);

}  // namespace capcover
