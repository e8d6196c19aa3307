#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "builder.hpp"
#include "capcover/reductions.hpp"
#include "text.hpp"

namespace capcover {

void validate_cnf(const Cnf1in3& psi, bool strict) {
  if (psi.num_vars < 0) throw StructuralError("negative variable count");
  std::vector<int> uses(psi.num_vars + 1, 0);
  for (std::size_t j = 0; j < psi.clauses.size(); ++j) {
    const auto& c = psi.clauses[j];
    for (int t = 0; t < 3; ++t) {
      if (c[t].var < 1 || c[t].var > psi.num_vars)
        throw StructuralError("clause " + std::to_string(j + 1) + " names an unknown variable");
      ++uses[c[t].var];
    }
    if (c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var)
      throw StructuralError("clause " + std::to_string(j + 1) + " repeats a variable");
  }
  if (strict)
    for (int x = 1; x <= psi.num_vars; ++x)
      if (uses[x] > 4) throw StructuralError("variable " + std::to_string(x) + " occurs in more than 4 clauses");
}

Cnf1in3 parse_cnf(std::string_view body, bool strict) {
  auto lines = text::tokenize(body);
  std::size_t i = 0;
  while (i < lines.size() && lines[i].tokens[0] == "c") ++i;
  if (i == lines.size() || lines[i].tokens[0] != "p" || lines[i].tokens.size() != 4 || lines[i].tokens[1] != "cnf")
    throw ParseError(i < lines.size() ? lines[i].number : 0, "expected header 'p cnf <n> <m>'");
  Cnf1in3 psi;
  psi.num_vars = static_cast<int>(text::to_int(lines[i].tokens[2], lines[i].number));
  long long m = text::to_int(lines[i].tokens[3], lines[i].number);
  if (psi.num_vars < 0 || m < 0) throw ParseError(lines[i].number, "negative count in header");

  std::vector<Literal> cur;
  auto close = [&](int line) {
    if (cur.size() != 3) throw ParseError(line, "clause must have exactly three literals");
    psi.clauses.push_back({cur[0], cur[1], cur[2]});
    cur.clear();
  };
  for (++i; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] == "c") continue;
    bool terminated = false;
    for (auto tok : l.tokens) {
      long long x = text::to_int(tok, l.number);
      if (x == 0) {
        close(l.number);
        terminated = true;
      } else {
        cur.push_back({static_cast<int>(std::llabs(x)), x > 0});
        terminated = false;
      }
    }
    if (!terminated && cur.size() == 3) close(l.number);
  }
  if (!cur.empty()) throw ParseError(0, "unterminated clause at end of input");
  if (static_cast<long long>(psi.clauses.size()) != m)
    throw ParseError(0, "header declares " + std::to_string(m) + " clauses, found " +
                            std::to_string(psi.clauses.size()));
  try {
    validate_cnf(psi, strict);
  } catch (const StructuralError& e) {
    throw ParseError(0, e.what());
  }
  return psi;
}

std::string format_cnf(const Cnf1in3& psi) {
  std::ostringstream os;
  os << "p cnf " << psi.num_vars << ' ' << psi.clauses.size() << '\n';
  for (const auto& c : psi.clauses) {
    for (const auto& l : c) os << (l.positive ? l.var : -l.var) << ' ';
    os << "0\n";
  }
  return os.str();
}

bool one_in_three_brute_force(const Cnf1in3& psi) {
  if (psi.num_vars > 30) throw CapExceeded("exactly-one brute force limited to 30 variables");
  for (std::uint32_t a = 0; a < (std::uint32_t{1} << psi.num_vars); ++a) {
    bool ok = true;
    for (const auto& c : psi.clauses) {
      int t = 0;
      for (const auto& l : c) t += ((a >> (l.var - 1) & 1) != 0) == l.positive;
      if (t != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

bool grouping_ok(const Cnf1in3& psi, const FormulaGrouping& grp) {
  std::vector<int> var_group(psi.num_vars + 1, -1);
  for (std::size_t p = 0; p < grp.var_groups.size(); ++p)
    for (int x : grp.var_groups[p]) {
      if (x < 1 || x > psi.num_vars || var_group[x] >= 0) return false;
      var_group[x] = static_cast<int>(p);
    }
  for (int x = 1; x <= psi.num_vars; ++x)
    if (var_group[x] < 0) return false;
  std::vector<char> clause_seen(psi.clauses.size(), 0);
  for (const auto& cg : grp.clause_groups) {
    std::vector<int> hits(grp.var_groups.size(), 0);
    for (int j : cg) {
      if (j < 0 || j >= static_cast<int>(psi.clauses.size()) || clause_seen[j]) return false;
      clause_seen[j] = 1;
      for (const auto& l : psi.clauses[j])
        if (++hits[var_group[l.var]] > 1) return false;
    }
  }
  return std::all_of(clause_seen.begin(), clause_seen.end(), [](char c) { return c != 0; });
}

namespace {

FormulaGrouping trivial_grouping(const Cnf1in3& psi) {
  FormulaGrouping g;
  for (int x = 1; x <= psi.num_vars; ++x) g.var_groups.push_back({x});
  for (int j = 0; j < static_cast<int>(psi.clauses.size()); ++j) g.clause_groups.push_back({j});
  return g;
}

}  // namespace

FormulaGrouping group_formula(const Cnf1in3& psi, GroupingMode mode) {
  validate_cnf(psi);
  if (mode == GroupingMode::trivial) return trivial_grouping(psi);

  const int n = std::max(psi.num_vars, 1);
  const std::size_t clause_target = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
  const std::size_t var_target = std::max(1, static_cast<int>(std::log2(static_cast<double>(n))));

  FormulaGrouping g;
  // clause groups: no variable twice inside a group
  std::vector<std::vector<char>> used;
  for (int j = 0; j < static_cast<int>(psi.clauses.size()); ++j) {
    const auto& c = psi.clauses[j];
    std::size_t slot = 0;
    for (; slot < g.clause_groups.size(); ++slot) {
      if (g.clause_groups[slot].size() >= clause_target) continue;
      if (!used[slot][c[0].var] && !used[slot][c[1].var] && !used[slot][c[2].var]) break;
    }
    if (slot == g.clause_groups.size()) {
      g.clause_groups.emplace_back();
      used.emplace_back(psi.num_vars + 1, 0);
    }
    g.clause_groups[slot].push_back(j);
    for (const auto& l : c) used[slot][l.var] = 1;
  }
  // variable groups: a group touches each clause group at most once
  std::vector<std::vector<int>> occ(psi.num_vars + 1, std::vector<int>(g.clause_groups.size(), 0));
  for (std::size_t i = 0; i < g.clause_groups.size(); ++i)
    for (int j : g.clause_groups[i])
      for (const auto& l : psi.clauses[j]) ++occ[l.var][i];
  std::vector<std::vector<int>> load;
  for (int x = 1; x <= psi.num_vars; ++x) {
    std::size_t slot = 0;
    for (; slot < g.var_groups.size(); ++slot) {
      if (g.var_groups[slot].size() >= var_target) continue;
      bool fits = true;
      for (std::size_t i = 0; i < g.clause_groups.size() && fits; ++i)
        fits = load[slot][i] + occ[x][i] <= 1;
      if (fits) break;
    }
    if (slot == g.var_groups.size()) {
      g.var_groups.emplace_back();
      load.emplace_back(g.clause_groups.size(), 0);
    }
    g.var_groups[slot].push_back(x);
    for (std::size_t i = 0; i < g.clause_groups.size(); ++i) load[slot][i] += occ[x][i];
  }
  if (!grouping_ok(psi, g)) return trivial_grouping(psi);
  return g;
}

std::vector<DetectingFamily> default_families(const FormulaGrouping& grp) {
  std::vector<DetectingFamily> out;
  for (const auto& cg : grp.clause_groups) {
    int s = static_cast<int>(cg.size());
    out.push_back(build_family(s, 4, s <= 4 ? FamilyMode::greedy : FamilyMode::singleton));
  }
  return out;
}

namespace {

void check_family(const DetectingFamily& f, int universe) {
  if (f.universe != universe) throw StructuralError("family universe does not match its clause group");
  if (f.d < 4) throw StructuralError("clause-group families must be 4-detecting");
  bool ok;
  try {
    ok = is_detecting(universe, f.sets, 4);
  } catch (const CapExceeded&) {
    // too large to check exhaustively; all singletons still detect trivially
    std::vector<char> single(universe + 1, 0);
    for (const auto& s : f.sets)
      if (s.size() == 1) single[s[0]] = 1;
    ok = std::all_of(single.begin() + 1, single.end(), [](char c) { return c != 0; });
  }
  if (!ok) throw StructuralError("family is not 4-detecting");
}

}  // namespace

NaturalReduction reduce_sat_natural(const Cnf1in3& psi, const FormulaGrouping& grp,
                                    const std::vector<DetectingFamily>& families) {
  validate_cnf(psi);
  if (!grouping_ok(psi, grp)) throw StructuralError("grouping violates the one-occurrence property");
  if (families.size() != grp.clause_groups.size())
    throw StructuralError("need one detecting family per clause group");
  for (std::size_t i = 0; i < families.size(); ++i)
    check_family(families[i], static_cast<int>(grp.clause_groups[i].size()));

  const int nv = static_cast<int>(grp.var_groups.size());
  int sum_s = 0;
  for (const auto& f : families) sum_s += static_cast<int>(f.sets.size());
  const int k = 2 * nv + 2 * sum_s;

  NaturalReduction r;
  r.grouping = grp;
  r.families = families;
  detail::Builder b;
  std::vector<int> var_group(psi.num_vars + 1, 0), var_slot(psi.num_vars + 1, 0);
  for (int p = 0; p < nv; ++p) {
    const auto& vp = grp.var_groups[p];
    if (vp.size() > 20) throw CapExceeded("variable group too large to enumerate assignments");
    for (std::size_t t = 0; t < vp.size(); ++t) {
      var_group[vp[t]] = p;
      var_slot[vp[t]] = static_cast<int>(t);
    }
    Vertex u = b.vertex(1);
    r.group_hubs.push_back(u);
    std::vector<Vertex> assign;
    for (std::uint32_t q = 0; q < (std::uint32_t{1} << vp.size()); ++q) {
      Vertex v = b.vertex(0);
      assign.push_back(v);
      b.edge(u, v);
    }
    r.assignment_vertices.push_back(std::move(assign));
    b.leaves(u, k + 1);
  }

  for (std::size_t i = 0; i < grp.clause_groups.size(); ++i) {
    const auto& cg = grp.clause_groups[i];
    for (const auto& set : families[i].sets) {
      const int size = static_cast<int>(set.size());
      Vertex a = b.vertex(size);
      Vertex ac = b.vertex(nv - size);
      r.checkers.push_back({a, ac});
      // the unique clause of this set touching each variable group
      std::vector<int> touching(nv, -1);
      for (int pos : set) {
        int j = cg[pos - 1];
        for (int t = 0; t < 3; ++t) touching[var_group[psi.clauses[j][t].var]] = j * 3 + t;
      }
      for (int p = 0; p < nv; ++p) {
        const auto& assign = r.assignment_vertices[p];
        for (std::uint32_t q = 0; q < assign.size(); ++q) {
          bool satisfies = false;
          if (touching[p] >= 0) {
            const Literal& l = psi.clauses[touching[p] / 3][touching[p] % 3];
            satisfies = ((q >> var_slot[l.var] & 1) != 0) == l.positive;
          }
          b.edge(satisfies ? a : ac, assign[q]);
        }
      }
      b.leaves(a, k + 1);
      b.leaves(ac, k + 1);
    }
  }

  r.k = k;
  r.graph = b.finish(k);
  r.meta.forced = r.group_hubs;
  for (auto [a, ac] : r.checkers) {
    r.meta.forced.push_back(a);
    r.meta.forced.push_back(ac);
  }
  r.meta.groups = r.assignment_vertices;
  return r;
}

// ---------------------------------------------------------------------------

CwExpression parse_cw_expression(std::string_view body) {
  CwExpression expr;
  for (const auto& l : text::tokenize(body)) {
    text::expect_arity(l, 3);
    int a = static_cast<int>(text::to_int(l.tokens[1], l.number));
    int c = static_cast<int>(text::to_int(l.tokens[2], l.number));
    if (l.tokens[0] == "intro")
      expr.ops.push_back({CwOp::intro, a, c});
    else if (l.tokens[0] == "join")
      expr.ops.push_back({CwOp::join, a, c});
    else if (l.tokens[0] == "relabel")
      expr.ops.push_back({CwOp::relabel, a, c});
    else
      throw ParseError(l.number, "unknown expression operation '" + std::string(l.tokens[0]) + "'");
  }
  return expr;
}

std::string format_cw_expression(const CwExpression& expr) {
  static const char* names[] = {"intro", "join", "relabel"};
  std::ostringstream os;
  for (const auto& op : expr.ops) os << names[op.kind] << ' ' << op.a << ' ' << op.b << '\n';
  return os.str();
}

bool verify_cw_expression(const CwExpression& expr, const CapacitatedGraph& g) {
  auto check_label = [](int l) {
    if (l < 1 || l > kCwLabels)
      throw StructuralError("label " + std::to_string(l) + " outside 1.." + std::to_string(kCwLabels));
  };
  std::vector<std::vector<Vertex>> members(kCwLabels + 1);
  std::unordered_set<std::uint64_t> edges;
  std::unordered_set<Vertex> introduced;
  bool foreign = false;
  for (const auto& op : expr.ops) {
    switch (op.kind) {
      case CwOp::intro:
        check_label(op.b);
        if (!introduced.insert(op.a).second)
          throw StructuralError("vertex " + std::to_string(op.a) + " introduced twice");
        if (!g.has_vertex(op.a)) foreign = true;
        members[op.b].push_back(op.a);
        break;
      case CwOp::join:
        check_label(op.a);
        check_label(op.b);
        if (op.a == op.b) throw StructuralError("join of label " + std::to_string(op.a) + " with itself");
        for (Vertex x : members[op.a])
          for (Vertex y : members[op.b]) {
            Vertex lo = std::min(x, y), hi = std::max(x, y);
            edges.insert((static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
                         static_cast<std::uint32_t>(hi));
          }
        break;
      case CwOp::relabel:
        check_label(op.a);
        check_label(op.b);
        if (op.a != op.b) {
          auto& from = members[op.a];
          auto& to = members[op.b];
          to.insert(to.end(), from.begin(), from.end());
          from.clear();
        }
        break;
    }
  }
  if (foreign || static_cast<int>(introduced.size()) != g.num_vertices()) return false;
  if (static_cast<int>(edges.size()) != g.num_edges()) return false;
  for (const Edge& e : g.edges())
    if (!edges.count((static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v))) return false;
  return true;
}

CwReduction reduce_sat_cw(const Cnf1in3& psi) {
  validate_cnf(psi);
  const int n = psi.num_vars;
  const int m = static_cast<int>(psi.clauses.size());
  const int k = 8 * m + n;
  constexpr int garbage = 6, pendant = 5;

  CwReduction r;
  detail::Builder b;
  auto& ops = r.expression.ops;
  std::vector<Vertex> pos_side, neg_side;

  auto marked = [&](int demand, int label) {
    Vertex v = b.vertex(demand);
    ops.push_back({CwOp::intro, v, label});
    int first = b.num_vertices() + 1;
    b.leaves(v, k + 1);
    for (Vertex l = first; l <= b.num_vertices(); ++l) ops.push_back({CwOp::intro, l, pendant});
    ops.push_back({CwOp::join, label, pendant});
    ops.push_back({CwOp::relabel, pendant, garbage});
    r.meta.forced.push_back(v);
    return v;
  };
  // literal occurrences of x_i that `selector` is adjacent to on the given side
  auto occurrences = [&](int i, bool want_positive) {
    std::vector<int> js;
    for (int j = 0; j < m; ++j)
      for (const auto& l : psi.clauses[j])
        if (l.var == i && l.positive == want_positive) js.push_back(j);
    return js;
  };
  auto literals = [&](Vertex selector, int sel_label, int lit_label, int i, bool truth) {
    // positive side: occurrences the selector makes true; negative side: ones it makes false
    for (int side = 0; side < 2; ++side) {
      for (int j : occurrences(i, side == 0 ? truth : !truth)) {
        Vertex l = marked(j + 1, lit_label);
        b.edge(selector, l);
        ops.push_back({CwOp::join, sel_label, lit_label});
        ops.push_back({CwOp::relabel, lit_label, side == 0 ? 1 : 2});
        (side == 0 ? pos_side : neg_side).push_back(l);
      }
    }
  };

  for (int i = 1; i <= n; ++i) {
    Vertex vt = b.vertex(0);
    ops.push_back({CwOp::intro, vt, 3});
    literals(vt, 3, 4, i, true);
    Vertex vf = b.vertex(0);
    ops.push_back({CwOp::intro, vf, 4});
    b.edge(vt, vf);
    ops.push_back({CwOp::join, 3, 4});
    ops.push_back({CwOp::relabel, 3, garbage});
    literals(vf, 4, 3, i, false);
    ops.push_back({CwOp::relabel, 4, garbage});
    r.selector_true.push_back(vt);
    r.selector_false.push_back(vf);
    r.meta.groups.push_back({vt, vf});
  }
  for (int j = 0; j < m; ++j) {
    Vertex c = marked(3 * j + 1, 3);
    for (Vertex l : pos_side) b.edge(c, l);
    ops.push_back({CwOp::join, 3, 1});
    ops.push_back({CwOp::relabel, 3, garbage});
    r.clause_pos.push_back(c);
  }
  for (int j = 0; j < m; ++j) {
    Vertex c = marked(3 * j + 2, 3);
    for (Vertex l : neg_side) b.edge(c, l);
    ops.push_back({CwOp::join, 3, 2});
    ops.push_back({CwOp::relabel, 3, garbage});
    r.clause_neg.push_back(c);
  }
  r.k = k;
  r.graph = b.finish(k);
  return r;
}

}  // namespace capcover
