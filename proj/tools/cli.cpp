#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "capcover/cutwidth.hpp"
#include "capcover/detecting.hpp"
#include "capcover/fes.hpp"
#include "capcover/generators.hpp"
#include "capcover/graph.hpp"
#include "capcover/oracle.hpp"
#include "capcover/reductions.hpp"
#include "capcover/vertex_integrity.hpp"

namespace capcover::cli {

using json = nlohmann::json;

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

LinearArrangement arrangement_for(const CapacitatedGraph& g, const RunConfig& cfg, bool heuristic_default) {
  if (!cfg.arrangement.empty()) {
    auto pi = parse_arrangement(read_file(cfg.arrangement));
    if (pi.size() != g.num_vertices())
      throw StructuralError("arrangement has " + std::to_string(pi.size()) + " vertices, instance has " +
                            std::to_string(g.num_vertices()));
    return pi;
  }
  ArrangementMode mode = ArrangementMode::heuristic;
  if (cfg.find_arrangement == "exact")
    mode = ArrangementMode::exact;
  else if (cfg.find_arrangement.empty() && !heuristic_default && g.num_vertices() <= cfg.exact_cap)
    mode = ArrangementMode::exact;
  return find_arrangement(g, mode, cfg.exact_cap);
}

std::string pick_auto(const CapacitatedGraph& g, const RunConfig& cfg) {
  if (static_cast<int>(feedback_edge_set(g).size()) <= cfg.fes_cap) return "fes";
  auto pi = find_arrangement(g, ArrangementMode::heuristic, cfg.exact_cap);
  if (cutwidth_of(g, pi) <= cfg.ctw_cap) return "cutdp";
  if (g.num_vertices() <= cfg.oracle_cap) return "oracle";
  throw CapExceeded("no algorithm within caps (fes, cutwidth and oracle caps all exceeded)");
}

/// Smallest k accepted by a decision procedure, or nullopt when even k = n fails.
template <class Decide>
SolveResult minimize(int n, Decide&& decide) {
  for (int k = 0; k <= n; ++k) {
    Decision d = decide(k);
    if (d.yes) return {k, std::move(d.certificate)};
  }
  return {};
}

void write_or_print(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty())
    out << body;
  else
    write_file(path, body);
}

}  // namespace

int run_solve(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.input.empty(), "solve needs --input");
  const CapacitatedGraph g = parse_instance(read_file(cfg.input));
  const std::optional<int> k = cfg.k ? cfg.k : g.budget;
  json report = {{"subcommand", "solve"}, {"n", g.num_vertices()}, {"m", g.num_edges()}};

  std::string algo = cfg.algo == "auto" ? pick_auto(normalize_capacities(g), cfg) : cfg.algo;
  report["algo"] = algo;
  SolveResult res;
  std::optional<Decision> dec;
  if (algo == "oracle") {
    res = solve_exact(g, cfg.oracle_cap);
  } else if (algo == "cutdp") {
    auto pi = arrangement_for(g, cfg, cfg.algo == "auto");
    int w = cutwidth_of(g, pi);
    report["cutwidth"] = w;
    if (w > cfg.ctw_cap)
      throw CapExceeded("arrangement width " + std::to_string(w) + " exceeds cap " + std::to_string(cfg.ctw_cap));
    auto r = solve_cutdp(g, pi);
    res = {r.min_size, std::move(r.certificate)};
  } else if (algo == "vi") {
    std::optional<Modulator> mod;
    if (!cfg.modulator.empty()) mod = parse_modulator(g, read_file(cfg.modulator));
    ViStats st;
    if (k)
      dec = solve_vi(g, *k, mod, &st);
    else
      res = solve_vi_min(g, mod, &st);
    report["modulator"] = st.modulator.vertices;
    report["guesses"] = st.guesses;
  } else if (algo == "fes") {
    FesStats st;
    res = solve_fes(g, cfg.fes_cap, &st);
    report["fes"] = st.fes;
  } else if (algo == "pruned") {
    if (k)
      dec = solve_pruned(g, *k);
    else
      res = minimize(g.num_vertices(), [&](int kk) { return solve_pruned(g, kk); });
  } else if (algo == "canonical") {
    require(!cfg.meta.empty(), "--algo canonical needs --meta");
    ChoiceGroups meta = parse_choice_groups(read_file(cfg.meta));
    validate_choice_groups(g, meta);
    if (k)
      dec = solve_canonical(g, meta, *k);
    else
      res = minimize(g.num_vertices(), [&](int kk) { return solve_canonical(g, meta, kk); });
  } else {
    throw ConfigError("unknown algorithm '" + algo + "'");
  }

  if (k && !dec) {
    Decision d;
    d.yes = res.min_size && *res.min_size <= *k;
    if (d.yes) d.certificate = std::move(res.certificate);
    dec = std::move(d);
  }
  const std::optional<Orientation>& cert = dec ? dec->certificate : res.certificate;
  if (cert && !cfg.cert_out.empty()) write_file(cfg.cert_out, format_orientation(g, *cert));

  int code;
  if (dec) {
    out << "FEASIBLE " << (dec->yes ? "yes" : "no") << '\n';
    report["k"] = *k;
    report["feasible"] = dec->yes;
    code = dec->yes ? kYes : kNo;
  } else if (res.min_size) {
    out << "MINSIZE " << *res.min_size << '\n';
    report["minsize"] = *res.min_size;
    code = kYes;
  } else {
    out << "MINSIZE inf\n";
    report["minsize"] = nullptr;
    code = kNo;
  }
  if (cfg.json) out << report.dump() << '\n';
  return code;
}

int run_reduce(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.input.empty() && !cfg.output.empty(), "reduce needs --input and --output");
  const std::string body = read_file(cfg.input);
  json report = {{"subcommand", "reduce"}, {"kind", cfg.kind}};
  const Reduced* base = nullptr;
  std::string meta_extra;

  SmcInstance smc;
  Reduced smc_r;
  NaturalReduction nat;
  CwReduction cw;
  TdReduction td;
  if (cfg.kind == "smc") {
    smc = parse_smc(body);
    smc_r = reduce_smc(smc);
    base = &smc_r;
  } else if (cfg.kind == "sat-natural") {
    auto psi = parse_cnf(body);
    require(cfg.grouping == "greedy" || cfg.grouping == "trivial", "--grouping is greedy or trivial");
    auto grp = group_formula(psi, cfg.grouping == "greedy" ? GroupingMode::greedy : GroupingMode::trivial);
    nat = reduce_sat_natural(psi, grp, default_families(grp));
    for (std::size_t i = 0; i < nat.families.size(); ++i)
      write_file(cfg.output + ".families." + std::to_string(i + 1), format_family(nat.families[i].sets));
    report["var_groups"] = nat.grouping.var_groups.size();
    report["clause_groups"] = nat.grouping.clause_groups.size();
    base = &nat;
  } else if (cfg.kind == "sat-cw") {
    cw = reduce_sat_cw(parse_cnf(body));
    write_file(cfg.output + ".expr", format_cw_expression(cw.expression));
    base = &cw;
  } else if (cfg.kind == "mcc-td") {
    td = reduce_mcc_td(parse_mcc(body));
    write_file(cfg.output + ".witness", format_witness(td.witness));
    auto check = verify_td_witness(td.graph, td.witness);
    out << "CHOICE_GROUPS " << td.gamma << '\n';
    out << "DEPTH " << check.depth << '\n';
    report["choice_groups"] = td.gamma;
    report["depth"] = check.depth;
    meta_extra = "# groups 1.." + std::to_string(td.gamma) + ": choice gadgets; rest: edge selectors\n";
    base = &td;
  } else {
    throw ConfigError("--kind must be smc, sat-natural, sat-cw or mcc-td");
  }

  write_file(cfg.output, format_instance(base->graph));
  write_file(cfg.output + ".meta", meta_extra + format_choice_groups(base->meta));
  out << "K " << base->k << '\n';
  out << "VERTICES " << base->graph.num_vertices() << '\n';
  out << "EDGES " << base->graph.num_edges() << '\n';
  report["k"] = base->k;
  report["vertices"] = base->graph.num_vertices();
  report["edges"] = base->graph.num_edges();
  if (cfg.json) out << report.dump() << '\n';
  return kYes;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.cert.empty(), "verify needs --cert");
  json report = {{"subcommand", "verify"}, {"kind", cfg.kind}};
  bool pass = false;
  if (cfg.kind == "family") {
    require(cfg.universe > 0, "family verification needs --universe");
    pass = is_detecting(cfg.universe, parse_family(read_file(cfg.cert)), cfg.d);
    out << "DETECTING " << (pass ? "yes" : "no") << '\n';
  } else {
    require(!cfg.input.empty(), "verify needs --input");
    const CapacitatedGraph g = parse_instance(read_file(cfg.input));
    const std::string cert = read_file(cfg.cert);
    if (cfg.kind == "orientation") {
      auto rep = verify_orientation(g, parse_orientation(g, cert));
      pass = rep.feasible && (!cfg.k || rep.size <= *cfg.k);
      out << "VALID " << (rep.feasible ? "yes" : "no") << " SIZE " << rep.size << '\n';
      for (const auto& v : rep.violations)
        out << "VIOLATION " << v.vertex << ' ' << v.indegree << ' ' << v.capacity << '\n';
      report["size"] = rep.size;
    } else if (cfg.kind == "cutwidth") {
      auto pi = parse_arrangement(cert);
      if (pi.size() != g.num_vertices()) throw StructuralError("arrangement does not match the instance");
      int w = cutwidth_of(g, pi);
      pass = !cfg.k || w <= *cfg.k;
      out << "CUTWIDTH " << w << '\n';
      report["cutwidth"] = w;
    } else if (cfg.kind == "expression") {
      pass = verify_cw_expression(parse_cw_expression(cert), g);
      out << "VALID " << (pass ? "yes" : "no") << '\n';
    } else if (cfg.kind == "witness") {
      auto check = verify_td_witness(g, parse_witness(cert, g.num_vertices()));
      pass = check.valid && (!cfg.k || check.depth <= *cfg.k);
      out << "VALID " << (check.valid ? "yes" : "no") << " DEPTH " << check.depth << '\n';
      report["depth"] = check.depth;
    } else {
      throw ConfigError("--kind must be orientation, cutwidth, expression, witness or family");
    }
  }
  report["pass"] = pass;
  if (cfg.json) out << report.dump() << '\n';
  return pass ? kYes : kNo;
}

int run_gen(const RunConfig& cfg, std::ostream& out) {
  CapacitatedGraph g;
  if (cfg.model == "gnp")
    g = random_gnp(cfg.n, cfg.p, cfg.seed);
  else if (cfg.model == "sparse")
    g = random_sparse(cfg.n, cfg.fes, cfg.seed);
  else if (cfg.model == "layered")
    g = random_layered(cfg.n, cfg.width, cfg.seed);
  else if (cfg.model == "forest")
    g = random_forest(cfg.n, cfg.p, cfg.seed);
  else
    throw ConfigError("--model must be gnp, sparse, layered or forest");
  if (cfg.k) g.budget = *cfg.k;
  write_or_print(cfg.output, format_instance(g), out);
  return kYes;
}

int run_bench(const RunConfig& cfg, std::ostream& out) {
  const std::string model = cfg.model.empty() ? "layered" : cfg.model;
  require(model == "layered" || model == "path", "bench --model is layered or path");
  std::vector<int> widths = cfg.widths;
  if (widths.empty())
    for (int w = 4; w <= 14; ++w) widths.push_back(w);
  const int n = cfg.n > 0 ? cfg.n : 48;

  double fitted = 0;
  bool ok = true;
  json rows = json::array();
  for (int w : model == "path" ? std::vector<int>{1} : widths) {
    CapacitatedGraph g(n);
    if (model == "path") {
      for (Vertex v = 1; v < n; ++v) g.add_edge(v, v + 1);
      random_capacities(g, cfg.seed);
    } else {
      g = random_layered(n, w, cfg.seed + static_cast<std::uint64_t>(w));
    }
    auto pi = LinearArrangement::identity(n);
    auto t0 = std::chrono::steady_clock::now();
    auto r = solve_cutdp(g, pi);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    double row_c = 0;
    std::uint64_t max_table = 0, work = 0;
    bool exact = true;
    std::vector<std::uint64_t> tables, works;
    for (const auto& L : r.layers) {
      exact = exact && L.table_size == (std::uint64_t{1} << L.cut_size);
      double scale = (std::ldexp(1.0, L.prev_cut_size) + std::ldexp(1.0, L.cut_size)) * double(n) * n;
      row_c = std::max(row_c, double(L.work) / scale);
      max_table = std::max(max_table, L.table_size);
      work += L.work;
      tables.push_back(L.table_size);
      works.push_back(L.work);
    }
    fitted = std::max(fitted, row_c);
    bool row_ok = exact && row_c <= cfg.bound_c;
    ok = ok && row_ok;
    out << "ROW n=" << n << " m=" << g.num_edges() << " ctw=" << cutwidth_of(g, pi) << " max_table=" << max_table
        << " work=" << work << " c=" << row_c << " time_ms=" << ms << " minsize="
        << (r.min_size ? std::to_string(*r.min_size) : "inf") << " tables=";
    for (std::size_t i = 0; i < tables.size(); ++i) out << (i ? "," : "") << tables[i];
    out << " work_i=";
    for (std::size_t i = 0; i < works.size(); ++i) out << (i ? "," : "") << works[i];
    out << '\n';
    rows.push_back({{"n", n},
                    {"m", g.num_edges()},
                    {"ctw", cutwidth_of(g, pi)},
                    {"tables", tables},
                    {"work", works},
                    {"c", row_c},
                    {"time_ms", ms},
                    {"ok", row_ok}});
  }
  out << "FITTED_C " << fitted << '\n';
  out << "BOUND " << (ok ? "ok" : "violated") << " C=" << cfg.bound_c << '\n';
  if (cfg.json)
    out << json{{"subcommand", "bench"}, {"rows", rows}, {"fitted_c", fitted}, {"ok", ok}}.dump() << '\n';
  return ok ? kYes : kNo;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"capacitated vertex cover toolkit"};
  app.require_subcommand(1);
  std::optional<int> k;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input);
    sub->add_option("--output", cfg.output);
    sub->add_option("--k", k);
    sub->add_option("--seed", cfg.seed);
    sub->add_flag("--json", cfg.json);
  };

  auto* solve = app.add_subcommand("solve", "minimum size or decision");
  common(solve);
  solve->add_option("--algo", cfg.algo)
      ->check(CLI::IsMember({"auto", "oracle", "pruned", "canonical", "cutdp", "vi", "fes"}));
  solve->add_option("--arrangement", cfg.arrangement);
  solve->add_option("--find-arrangement", cfg.find_arrangement)->check(CLI::IsMember({"exact", "heuristic"}));
  solve->add_option("--modulator", cfg.modulator);
  solve->add_option("--meta", cfg.meta);
  solve->add_option("--cert-out", cfg.cert_out);
  solve->add_option("--oracle-cap", cfg.oracle_cap);
  solve->add_option("--fes-cap", cfg.fes_cap);
  solve->add_option("--exact-cap", cfg.exact_cap);
  solve->add_option("--ctw-cap", cfg.ctw_cap);

  auto* reduce = app.add_subcommand("reduce", "build a reduced instance");
  common(reduce);
  reduce->add_option("--kind", cfg.kind)->required();
  reduce->add_option("--grouping", cfg.grouping);

  auto* verify = app.add_subcommand("verify", "check a certificate");
  common(verify);
  verify->add_option("--kind", cfg.kind)->required();
  verify->add_option("--cert", cfg.cert);
  verify->add_option("--universe", cfg.universe);
  verify->add_option("--d", cfg.d);

  auto* gen = app.add_subcommand("gen", "random instance");
  common(gen);
  gen->add_option("--model", cfg.model)->required();
  gen->add_option("--n", cfg.n)->required();
  gen->add_option("--p", cfg.p);
  gen->add_option("--fes", cfg.fes);
  gen->add_option("--width", cfg.width);

  auto* bench = app.add_subcommand("bench", "cut DP scaling table");
  common(bench);
  bench->add_option("--model", cfg.model);
  bench->add_option("--n", cfg.n);
  bench->add_option("--widths", cfg.widths)->delimiter(',');
  bench->add_option("--bound-c", cfg.bound_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kError;
  }
  cfg.k = k;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "solve") return run_solve(cfg, out);
    if (cfg.subcommand == "reduce") return run_reduce(cfg, out);
    if (cfg.subcommand == "verify") return run_verify(cfg, out);
    if (cfg.subcommand == "gen") return run_gen(cfg, out);
    return run_bench(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace capcover::cli
