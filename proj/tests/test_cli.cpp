#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "capcover/fes.hpp"
#include "capcover/graph.hpp"
#include "capcover/oracle.hpp"
#include "cli.hpp"

using namespace capcover;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "capcover");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = capcover::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path root;
  TempDir() {
    root = fs::temp_directory_path() / ("capcover_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~TempDir() { fs::remove_all(root); }
  std::string file(const std::string& name, const std::string& body) const {
    auto p = (root / name).string();
    write_file(p, body);
    return p;
  }
  std::string path(const std::string& name) const { return (root / name).string(); }
};

const char* kTriangle = "cvc 3 3\nv 1 1\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n";
const char* kK2 = "cvc 2 1\nv 1 1\nv 2 1\ne 1 2\n";

}  // namespace

TEST_CASE("solve") {
  TempDir t;
  auto tri = t.file("tri.cvc", kTriangle);
  auto r = run({"solve", "--input", tri, "--algo", "oracle"});
  CHECK(r.code == 0);
  CHECK(r.out == "MINSIZE 3\n");

  auto k2 = t.file("k2.cvc", kK2);
  r = run({"solve", "--input", k2, "--algo", "cutdp", "--k", "0"});
  CHECK(r.code == 1);
  CHECK(r.out == "FEASIBLE no\n");
  r = run({"solve", "--input", k2, "--algo", "cutdp", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "FEASIBLE yes\n");

  auto empty = t.file("empty.cvc", "cvc 3 0\nv 1 0\nv 2 0\nv 3 0\n");
  auto meta = t.file("empty.meta", "free 1 2 3\n");
  for (std::string algo : {"auto", "oracle", "pruned", "cutdp", "vi", "fes"}) {
    r = run({"solve", "--input", empty, "--algo", algo});
    CHECK(r.out == "MINSIZE 0\n");
    CHECK(r.code == 0);
  }
  r = run({"solve", "--input", empty, "--algo", "canonical", "--meta", meta});
  CHECK(r.out == "MINSIZE 0\n");

  auto bad = t.file("bad.cvc", "cvc 3 3\nv 1 0\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n");
  r = run({"solve", "--input", bad});
  CHECK(r.code == 1);
  CHECK(r.out == "MINSIZE inf\n");

  auto budget = t.file("budget.cvc", "cvc 3 3 2\nv 1 1\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n");
  r = run({"solve", "--input", budget, "--algo", "fes"});
  CHECK(r.code == 1);
  CHECK(r.out == "FEASIBLE no\n");
  r = run({"solve", "--input", budget, "--algo", "fes", "--k", "3"});
  CHECK(r.out == "FEASIBLE yes\n");

  r = run({"solve", "--input", tri, "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"minsize\":3") != std::string::npos);
  CHECK(r.out.find("\"algo\":\"fes\"") != std::string::npos);
}

TEST_CASE("solve errors exit 2") {
  TempDir t;
  CHECK(run({"solve", "--input", t.path("missing.cvc")}).code == 2);
  auto loop = t.file("loop.cvc", "cvc 1 1\nv 1 1\ne 1 1\n");
  auto r = run({"solve", "--input", loop});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  auto tri = t.file("tri.cvc", kTriangle);
  CHECK(run({"solve", "--input", tri, "--algo", "nope"}).code == 2);
  CHECK(run({"solve", "--input", tri, "--algo", "canonical"}).code == 2);
  CHECK(run({"solve", "--input", tri, "--algo", "oracle", "--oracle-cap", "2"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("certificates and verify") {
  TempDir t;
  auto tri = t.file("tri.cvc", "cvc 3 3\nv 1 2\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n");
  auto cert = t.path("tri.cert");
  auto r = run({"solve", "--input", tri, "--algo", "cutdp", "--cert-out", cert});
  REQUIRE(r.code == 0);
  CHECK(run({"verify", "--kind", "orientation", "--input", tri, "--cert", cert}).code == 0);

  // point every arc at 2, whose capacity is 1
  auto tampered = t.file("bad.cert", "a 1 2\na 3 2\na 1 3\n");
  r = run({"verify", "--kind", "orientation", "--input", tri, "--cert", tampered});
  CHECK(r.code == 1);
  CHECK(r.out.find("VIOLATION 2 2 1") != std::string::npos);
  auto foreign = t.file("foreign.cert", "a 1 2\na 2 3\na 3 4\n");
  CHECK(run({"verify", "--kind", "orientation", "--input", tri, "--cert", foreign}).code == 2);

  auto k2 = t.file("k2.cvc", kK2);
  auto seven = t.file("seven.expr", "intro 1 7\nintro 2 2\njoin 7 2\n");
  CHECK(run({"verify", "--kind", "expression", "--input", k2, "--cert", seven}).code == 2);
  auto good = t.file("good.expr", "intro 1 1\nintro 2 2\njoin 1 2\n");
  CHECK(run({"verify", "--kind", "expression", "--input", k2, "--cert", good}).code == 0);
  auto missing = t.file("miss.expr", "intro 1 1\nintro 2 2\n");
  CHECK(run({"verify", "--kind", "expression", "--input", k2, "--cert", missing}).code == 1);

  auto order = t.file("k2.arr", "arrangement 2\n2 1\n");
  r = run({"verify", "--kind", "cutwidth", "--input", k2, "--cert", order});
  CHECK(r.code == 0);
  CHECK(r.out == "CUTWIDTH 1\n");
  CHECK(run({"verify", "--kind", "cutwidth", "--input", k2, "--cert", order, "--k", "0"}).code == 1);

  auto w = t.file("k2.witness", "parent 1 0\nparent 2 1\n");
  r = run({"verify", "--kind", "witness", "--input", k2, "--cert", w});
  CHECK(r.code == 0);
  CHECK(r.out == "VALID yes DEPTH 2\n");
  auto flat = t.file("flat.witness", "parent 1 0\nparent 2 0\n");
  CHECK(run({"verify", "--kind", "witness", "--input", k2, "--cert", flat}).code == 1);

  auto fam = t.file("fam.txt", "1\n2\n");
  CHECK(run({"verify", "--kind", "family", "--cert", fam, "--universe", "2", "--d", "2"}).code == 0);
  auto pair = t.file("pair.txt", "1 2\n");
  CHECK(run({"verify", "--kind", "family", "--cert", pair, "--universe", "2", "--d", "2"}).code == 1);
}

TEST_CASE("reduce") {
  TempDir t;
  auto smc = t.file("ex.smc", "smc 1 1 1 1\nset 1 1\n");
  auto out = t.path("smc.cvc");
  auto r = run({"reduce", "--kind", "smc", "--input", smc, "--output", out});
  CHECK(r.code == 0);
  CHECK(r.out.find("K 2\n") != std::string::npos);
  CHECK(parse_instance(read_file(out)).budget == 2);
  r = run({"solve", "--input", out, "--algo", "canonical", "--meta", out + ".meta"});
  CHECK(r.out == "FEASIBLE yes\n");

  auto one = t.file("one.cnf", "p cnf 3 1\n1 2 3 0\n");
  auto cw = t.path("cw.cvc");
  r = run({"reduce", "--kind", "sat-cw", "--input", one, "--output", cw});
  CHECK(r.code == 0);
  CHECK(parse_instance(read_file(cw)).budget == 11);
  CHECK(run({"verify", "--kind", "expression", "--input", cw, "--cert", cw + ".expr"}).code == 0);
  r = run({"solve", "--input", cw, "--algo", "canonical", "--meta", cw + ".meta"});
  CHECK(r.out == "FEASIBLE yes\n");

  auto nat = t.path("nat.cvc");
  r = run({"reduce", "--kind", "sat-natural", "--input", one, "--output", nat, "--grouping", "trivial"});
  CHECK(r.code == 0);
  CHECK(fs::exists(nat + ".families.1"));
  CHECK(run({"verify", "--kind", "family", "--cert", nat + ".families.1", "--universe", "1", "--d", "4"}).code == 0);
  r = run({"solve", "--input", nat, "--algo", "canonical", "--meta", nat + ".meta"});
  CHECK(r.out == "FEASIBLE yes\n");

  auto mcc = t.file("ex.mcc", "mcc 2 2\nclass 1 1 2\nclass 2 3 4\ne 2 3\n");
  auto td = t.path("td.cvc");
  r = run({"reduce", "--kind", "mcc-td", "--input", mcc, "--output", td});
  CHECK(r.code == 0);
  CHECK(r.out.find("CHOICE_GROUPS 12\n") != std::string::npos);
  auto meta = parse_choice_groups(read_file(td + ".meta"));
  CHECK(meta.groups.size() == 12 + 4);
  CHECK(run({"verify", "--kind", "witness", "--input", td, "--cert", td + ".witness"}).code == 0);

  auto broken = t.file("broken.mcc", "mcc 2 2\nclass 1 1 2\nclass 2 3 4\ne 1 2\n");
  CHECK(run({"reduce", "--kind", "mcc-td", "--input", broken, "--output", td}).code == 2);
  CHECK(run({"reduce", "--kind", "smc", "--input", one, "--output", out}).code == 2);
}

TEST_CASE("gen") {
  TempDir t;
  auto a = run({"gen", "--model", "gnp", "--n", "6", "--p", "0.5", "--seed", "7"});
  auto b = run({"gen", "--model", "gnp", "--n", "6", "--p", "0.5", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run({"gen", "--model", "gnp", "--n", "6", "--p", "0.5", "--seed", "8"}).out);

  auto path = t.path("sparse.cvc");
  CHECK(run({"gen", "--model", "sparse", "--n", "10", "--fes", "3", "--output", path}).code == 0);
  CHECK(feedback_edge_set(parse_instance(read_file(path))).size() == 3);

  auto zero = run({"gen", "--model", "gnp", "--n", "5", "--p", "0"});
  CHECK(parse_instance(zero.out).num_edges() == 0);

  CHECK(run({"gen", "--model", "sparse", "--n", "3", "--fes", "5"}).code == 2);
  CHECK(run({"gen", "--model", "gnp", "--n", "3", "--p", "1.5"}).code == 2);
  CHECK(run({"gen", "--model", "layered", "--n", "3", "--width", "9"}).code == 2);
  CHECK(run({"gen", "--model", "blob", "--n", "3"}).code == 2);

  auto g = parse_instance(run({"gen", "--model", "gnp", "--n", "8", "--p", "0.6", "--seed", "2"}).out);
  for (Vertex v = 1; v <= 8; ++v) {
    if (g.degree(v) == 0) continue;
    CHECK(g.capacity(v) >= 1);
    CHECK(g.capacity(v) <= g.degree(v));
  }
}

TEST_CASE("bench") {
  auto r = run({"bench", "--model", "path", "--n", "12"});
  CHECK(r.code == 0);
  auto tables = r.out.substr(r.out.find("tables=") + 7);
  tables = tables.substr(0, tables.find(' '));
  CHECK(tables == "2,2,2,2,2,2,2,2,2,2,2,1");

  r = run({"bench", "--widths", "8,9", "--n", "30"});
  CHECK(r.code == 0);
  CHECK(r.out.find("max_table=256 ") != std::string::npos);
  CHECK(r.out.find("max_table=512 ") != std::string::npos);
  CHECK(r.out.find("BOUND ok") != std::string::npos);
}
