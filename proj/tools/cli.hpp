#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace capcover::cli {

enum Exit { kYes = 0, kNo = 1, kError = 2 };

struct RunConfig {
  std::string subcommand;
  std::string algo = "auto";
  std::string kind;
  std::string model;
  std::string input, output, cert, cert_out;
  std::string arrangement, find_arrangement, modulator, meta;
  std::string grouping = "greedy";
  std::optional<int> k;
  std::uint64_t seed = 1;
  bool json = false;

  int n = 0;
  double p = 0.5;
  int fes = 0;
  int width = 0;
  int universe = 0;
  int d = 2;
  std::vector<int> widths;
  double bound_c = 2.0;

  int oracle_cap = 20;
  int fes_cap = 22;
  int exact_cap = 16;
  int ctw_cap = 20;
  int modulator_cap = 18;
};

int run_solve(const RunConfig& cfg, std::ostream& out);
int run_reduce(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_gen(const RunConfig& cfg, std::ostream& out);
int run_bench(const RunConfig& cfg, std::ostream& out);

/// Parses argv, dispatches, and maps library exceptions to exit 2.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace capcover::cli
