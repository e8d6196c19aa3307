#include <algorithm>
#include <bit>
#include <sstream>

#include "builder.hpp"
#include "capcover/reductions.hpp"
#include "text.hpp"

namespace capcover {

SmcInstance parse_smc(std::string_view body) {
  auto lines = text::tokenize(body);
  if (lines.empty() || lines[0].tokens[0] != "smc")
    throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'smc <m> <n> <b> <k>'");
  text::expect_arity(lines[0], 5);
  const int ln = lines[0].number;
  SmcInstance I;
  I.m = static_cast<int>(text::to_int(lines[0].tokens[1], ln));
  long long n = text::to_int(lines[0].tokens[2], ln);
  I.b = static_cast<int>(text::to_int(lines[0].tokens[3], ln));
  I.k = static_cast<int>(text::to_int(lines[0].tokens[4], ln));
  if (I.m < 0 || n < 0 || I.b < 1 || I.k < 0) throw ParseError(ln, "need m, n, k >= 0 and b >= 1");
  I.sets.assign(n, {});
  std::vector<char> seen(n, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] != "set" || l.tokens.size() < 2) throw ParseError(l.number, "expected 'set <j> <elements...>'");
    long long j = text::to_int(l.tokens[1], l.number);
    if (j < 1 || j > n) throw ParseError(l.number, "set index out of range");
    if (seen[j - 1]) throw ParseError(l.number, "set " + std::to_string(j) + " given twice");
    seen[j - 1] = 1;
    for (std::size_t t = 2; t < l.tokens.size(); ++t) {
      long long x = text::to_int(l.tokens[t], l.number);
      if (x < 1 || x > I.m) throw ParseError(l.number, "element out of range");
      auto& s = I.sets[j - 1];
      if (std::find(s.begin(), s.end(), x) != s.end()) throw ParseError(l.number, "repeated element");
      s.push_back(static_cast<int>(x));
    }
  }
  for (auto& s : I.sets) std::sort(s.begin(), s.end());
  return I;
}

std::string format_smc(const SmcInstance& I) {
  std::ostringstream os;
  os << "smc " << I.m << ' ' << I.sets.size() << ' ' << I.b << ' ' << I.k << '\n';
  for (std::size_t j = 0; j < I.sets.size(); ++j) {
    os << "set " << j + 1;
    for (int x : I.sets[j]) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

bool smc_brute_force(const SmcInstance& I) {
  const int n = static_cast<int>(I.sets.size());
  if (n > 30) throw CapExceeded("set multicover brute force limited to 30 sets");
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) > I.k) continue;
    std::vector<int> hits(I.m + 1, 0);
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1)
        for (int x : I.sets[j]) ++hits[x];
    bool ok = true;
    for (int x = 1; x <= I.m && ok; ++x) ok = hits[x] >= I.b;
    if (ok) return true;
  }
  return false;
}

Reduced reduce_smc(const SmcInstance& I) {
  if (I.b < 1 || I.k < 0) throw StructuralError("set multicover needs b >= 1 and k >= 0");
  const int m = I.m, n = static_cast<int>(I.sets.size());
  const int kp = m + I.k;
  detail::Builder b;
  for (int i = 0; i < m; ++i) b.vertex(I.b);
  for (int j = 0; j < n; ++j) b.vertex(0);
  for (int i = 1; i <= m; ++i)
    for (int j = 0; j < n; ++j)
      if (std::binary_search(I.sets[j].begin(), I.sets[j].end(), i)) b.edge(i, m + 1 + j);
  // capacity-0 leaves: a leaf can never stand in for a set vertex
  for (int i = 1; i <= m; ++i) b.leaves(i, kp + 1, 1);

  Reduced r;
  r.k = kp;
  r.graph = b.finish(kp);
  for (int i = 1; i <= m; ++i) r.meta.forced.push_back(i);
  for (int j = 0; j < n; ++j) r.meta.free.push_back(m + 1 + j);
  return r;
}

}  // namespace capcover
