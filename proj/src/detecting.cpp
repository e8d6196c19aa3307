#include "capcover/detecting.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "capcover/graph.hpp"
#include "text.hpp"

namespace capcover {

namespace {

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > limit / std::max<std::uint64_t>(base, 1)) return limit + 1;
    out *= base;
  }
  return out;
}

}  // namespace

bool is_detecting(int universe, const std::vector<std::vector<int>>& family, int d, std::uint64_t cap) {
  if (universe < 0 || d < 2) throw StructuralError("detecting check needs |U| >= 0 and d >= 2");
  for (const auto& s : family)
    for (int x : s)
      if (x < 1 || x > universe) throw StructuralError("set element " + std::to_string(x) + " outside U");
  if (power(d, 2 * universe, cap) > cap)
    throw CapExceeded("d^(2|U|) exceeds the detecting-family cap");

  const std::uint64_t count = power(d, universe, cap);
  // sums are at most |U|(d-1), so a radix of |U|(d-1)+1 packs the vector;
  // fall back to strings when it does not fit in 64 bits
  const std::uint64_t radix = static_cast<std::uint64_t>(universe) * (d - 1) + 1;
  bool packed = power(radix, static_cast<int>(family.size()), ~std::uint64_t{0} >> 1) <= (~std::uint64_t{0} >> 1);
  std::unordered_set<std::uint64_t> seen_packed;
  std::unordered_set<std::string> seen_text;
  std::vector<int> f(universe + 1, 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (int x = 1; x <= universe; ++x) {
      f[x] = static_cast<int>(rest % d);
      rest /= d;
    }
    std::uint64_t key = 0;
    std::string skey;
    for (const auto& s : family) {
      int sum = 0;
      for (int x : s) sum += f[x];
      if (packed)
        key = key * radix + sum;
      else
        skey += std::to_string(sum) + ',';
    }
    bool fresh = packed ? seen_packed.insert(key).second : seen_text.insert(skey).second;
    if (!fresh) return false;
  }
  return true;
}

DetectingFamily build_family(int universe, int d, FamilyMode mode, std::uint64_t cap) {
  DetectingFamily fam{universe, d, {}};
  for (int x = 1; x <= universe; ++x) fam.sets.push_back({x});
  if (mode == FamilyMode::singleton || universe <= 1) return fam;
  if (universe > 20) throw CapExceeded("greedy family construction limited to |U| <= 20");

  std::vector<std::vector<int>> all;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << universe); ++mask) {
    std::vector<int> s;
    for (int x = 0; x < universe; ++x)
      if (mask >> x & 1) s.push_back(x + 1);
    all.push_back(std::move(s));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<std::vector<int>> cur = all;
  for (const auto& s : all) {
    auto trial = cur;
    trial.erase(std::find(trial.begin(), trial.end(), s));
    if (is_detecting(universe, trial, d, cap)) cur = std::move(trial);
  }
  if (cur.size() < fam.sets.size()) fam.sets = std::move(cur);
  return fam;
}

std::vector<std::vector<int>> parse_family(std::string_view body) {
  std::vector<std::vector<int>> out;
  for (const auto& l : text::tokenize(body)) {
    std::vector<int> s;
    for (auto tok : l.tokens) s.push_back(static_cast<int>(text::to_int(tok, l.number)));
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_family(const std::vector<std::vector<int>>& family) {
  std::ostringstream os;
  for (const auto& s : family) {
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace capcover
