#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace capcover {

/// Sets over the universe {1, ..., universe}.
struct DetectingFamily {
  int universe = 0;
  int d = 2;
  std::vector<std::vector<int>> sets;
};

inline constexpr std::uint64_t kDefaultDetectingCap = std::uint64_t{1} << 24;

/// True iff the subset-sum vector separates every pair of functions
/// U -> {0..d-1}. Checked as injectivity of f -> (sum_{x in S} f(x))_S over all
/// d^|U| functions; refuses when d^(2|U|) exceeds `cap`.
bool is_detecting(int universe, const std::vector<std::vector<int>>& family, int d,
                  std::uint64_t cap = kDefaultDetectingCap);

enum class FamilyMode { singleton, greedy };

/// singleton: all singletons. greedy: start from every nonempty subset and drop
/// sets, smallest first, while the family stays detecting; the smaller of that
/// and the singleton family is returned.
DetectingFamily build_family(int universe, int d, FamilyMode mode,
                             std::uint64_t cap = kDefaultDetectingCap);

/// One set per line, space-separated 1-based indices.
std::vector<std::vector<int>> parse_family(std::string_view text);
std::string format_family(const std::vector<std::vector<int>>& family);

}  // namespace capcover
