#pragma once

// Possible rowsums of B, C, D: x^2 + y^2 + z^2 = 4n - 1 with
// x = y = z = n (mod 4).

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <vector>

#include "goodmat/error.hpp"

namespace goodmat {

using SquareTriple = std::array<int, 3>;

struct RowsumTriple {
  int x = 0, y = 0, z = 0;  // sorted x <= y <= z

  bool contains(int v) const { return x == v || y == v || z == v; }

  friend bool operator==(const RowsumTriple&, const RowsumTriple&) = default;
  friend auto operator<=>(const RowsumTriple&, const RowsumTriple&) = default;
};

/// All multisets {a <= b <= c} of nonnegative integers with a^2 + b^2 + c^2 = 4n - 1.
inline std::vector<SquareTriple> three_squares(int n) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("three_squares needs an odd positive order");
  const int target = 4 * n - 1;
  std::vector<SquareTriple> out;
  for (int a = 0; 3 * a * a <= target; ++a) {
    for (int b = a; a * a + 2 * b * b <= target; ++b) {
      const int rest = target - a * a - b * b;
      int c = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rest))));
      while (c * c > rest) --c;
      while ((c + 1) * (c + 1) <= rest) ++c;
      if (c * c == rest && c >= b) out.push_back({a, b, c});
    }
  }
  return out;
}

namespace detail {

inline int mod4(int v) { return ((v % 4) + 4) % 4; }

}  // namespace detail

/// Signs each magnitude so that it is congruent to n mod 4.
inline std::vector<RowsumTriple> signed_rowsums(int n) {
  std::vector<RowsumTriple> out;
  for (const auto& t : three_squares(n)) {
    std::array<int, 3> s{};
    for (std::size_t i = 0; i < 3; ++i) {
      const int v = t[i];
      if (v % 2 == 0) throw ConsistencyError("even magnitude in a decomposition of 4n-1");
      s[i] = detail::mod4(v) == detail::mod4(n) ? v : -v;
    }
    std::sort(s.begin(), s.end());
    out.push_back({s[0], s[1], s[2]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool rowsum_admissible(const std::vector<RowsumTriple>& triples, int v) {
  return std::any_of(triples.begin(), triples.end(),
                     [v](const RowsumTriple& t) { return t.contains(v); });
}

}  // namespace goodmat
