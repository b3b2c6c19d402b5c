#pragma once

// Ground truth for small orders: every combination of skew A and symmetric
// B, C, D with first entries +1 (4^(n-1) quads) is tested with the exact PAF
// identity. Shares nothing with candidate generation, matching or SAT search.

#include <cstdint>
#include <vector>

#include "goodmat/equiv.hpp"
#include "goodmat/error.hpp"
#include "goodmat/seq.hpp"
#include "goodmat/spectral.hpp"

namespace goodmat {

inline constexpr int kOracleMaxOrder = 15;

/// Raw solutions (not canonicalized) of order n.
inline std::vector<DefiningQuad> brute_force_solutions(int n) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("oracle needs an odd positive order");
  if (n > kOracleMaxOrder) throw InvalidInput("oracle refuses orders above 15");
  const std::size_t d = static_cast<std::size_t>(n / 2);
  const std::size_t count = std::size_t{1} << d;

  std::vector<SkewRow> skew;
  std::vector<SymRow> sym;
  std::vector<int> skew_paf, sym_paf;  // k = 1..d, flattened
  std::vector<Entry> half(d);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < d; ++i) half[i] = (mask >> i) & 1U ? -1 : 1;
    skew.push_back(make_skew(half, n));
    sym.push_back(make_symmetric(half, n));
    for (std::size_t k = 1; k <= d; ++k) {
      skew_paf.push_back(paf(skew.back(), k));
      sym_paf.push_back(paf(sym.back(), k));
    }
  }

  std::vector<DefiningQuad> found;
  std::vector<int> partial(d);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      for (std::size_t c = 0; c < count; ++c) {
        for (std::size_t k = 0; k < d; ++k) {
          partial[k] = skew_paf[a * d + k] + sym_paf[b * d + k] + sym_paf[c * d + k];
        }
        for (std::size_t e = 0; e < count; ++e) {
          bool ok = true;
          for (std::size_t k = 0; k < d && ok; ++k) ok = partial[k] + sym_paf[e * d + k] == 0;
          if (ok) found.emplace_back(skew[a], sym[b], sym[c], sym[e]);
        }
      }
    }
  }
  return found;
}

/// Canonical inequivalent solutions of order n, sorted.
inline std::vector<CanonicalQuad> brute_force_oracle(int n) {
  return dedup(brute_force_solutions(n), [](const DefiningQuad& q) { return canonical_form(q); });
}

}  // namespace goodmat
