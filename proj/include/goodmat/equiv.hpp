#pragma once

// Equivalence of good matrices: reorder B, C, D; negate any of B, C, D;
// permute indices by an automorphism i -> u*i of Z_n. Canonical forms are
// minima under the global sequence order (see seq.hpp).

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "goodmat/error.hpp"
#include "goodmat/seq.hpp"

namespace goodmat {

/// Units of Z_n in increasing order. Z_1 has the single unit 0.
inline std::vector<int> units_mod(int n) {
  if (n < 1) throw InvalidInput("modulus must be positive");
  if (n == 1) return {0};
  std::vector<int> out;
  for (int u = 1; u < n; ++u) {
    if (std::gcd(u, n) == 1) out.push_back(u);
  }
  return out;
}

template <class Seq>
Seq permute_indices(const Seq& x, int u) {
  const std::size_t n = x.size();
  std::vector<Entry> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<Entry>(x[(static_cast<std::size_t>(u) * i) % n]);
  }
  return Seq(std::move(out));
}

inline DefiningQuad apply_automorphism(const DefiningQuad& q, int u) {
  const int n = static_cast<int>(q.order());
  const int r = ((u % n) + n) % n;
  if (std::gcd(r, n) != 1 && n != 1) throw InvalidInput("multiplier is not a unit mod n");
  return {SkewRow(permute_indices(q.a().seq(), r)), SymRow(permute_indices(q.b().seq(), r)),
          SymRow(permute_indices(q.c().seq(), r)), SymRow(permute_indices(q.d().seq(), r))};
}

/// Negate any of B, C, D with a leading -1, then sort B <= C <= D.
inline DefiningQuad normalize_signs_and_order(const DefiningQuad& q) {
  std::array<PmSequence, 3> rows{q.b().seq(), q.c().seq(), q.d().seq()};
  for (auto& r : rows) {
    if (r[0] == -1) r = r.negated();
  }
  std::sort(rows.begin(), rows.end());
  return {q.a(), SymRow(rows[0]), SymRow(rows[1]), SymRow(rows[2])};
}

struct CanonicalQuad {
  DefiningQuad quad;
  bool certified_canonical = false;

  friend bool operator==(const CanonicalQuad& l, const CanonicalQuad& r) { return l.quad == r.quad; }
  friend auto operator<=>(const CanonicalQuad& l, const CanonicalQuad& r) { return l.quad <=> r.quad; }
};

/// Minimum of the full equivalence orbit: every automorphism image, each
/// normalized for sign and order.
inline CanonicalQuad canonical_form(const DefiningQuad& q) {
  const int n = static_cast<int>(q.order());
  DefiningQuad best = normalize_signs_and_order(q);
  for (int u : units_mod(n)) {
    auto image = normalize_signs_and_order(apply_automorphism(q, u));
    if (image < best) best = std::move(image);
  }
  return {std::move(best), true};
}

/// Canonical representative of a compressed quadruple under reordering of
/// B', C', D' and index multiplication by units mod m.
inline CompressedQuad canonical_compressed(const CompressedQuad& cq, int n) {
  const int m = static_cast<int>(cq.length());
  if (n != 3 * m) throw InvalidInput("compressed quadruple length must be n/3");
  std::optional<CompressedQuad> best;
  for (int u : units_mod(m)) {
    const auto a = permute_indices(cq.a, u);
    std::array<CompressedRow, 3> rest{permute_indices(cq.b, u), permute_indices(cq.c, u),
                                      permute_indices(cq.d, u)};
    // The smallest reordering is the sorted one.
    std::sort(rest.begin(), rest.end());
    CompressedQuad image{a, rest[0], rest[1], rest[2]};
    if (!best || image < *best) best = std::move(image);
  }
  return *best;
}

/// One representative per canonical class, first occurrence wins; the
/// representatives returned are the canonical forms, sorted.
template <class T, class Canonicalizer>
auto dedup(const std::vector<T>& items, Canonicalizer&& canon) {
  using Key = std::decay_t<decltype(canon(items.front()))>;
  std::set<Key> seen;
  for (const auto& item : items) seen.insert(canon(item));
  return std::vector<Key>(seen.begin(), seen.end());
}

}  // namespace goodmat
