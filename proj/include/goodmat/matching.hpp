#pragma once

// Compressed quadruples (A', B', C', D') in S_sk x S_sy^3 whose PSDs sum to
// 4n at every frequency. Pairs (A', B') and (C', D') are filtered by the PSD
// bound, keyed by their exact PAF sums, and joined by sorting both lists.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "goodmat/candidates.hpp"
#include "goodmat/error.hpp"
#include "goodmat/options.hpp"
#include "goodmat/seq.hpp"
#include "goodmat/spectral.hpp"

namespace goodmat {

/// PAF_X(k) + PAF_Y(k) for k = 1 .. floor(m/2).
using PafKey = std::vector<int>;

inline PafKey paf_key(const CompressedRow& x, const CompressedRow& y) {
  if (x.size() != y.size()) throw InvalidInput("paf_key rows differ in length");
  PafKey key(x.size() / 2);
  for (std::size_t k = 1; k <= key.size(); ++k) key[k - 1] = paf(x, k) + paf(y, k);
  return key;
}

/// Exact compressed identity: the four PAFs sum to 4n at shift 0 and to 0 at
/// every other shift.
inline bool compressed_identity_holds(const CompressedQuad& q, int n) {
  const std::size_t m = q.length();
  for (std::size_t k = 0; k <= m / 2; ++k) {
    int sum = 0;
    for (std::size_t r = 0; r < 4; ++r) sum += paf(q.row(r), k);
    if (sum != (k == 0 ? 4 * n : 0)) return false;
  }
  return true;
}

struct MatchStats {
  std::size_t ab_pairs = 0;
  std::size_t cd_pairs = 0;
  std::size_t joined = 0;
};

namespace detail {

struct RowSpectra {
  std::vector<double> psd;  // (k = 0 .. floor(m/2)) per row, flattened
  std::vector<int> paf;     // (k = 0 .. floor(m/2)) per row, flattened
  std::size_t stride = 0;
};

inline RowSpectra row_spectra(const std::vector<CompressedRow>& rows, std::size_t m) {
  RowSpectra out;
  out.stride = m / 2 + 1;
  out.psd.resize(rows.size() * out.stride);
  out.paf.resize(rows.size() * out.stride);
  const auto& table = dft_table(m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < out.stride; ++k) {
      out.psd[i * out.stride + k] = table.psd(rows[i].entries(), k);
      out.paf[i * out.stride + k] = paf(rows[i], k);
    }
  }
  return out;
}

// Flat list of pairs with integer join keys of `stride` entries each.
struct KeyedPairs {
  std::size_t stride = 0;
  std::vector<std::int16_t> keys;
  std::vector<std::uint32_t> first, second;

  std::size_t size() const { return first.size(); }
  const std::int16_t* key(std::size_t i) const { return keys.data() + i * stride; }

  std::vector<std::uint32_t> sorted_order() const {
    std::vector<std::uint32_t> order(size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [this](std::uint32_t l, std::uint32_t r) {
      return std::lexicographical_compare(key(l), key(l) + stride, key(r), key(r) + stride);
    });
    return order;
  }
};

inline bool pair_within_bound(const RowSpectra& xs, std::size_t i, const RowSpectra& ys,
                              std::size_t j, double bound) {
  for (std::size_t k = 0; k < xs.stride; ++k) {
    if (xs.psd[i * xs.stride + k] + ys.psd[j * ys.stride + k] > bound) return false;
  }
  return true;
}

}  // namespace detail

/// All compressed quadruples satisfying the compressed PSD identity, sorted
/// and unique. B' is not normalized against C', D'; both orders of C', D' are
/// emitted.
inline std::vector<CompressedQuad> match_quadruples(const CandidateSets& cands,
                                                    const FilterOptions& opts = {},
                                                    MatchStats* stats = nullptr) {
  std::vector<CompressedQuad> out;
  if (cands.s_sk.empty() || cands.s_sy.empty()) return out;
  const int n = cands.n;
  const auto m = static_cast<std::size_t>(cands.m);
  const double bound = 4.0 * n + opts.epsilon;

  const auto sk = detail::row_spectra(cands.s_sk, m);
  const auto sy = detail::row_spectra(cands.s_sy, m);
  const std::size_t stride = sk.stride;

  // Key entry 0 carries the shift-0 PAF (sum of squares); AB keys hold the
  // raw sums and CD keys hold their complements, so equal keys mean the
  // four-row sums are exactly (4n, 0, ..., 0).
  detail::KeyedPairs ab, cd;
  ab.stride = cd.stride = stride;
  for (std::size_t i = 0; i < cands.s_sk.size(); ++i) {
    for (std::size_t j = 0; j < cands.s_sy.size(); ++j) {
      if (opts.pair_psd && !detail::pair_within_bound(sk, i, sy, j, bound)) continue;
      ab.first.push_back(static_cast<std::uint32_t>(i));
      ab.second.push_back(static_cast<std::uint32_t>(j));
      for (std::size_t k = 0; k < stride; ++k) {
        ab.keys.push_back(static_cast<std::int16_t>(sk.paf[i * stride + k] + sy.paf[j * stride + k]));
      }
    }
  }
  for (std::size_t i = 0; i < cands.s_sy.size(); ++i) {
    for (std::size_t j = i; j < cands.s_sy.size(); ++j) {
      if (opts.pair_psd && !detail::pair_within_bound(sy, i, sy, j, bound)) continue;
      cd.first.push_back(static_cast<std::uint32_t>(i));
      cd.second.push_back(static_cast<std::uint32_t>(j));
      for (std::size_t k = 0; k < stride; ++k) {
        const int s = sy.paf[i * stride + k] + sy.paf[j * stride + k];
        cd.keys.push_back(static_cast<std::int16_t>(k == 0 ? 4 * n - s : -s));
      }
    }
  }

  const auto ab_order = ab.sorted_order();
  const auto cd_order = cd.sorted_order();
  auto less = [stride](const std::int16_t* l, const std::int16_t* r) {
    return std::lexicographical_compare(l, l + stride, r, r + stride);
  };
  std::size_t joined = 0;
  std::size_t p = 0, q = 0;
  while (p < ab_order.size() && q < cd_order.size()) {
    const auto* kab = ab.key(ab_order[p]);
    const auto* kcd = cd.key(cd_order[q]);
    if (less(kab, kcd)) {
      ++p;
    } else if (less(kcd, kab)) {
      ++q;
    } else {
      std::size_t p_end = p, q_end = q;
      while (p_end < ab_order.size() && !less(kab, ab.key(ab_order[p_end]))) ++p_end;
      while (q_end < cd_order.size() && !less(kcd, cd.key(cd_order[q_end]))) ++q_end;
      for (std::size_t x = p; x < p_end; ++x) {
        for (std::size_t y = q; y < q_end; ++y) {
          const auto& a = cands.s_sk[ab.first[ab_order[x]]];
          const auto& b = cands.s_sy[ab.second[ab_order[x]]];
          const auto& c = cands.s_sy[cd.first[cd_order[y]]];
          const auto& d = cands.s_sy[cd.second[cd_order[y]]];
          CompressedQuad quad{a, b, c, d};
          if (!compressed_identity_holds(quad, n)) continue;
          ++joined;
          if (c != d) out.push_back({a, b, d, c});
          out.push_back(std::move(quad));
        }
      }
      p = p_end;
      q = q_end;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (stats) *stats = {ab.size(), cd.size(), joined};
  return out;
}

}  // namespace goodmat
