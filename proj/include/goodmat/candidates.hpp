#pragma once

// Candidate compressed rows: every skew and symmetric row with first entry +1
// is generated from its free half, filtered, and its 3-compression kept.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "goodmat/diophantine.hpp"
#include "goodmat/error.hpp"
#include "goodmat/options.hpp"
#include "goodmat/seq.hpp"
#include "goodmat/spectral.hpp"

namespace goodmat {

struct CandidateSets {
  int n = 0, m = 0, d = 0;
  std::vector<CompressedRow> s_sk;  // compressions of skew rows, sorted, unique
  std::vector<CompressedRow> s_sy;  // compressions of symmetric rows, sorted, unique
};

namespace detail {

// 2 bits per entry, first entry most significant. Codes follow the global
// order (+3 < +1 < -1 < -3), so integer order equals sequence order.
inline std::uint64_t pack_compressed(std::span<const Entry> x) {
  std::uint64_t key = 0;
  for (Entry v : x) {
    const std::uint64_t code = v == 3 ? 0 : v == 1 ? 1 : v == -1 ? 2 : 3;
    key = (key << 2) | code;
  }
  return key;
}

inline CompressedRow unpack_compressed(std::uint64_t key, std::size_t m) {
  static constexpr Entry values[4] = {3, 1, -1, -3};
  std::vector<Entry> out(m);
  for (std::size_t i = m; i-- > 0;) {
    out[i] = values[key & 3U];
    key >>= 2;
  }
  return CompressedRow(std::move(out));
}

inline bool row_within_bound(const DftTable& table, std::span<const Entry> x, double bound) {
  for (std::size_t k = 0; k <= x.size() / 2; ++k) {
    if (table.psd(x, k) > bound) return false;
  }
  return true;
}

}  // namespace detail

/// Packed candidate keys for the half-assignments in [first, last). Bit i of the
/// mask set means half entry i is -1.
struct PackedCandidates {
  std::vector<std::uint64_t> sk, sy;
};

inline PackedCandidates generate_candidate_range(int n, const std::vector<RowsumTriple>& rowsums,
                                                 std::uint64_t first, std::uint64_t last,
                                                 const FilterOptions& opts = {}) {
  const auto un = static_cast<std::size_t>(n);
  const std::size_t d = un / 2, m = un / 3;
  const auto& table = dft_table(un);
  const double bound = 4.0 * n + opts.epsilon;

  PackedCandidates out;
  std::vector<Entry> a(un), b(un), ca(m), cb(m);
  for (std::uint64_t mask = first; mask < last; ++mask) {
    a[0] = b[0] = 1;
    int half_sum = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const Entry v = (mask >> i) & 1U ? Entry{-1} : Entry{1};
      half_sum += v;
      a[1 + i] = v;
      a[un - 1 - i] = static_cast<Entry>(-v);
      b[1 + i] = v;
      b[un - 1 - i] = v;
    }
    if (!opts.candidate_psd || detail::row_within_bound(table, a, bound)) {
      for (std::size_t k = 0; k < m; ++k) ca[k] = static_cast<Entry>(a[k] + a[k + m] + a[k + 2 * m]);
      out.sk.push_back(detail::pack_compressed(ca));
    }
    const int b_sum = 1 + 2 * half_sum;
    if (opts.candidate_rowsum && !rowsum_admissible(rowsums, b_sum)) continue;
    if (opts.candidate_psd && !detail::row_within_bound(table, b, bound)) continue;
    for (std::size_t k = 0; k < m; ++k) cb[k] = static_cast<Entry>(b[k] + b[k + m] + b[k + 2 * m]);
    out.sy.push_back(detail::pack_compressed(cb));
  }
  auto finish = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  finish(out.sk);
  finish(out.sy);
  return out;
}

inline CandidateSets unpack_candidates(int n, const PackedCandidates& packed) {
  CandidateSets out;
  out.n = n;
  out.m = n / 3;
  out.d = n / 2;
  const auto m = static_cast<std::size_t>(out.m);
  for (auto key : packed.sk) out.s_sk.push_back(detail::unpack_compressed(key, m));
  for (auto key : packed.sy) out.s_sy.push_back(detail::unpack_compressed(key, m));
  return out;
}

/// Brute force over all 2^floor(n/2) half-assignments. `parts` splits the loop
/// into contiguous ranges whose results are merged; the output does not depend
/// on it.
inline CandidateSets generate_candidates(int n, const std::vector<RowsumTriple>& rowsums,
                                         const FilterOptions& opts = {}, unsigned parts = 1) {
  if (n < 3 || n % 2 == 0 || n % 3 != 0) {
    throw InvalidInput("candidate generation needs an odd order divisible by 3");
  }
  if (n / 3 > 32 || n / 2 > 40) throw InvalidInput("order too large for candidate generation");
  const std::uint64_t total = std::uint64_t{1} << (n / 2);
  parts = std::max(1U, parts);
  PackedCandidates merged;
  for (unsigned p = 0; p < parts; ++p) {
    const std::uint64_t first = total * p / parts, last = total * (p + 1) / parts;
    auto part = generate_candidate_range(n, rowsums, first, last, opts);
    merged.sk.insert(merged.sk.end(), part.sk.begin(), part.sk.end());
    merged.sy.insert(merged.sy.end(), part.sy.begin(), part.sy.end());
  }
  for (auto* v : {&merged.sk, &merged.sy}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return unpack_candidates(n, merged);
}

inline void write_compressed_rows(std::ostream& os, const std::vector<CompressedRow>& rows) {
  for (const auto& r : rows) os << format_csv(r) << '\n';
}

inline std::vector<CompressedRow> read_compressed_rows(std::istream& is) {
  std::vector<CompressedRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(parse_compressed_csv(line));
  }
  return rows;
}

}  // namespace goodmat
