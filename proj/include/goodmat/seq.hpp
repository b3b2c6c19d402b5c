#pragma once

// Sequence types for defining rows of circulant good matrices and their
// 3-compressions.
//
// Every sequence is stored densely as signed bytes. Indices are always
// reduced into {0, ..., n-1}.
//
// All sequence types share one total order, used for canonical forms and for
// on-disk sorting: entries compare with larger values first, so +1 < -1 and
// +3 < +1 < -1 < -3. This coincides with '+' < '-' in the row text format.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "goodmat/error.hpp"

namespace goodmat {

using Entry = std::int8_t;

namespace detail {

inline std::strong_ordering compare_entries(std::span<const Entry> lhs,
                                            std::span<const Entry> rhs) {
  const std::size_t common = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (lhs[i] != rhs[i]) {
      return lhs[i] > rhs[i] ? std::strong_ordering::less
                             : std::strong_ordering::greater;
    }
  }
  return lhs.size() <=> rhs.size();
}

struct SignAlphabet {
  static constexpr bool contains(int v) { return v == 1 || v == -1; }
  static constexpr const char* name = "+1/-1";
};

struct CompressedAlphabet {
  static constexpr bool contains(int v) {
    return v == 1 || v == -1 || v == 3 || v == -3;
  }
  static constexpr const char* name = "+-1/+-3";
};

}  // namespace detail

/// Dense sequence whose entries are drawn from `Alphabet`.
template <class Alphabet>
class Sequence {
 public:
  Sequence() = default;

  explicit Sequence(std::vector<Entry> entries) : entries_(std::move(entries)) {
    validate();
  }

  Sequence(std::initializer_list<int> entries) {
    entries_.reserve(entries.size());
    for (int v : entries) {
      if (!Alphabet::contains(v)) {
        throw InvalidInput(std::string("entry outside alphabet ") + Alphabet::name);
      }
      entries_.push_back(static_cast<Entry>(v));
    }
    validate();
  }

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int at_mod(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(entries_.size());
    return entries_[static_cast<std::size_t>(((i % n) + n) % n)];
  }
  std::span<const Entry> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  Sequence negated() const {
    std::vector<Entry> out(entries_);
    for (auto& v : out) v = static_cast<Entry>(-v);
    return Sequence(std::move(out));
  }

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend std::strong_ordering operator<=>(const Sequence& lhs, const Sequence& rhs) {
    return detail::compare_entries(lhs.entries_, rhs.entries_);
  }

 private:
  void validate() const {
    if (entries_.empty()) throw InvalidInput("sequence must be nonempty");
    for (Entry v : entries_) {
      if (!Alphabet::contains(v)) {
        throw InvalidInput(std::string("entry outside alphabet ") + Alphabet::name);
      }
    }
  }

  std::vector<Entry> entries_;
};

using PmSequence = Sequence<detail::SignAlphabet>;
using CompressedRow = Sequence<detail::CompressedAlphabet>;

inline bool is_skew(const PmSequence& x) {
  const std::size_t n = x.size();
  if (x[0] != 1) return false;
  for (std::size_t i = 1; 2 * i < n; ++i) {
    if (x[i] != -x[n - i]) return false;
  }
  // Even n has a self-paired middle entry that cannot be skew.
  return n % 2 == 1;
}

inline bool is_symmetric(const PmSequence& x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1; 2 * i < n; ++i) {
    if (x[i] != x[n - i]) return false;
  }
  return true;
}

enum class RowKind { skew, symmetric };

/// A defining row that carries its structural invariant in the type.
/// Skew rows start with +1 and satisfy x_i = -x_{n-i}; symmetric rows satisfy
/// x_i = x_{n-i} (their first entry is normalized elsewhere).
template <RowKind Kind>
class StructuredRow {
 public:
  StructuredRow() = default;

  explicit StructuredRow(PmSequence seq) : seq_(std::move(seq)) {
    if constexpr (Kind == RowKind::skew) {
      if (!is_skew(seq_)) throw InvalidInput("row is not skew");
    } else {
      if (!is_symmetric(seq_)) throw InvalidInput("row is not symmetric");
    }
  }

  const PmSequence& seq() const noexcept { return seq_; }
  operator const PmSequence&() const noexcept { return seq_; }  // NOLINT
  std::size_t size() const noexcept { return seq_.size(); }
  int operator[](std::size_t i) const { return seq_[i]; }
  std::span<const Entry> entries() const noexcept { return seq_.entries(); }

  friend bool operator==(const StructuredRow&, const StructuredRow&) = default;
  friend std::strong_ordering operator<=>(const StructuredRow& lhs,
                                          const StructuredRow& rhs) {
    return lhs.seq_ <=> rhs.seq_;
  }

 private:
  PmSequence seq_;
};

using SkewRow = StructuredRow<RowKind::skew>;
using SymRow = StructuredRow<RowKind::symmetric>;

/// Defining rows (A, B, C, D) of a candidate set of circulant good matrices.
/// Compared as the concatenation A||B||C||D.
class DefiningQuad {
 public:
  DefiningQuad() = default;

  DefiningQuad(SkewRow a, SymRow b, SymRow c, SymRow d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const std::size_t n = a_.size();
    if (n % 2 == 0) throw InvalidInput("quad order must be odd");
    if (b_.size() != n || c_.size() != n || d_.size() != n) {
      throw InvalidInput("quad rows differ in length");
    }
  }

  const SkewRow& a() const noexcept { return a_; }
  const SymRow& b() const noexcept { return b_; }
  const SymRow& c() const noexcept { return c_; }
  const SymRow& d() const noexcept { return d_; }
  std::size_t order() const noexcept { return a_.size(); }

  const PmSequence& row(std::size_t i) const {
    switch (i) {
      case 0: return a_;
      case 1: return b_;
      case 2: return c_;
      case 3: return d_;
      default: throw InvalidInput("row index out of range");
    }
  }

  bool first_entries_positive() const {
    return a_[0] == 1 && b_[0] == 1 && c_[0] == 1 && d_[0] == 1;
  }

  friend bool operator==(const DefiningQuad&, const DefiningQuad&) = default;
  friend std::strong_ordering operator<=>(const DefiningQuad&, const DefiningQuad&) = default;

 private:
  SkewRow a_;
  SymRow b_, c_, d_;
};

/// Compressed quadruple (A', B', C', D'), one element of S_q.
struct CompressedQuad {
  CompressedRow a, b, c, d;

  std::size_t length() const noexcept { return a.size(); }

  const CompressedRow& row(std::size_t i) const {
    switch (i) {
      case 0: return a;
      case 1: return b;
      case 2: return c;
      case 3: return d;
      default: throw InvalidInput("row index out of range");
    }
  }

  friend bool operator==(const CompressedQuad&, const CompressedQuad&) = default;
  friend std::strong_ordering operator<=>(const CompressedQuad&, const CompressedQuad&) = default;
};

// Shape expected of the compression of a skew row: first entry +1 and
// x'_j = -x'_{m-j}.
inline bool is_skew_like(const CompressedRow& x) {
  const std::size_t m = x.size();
  if (x[0] != 1) return false;
  for (std::size_t j = 1; j < m; ++j) {
    if (x[j] != -x[m - j]) return false;
  }
  return true;
}

inline bool is_symmetric(const CompressedRow& x) {
  const std::size_t m = x.size();
  for (std::size_t j = 1; j < m; ++j) {
    if (x[j] != x[m - j]) return false;
  }
  return true;
}

inline bool is_well_formed(const CompressedQuad& q) {
  const std::size_t m = q.a.size();
  return q.b.size() == m && q.c.size() == m && q.d.size() == m && is_skew_like(q.a) &&
         is_symmetric(q.b) && is_symmetric(q.c) && is_symmetric(q.d);
}

template <class Seq>
int rowsum(const Seq& x) {
  int s = 0;
  for (Entry v : x.entries()) s += v;
  return s;
}

namespace detail {

inline std::vector<Entry> checked_half(std::span<const Entry> half, int n) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("order must be odd and positive");
  if (half.size() != static_cast<std::size_t>(n / 2)) {
    throw InvalidInput("half row must have floor(n/2) entries");
  }
  for (Entry v : half) {
    if (v != 1 && v != -1) throw InvalidInput("half row entries must be +1/-1");
  }
  return {half.begin(), half.end()};
}

}  // namespace detail

/// (1, h_0, ..., h_{d-1}, -h_{d-1}, ..., -h_0)
inline SkewRow make_skew(std::span<const Entry> half, int n) {
  auto h = detail::checked_half(half, n);
  std::vector<Entry> row;
  row.reserve(static_cast<std::size_t>(n));
  row.push_back(1);
  row.insert(row.end(), h.begin(), h.end());
  for (auto it = h.rbegin(); it != h.rend(); ++it) row.push_back(static_cast<Entry>(-*it));
  return SkewRow(PmSequence(std::move(row)));
}

/// (1, h_0, ..., h_{d-1}, h_{d-1}, ..., h_0)
inline SymRow make_symmetric(std::span<const Entry> half, int n) {
  auto h = detail::checked_half(half, n);
  std::vector<Entry> row;
  row.reserve(static_cast<std::size_t>(n));
  row.push_back(1);
  row.insert(row.end(), h.begin(), h.end());
  row.insert(row.end(), h.rbegin(), h.rend());
  return SymRow(PmSequence(std::move(row)));
}

/// 3-compression: entry k is x_k + x_{k+m} + x_{k+2m} with m = n/3.
inline CompressedRow compress3(const PmSequence& x) {
  const std::size_t n = x.size();
  if (n % 3 != 0) throw InvalidInput("compress3 requires a length divisible by 3");
  const std::size_t m = n / 3;
  std::vector<Entry> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = static_cast<Entry>(x[k] + x[k + m] + x[k + 2 * m]);
  }
  return CompressedRow(std::move(out));
}

inline CompressedQuad compress3(const DefiningQuad& q) {
  return {compress3(q.a()), compress3(q.b()), compress3(q.c()), compress3(q.d())};
}

// Accepts '+', ASCII '-', and the typographic minus U+2212. The reported
// position is a byte offset into `text`.
inline PmSequence parse_row(std::string_view text) {
  std::vector<Entry> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '+') {
      out.push_back(1);
    } else if (ch == '-') {
      out.push_back(-1);
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {
      out.push_back(-1);
      i += 2;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' in row", i);
    }
  }
  if (out.empty()) throw ParseError("empty row", 0);
  return PmSequence(std::move(out));
}

inline std::string format_row(const PmSequence& x) {
  std::string out;
  out.reserve(x.size());
  for (Entry v : x.entries()) out.push_back(v > 0 ? '+' : '-');
  return out;
}

/// Comma-separated integers, e.g. "1,3,-1".
template <class Seq>
std::string format_csv(const Seq& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(x[i]);
  }
  return out;
}

inline CompressedRow parse_compressed_csv(std::string_view text) {
  std::vector<Entry> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string field(text.substr(pos, comma - pos));
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(field, &used);
    } catch (const std::exception&) {
      throw ParseError("expected integer", pos);
    }
    if (used != field.size()) throw ParseError("trailing characters after integer", pos + used);
    if (!detail::CompressedAlphabet::contains(v)) throw ParseError("compressed entry out of range", pos);
    out.push_back(static_cast<Entry>(v));
    pos = comma + 1;
  }
  return CompressedRow(std::move(out));
}

}  // namespace goodmat
