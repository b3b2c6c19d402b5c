#pragma once

// Uncompression of one compressed quadruple by programmatic SAT.
//
// Variables are the entries a_i, b_i, c_i, d_i with 0 <= i <= d = floor(n/2);
// entries above n/2 are folded onto them through the skew and symmetric
// relations. A true variable means +1.

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goodmat/error.hpp"
#include "goodmat/options.hpp"
#include "goodmat/sat.hpp"
#include "goodmat/seq.hpp"
#include "goodmat/spectral.hpp"

namespace goodmat {

enum Row : int { kRowA = 0, kRowB = 1, kRowC = 2, kRowD = 3 };

using Clause = std::vector<sat::Lit>;
using LearnedClause = std::vector<sat::Lit>;
using Assignment = std::vector<sat::Value>;

struct CnfInstance {
  int n = 0, m = 0, d = 0;
  CompressedQuad source;
  std::vector<Clause> clauses;

  int num_vars() const { return 4 * (d + 1); }
  int var(int row, int i) const { return row * (d + 1) + i; }
};

/// Literal whose truth means x_j = +1 for row `row` of order n.
inline sat::Lit fold_index(int row, int j, int n) {
  const int d = n / 2;
  if (j < 0 || j >= n) throw InvalidInput("index out of range");
  if (2 * j < n) return sat::Lit::make(row * (d + 1) + j);
  return sat::Lit::make(row * (d + 1) + (n - j), row == kRowA);
}

namespace detail {

// Drops duplicate literals and tautologies; nullopt for a tautology.
inline std::optional<Clause> tidy(Clause c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i + 1] == ~c[i]) return std::nullopt;
  }
  return c;
}

inline void push_tidy(std::vector<Clause>& out, Clause c) {
  if (auto t = tidy(std::move(c))) {
    if (std::find(out.begin(), out.end(), *t) == out.end()) out.push_back(std::move(*t));
  }
}

// Forbid every assignment of `lits` whose number of true literals has the
// given parity.
inline void forbid_true_count_parity(std::vector<Clause>& out, const std::vector<sat::Lit>& lits,
                                     bool forbid_odd) {
  const unsigned k = static_cast<unsigned>(lits.size());
  for (unsigned pattern = 0; pattern < (1U << k); ++pattern) {
    const bool odd = std::popcount(pattern) % 2 == 1;
    if (odd != forbid_odd) continue;
    Clause c;
    for (unsigned i = 0; i < k; ++i) c.push_back((pattern >> i) & 1U ? ~lits[i] : lits[i]);
    push_tidy(out, std::move(c));
  }
}

}  // namespace detail

/// Clauses saying that row r compresses to the r-th row of `cq`.
inline std::vector<Clause> encode_compression(const CompressedQuad& cq) {
  const int m = static_cast<int>(cq.length());
  const int n = 3 * m;
  if (cq.a[0] != 1) {
    throw InfeasibleInstance("A'_0 must be 1: a_0 + a_m + a_2m = 1 for every skew row");
  }
  std::vector<Clause> out;
  for (int r = 0; r < 4; ++r) {
    const auto& row = cq.row(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != m) throw InvalidInput("compressed rows differ in length");
    for (int k = 0; k < m; ++k) {
      const sat::Lit x = fold_index(r, k, n), y = fold_index(r, k + m, n), z = fold_index(r, k + 2 * m, n);
      switch (row[static_cast<std::size_t>(k)]) {
        case 3:
          detail::push_tidy(out, {x});
          detail::push_tidy(out, {y});
          detail::push_tidy(out, {z});
          break;
        case 1:
          detail::push_tidy(out, {~x, ~y, ~z});
          detail::push_tidy(out, {x, y});
          detail::push_tidy(out, {x, z});
          detail::push_tidy(out, {y, z});
          break;
        case -1:
          detail::push_tidy(out, {x, y, z});
          detail::push_tidy(out, {~x, ~y});
          detail::push_tidy(out, {~x, ~z});
          detail::push_tidy(out, {~y, ~z});
          break;
        default:
          detail::push_tidy(out, {~x});
          detail::push_tidy(out, {~y});
          detail::push_tidy(out, {~z});
          break;
      }
    }
  }
  return out;
}

/// Product-theorem clauses (with b_0 = c_0 = d_0 = 1):
///   a_k a_{2k} b_k c_k d_k = -1   for 1 <= k < n/2, k != n/3
///   b_m c_m d_m = +1             for m = n/3
/// In literal terms: an even number of the five literals true, and an odd
/// number of the three.
inline std::vector<Clause> encode_parity(int n) {
  const int d = n / 2;
  const int m = n % 3 == 0 ? n / 3 : -1;
  std::vector<Clause> out;
  for (int k = 1; k <= d; ++k) {
    if (k == m) {
      detail::forbid_true_count_parity(
          out, {fold_index(kRowB, k, n), fold_index(kRowC, k, n), fold_index(kRowD, k, n)}, false);
    } else {
      detail::forbid_true_count_parity(
          out,
          {fold_index(kRowA, k, n), fold_index(kRowA, (2 * k) % n, n), fold_index(kRowB, k, n),
           fold_index(kRowC, k, n), fold_index(kRowD, k, n)},
          true);
    }
  }
  return out;
}

inline CnfInstance build_instance(const CompressedQuad& cq, const FilterOptions& opts = {}) {
  CnfInstance inst;
  inst.m = static_cast<int>(cq.length());
  inst.n = 3 * inst.m;
  inst.d = inst.n / 2;
  inst.source = cq;
  for (int r = 0; r < 4; ++r) inst.clauses.push_back({sat::Lit::make(inst.var(r, 0))});
  for (auto& c : encode_compression(cq)) detail::push_tidy(inst.clauses, std::move(c));
  if (opts.parity_clauses) {
    for (auto& c : encode_parity(inst.n)) detail::push_tidy(inst.clauses, std::move(c));
  }
  return inst;
}

// ---------------------------------------------------------------------------
// PSD callback

struct CallbackStats {
  std::uint64_t calls = 0;
  std::uint64_t prefix_clauses[3] = {0, 0, 0};  // by number of rows blocked
  std::uint64_t full_blocks = 0;
};

namespace detail {

inline bool row_complete(const Assignment& asg, const CnfInstance& inst, int row) {
  for (int i = 0; i <= inst.d; ++i) {
    if (asg[static_cast<std::size_t>(inst.var(row, i))] == sat::Value::Undef) return false;
  }
  return true;
}

inline std::vector<Entry> materialize_row(const Assignment& asg, const CnfInstance& inst, int row) {
  std::vector<Entry> x(static_cast<std::size_t>(inst.n));
  for (int j = 0; j < inst.n; ++j) {
    const sat::Lit l = fold_index(row, j, inst.n);
    sat::Value v = asg[static_cast<std::size_t>(l.var())];
    const bool pos = (v == sat::Value::True) != l.negated();
    x[static_cast<std::size_t>(j)] = pos ? 1 : -1;
  }
  return x;
}

inline void append_blocking(LearnedClause& clause, const Assignment& asg, const CnfInstance& inst,
                            int row) {
  for (int i = 1; i <= inst.d; ++i) {
    const int v = inst.var(row, i);
    clause.push_back(sat::Lit::make(v, asg[static_cast<std::size_t>(v)] == sat::Value::True));
  }
}

}  // namespace detail

/// The theory check run at every propagation fixpoint.
///
/// Complete rows are ordered by their largest PSD value, then the running PSD
/// sums over the first 1, 2, 3 rows are tested against 4n + eps; the first
/// violation yields a clause over the free literals of those rows. With all
/// four rows complete, the rows are recorded when the exact PAF certificate
/// holds, and the assignment of all four rows is blocked either way.
inline std::optional<LearnedClause> psd_callback(const Assignment& asg, const CnfInstance& inst,
                                                 double eps = kDefaultEpsilon,
                                                 bool prefix_filter = true,
                                                 std::vector<DefiningQuad>* record = nullptr,
                                                 CallbackStats* stats = nullptr) {
  if (stats) ++stats->calls;
  struct Complete {
    int row;
    std::vector<Entry> entries;
    std::vector<double> psd;
    double peak;
  };
  std::vector<Complete> complete;
  const auto& table = dft_table(static_cast<std::size_t>(inst.n));
  for (int r = 0; r < 4; ++r) {
    if (!detail::row_complete(asg, inst, r)) continue;
    Complete c{r, detail::materialize_row(asg, inst, r), std::vector<double>(static_cast<std::size_t>(inst.d) + 1), 0.0};
    table.psd_half(c.entries, c.psd);
    c.peak = *std::max_element(c.psd.begin(), c.psd.end());
    complete.push_back(std::move(c));
  }
  if (complete.empty()) return std::nullopt;
  std::stable_sort(complete.begin(), complete.end(),
                   [](const Complete& l, const Complete& r) { return l.peak > r.peak; });

  const double bound = 4.0 * inst.n + eps;
  if (prefix_filter) {
    std::vector<double> sum(static_cast<std::size_t>(inst.d) + 1, 0.0);
    const std::size_t limit = std::min<std::size_t>(complete.size(), 3);
    for (std::size_t t = 0; t < limit; ++t) {
      bool violated = false;
      for (std::size_t k = 0; k < sum.size(); ++k) {
        sum[k] += complete[t].psd[k];
        violated = violated || sum[k] > bound;
      }
      if (violated) {
        LearnedClause clause;
        for (std::size_t s = 0; s <= t; ++s) detail::append_blocking(clause, asg, inst, complete[s].row);
        if (stats) ++stats->prefix_clauses[t];
        return clause;
      }
    }
  }
  if (complete.size() < 4) return std::nullopt;

  std::vector<Entry> rows[4];
  for (auto& c : complete) rows[c.row] = std::move(c.entries);
  DefiningQuad quad(SkewRow(PmSequence(std::move(rows[0]))), SymRow(PmSequence(std::move(rows[1]))),
                    SymRow(PmSequence(std::move(rows[2]))), SymRow(PmSequence(std::move(rows[3]))));
  if (record && paf_certificate(quad)) record->push_back(std::move(quad));
  LearnedClause clause;
  for (int r = 0; r < 4; ++r) detail::append_blocking(clause, asg, inst, r);
  if (stats) ++stats->full_blocks;
  return clause;
}

class PsdPropagator final : public sat::Propagator {
 public:
  PsdPropagator(const CnfInstance& inst, double eps, bool prefix_filter)
      : inst_(inst), eps_(eps), prefix_(prefix_filter), asg_(static_cast<std::size_t>(inst.num_vars())) {}

  std::optional<std::vector<sat::Lit>> on_fixpoint(const sat::Solver& solver) override {
    for (int v = 0; v < inst_.num_vars(); ++v) asg_[static_cast<std::size_t>(v)] = solver.value(v);
    auto clause = psd_callback(asg_, inst_, eps_, prefix_, &solutions_, &stats_);
    if (clause && keep_) learned_.push_back(*clause);
    return clause;
  }

  std::vector<DefiningQuad>& solutions() { return solutions_; }
  const std::vector<LearnedClause>& learned() const { return learned_; }
  const CallbackStats& stats() const { return stats_; }
  void keep_learned(bool on) { keep_ = on; }

 private:
  const CnfInstance& inst_;
  double eps_;
  bool prefix_;
  bool keep_ = false;
  Assignment asg_;
  std::vector<DefiningQuad> solutions_;
  std::vector<LearnedClause> learned_;
  CallbackStats stats_;
};

class PartialResultError : public std::runtime_error {
 public:
  PartialResultError(const std::string& what, std::vector<DefiningQuad> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<DefiningQuad>& partial() const noexcept { return partial_; }

 private:
  std::vector<DefiningQuad> partial_;
};

struct SolveOptions {
  std::uint64_t seed = 0;
  std::uint64_t max_conflicts = 0;  // 0 = unlimited
  double epsilon = kDefaultEpsilon;
  bool prefix_filter = true;
  bool keep_learned = false;  // retain every callback clause in the outcome
};

struct SolveOutcome {
  std::vector<DefiningQuad> solutions;
  sat::Stats solver;
  CallbackStats callback;
  std::vector<LearnedClause> learned;
};

/// Every defining quad whose compression is `inst.source`, each exactly once.
inline SolveOutcome solve_all(const CnfInstance& inst, const SolveOptions& opts = {}) {
  sat::Solver solver(inst.num_vars(), opts.seed);
  PsdPropagator prop(inst, opts.epsilon, opts.prefix_filter);
  prop.keep_learned(opts.keep_learned);
  SolveOutcome out;
  bool consistent = true;
  for (const auto& c : inst.clauses) consistent = consistent && solver.add_clause(c);
  if (consistent) {
    const auto status = solver.solve(&prop, {opts.max_conflicts});
    if (status == sat::Status::limit) {
      throw PartialResultError("conflict limit reached before the search was exhaustive",
                               prop.solutions());
    }
    if (status == sat::Status::sat) throw ConsistencyError("callback accepted a complete assignment");
  }
  for (const auto& q : prop.solutions()) {
    if (compress3(q) != inst.source) throw ConsistencyError("solution does not compress to its instance");
  }
  out.solutions = std::move(prop.solutions());
  out.solver = solver.stats();
  out.callback = prop.stats();
  if (opts.keep_learned) out.learned = prop.learned();
  return out;
}

// ---------------------------------------------------------------------------
// DIMACS

struct DimacsCnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Compression, parity and first-entry clauses; the PSD callback has no CNF
/// form, so the exported formula over-approximates the search space. Each
/// quad in `blocked` adds a clause excluding it.
inline std::string export_dimacs(const CnfInstance& inst, std::span<const DefiningQuad> blocked = {}) {
  std::vector<Clause> clauses = inst.clauses;
  for (const auto& q : blocked) {
    Clause c;
    for (int r = 0; r < 4; ++r) {
      for (int i = 1; i <= inst.d; ++i) {
        c.push_back(sat::Lit::make(inst.var(r, i), q.row(static_cast<std::size_t>(r))[static_cast<std::size_t>(i)] == 1));
      }
    }
    clauses.push_back(std::move(c));
  }
  std::ostringstream os;
  os << "c n=" << inst.n << " compressed";
  for (std::size_t r = 0; r < 4; ++r) os << ' ' << format_csv(inst.source.row(r));
  os << '\n';
  os << "p cnf " << inst.num_vars() << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (auto l : c) os << l.dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

inline DimacsCnf parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  DimacsCnf cnf;
  std::string token;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> current;
  while (is >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    if (token == "p") {
      std::string fmt;
      is >> fmt >> cnf.num_vars >> declared;
      if (fmt != "cnf" || !is) throw InvalidInput("bad DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw InvalidInput("DIMACS clause before header");
    const int lit = std::stoi(token);
    if (lit == 0) {
      cnf.clauses.push_back(std::move(current));
      current.clear();
    } else {
      if (std::abs(lit) > cnf.num_vars) throw InvalidInput("DIMACS literal out of range");
      current.push_back(lit);
    }
  }
  if (!current.empty()) throw InvalidInput("unterminated DIMACS clause");
  if (cnf.clauses.size() != declared) throw InvalidInput("DIMACS clause count mismatch");
  return cnf;
}

}  // namespace goodmat
