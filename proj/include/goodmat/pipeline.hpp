#pragma once

// End-to-end enumeration of inequivalent circulant good matrices of an odd
// order n divisible by 3:
//   1. signed rowsum triples
//   2. candidate compressed rows
//   3. compressed quadruples, one per equivalence class
//   4. one SAT instance per quadruple, solved exhaustively
// followed by canonicalization of every solution.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "goodmat/candidates.hpp"
#include "goodmat/diophantine.hpp"
#include "goodmat/equiv.hpp"
#include "goodmat/error.hpp"
#include "goodmat/matching.hpp"
#include "goodmat/options.hpp"
#include "goodmat/rowfile.hpp"
#include "goodmat/satsearch.hpp"

namespace goodmat {

inline constexpr int kDeskScaleMaxOrder = 39;

struct Shard {
  int index = 0;
  int count = 1;

  bool owns(std::size_t i) const { return static_cast<int>(i % static_cast<std::size_t>(count)) == index; }
};

struct PipelineOptions {
  FilterOptions filters;
  unsigned threads = 1;  // 0 = hardware concurrency
  Shard shard;
  std::uint64_t seed = 0;
  std::uint64_t max_conflicts_per_instance = 0;  // 0 = unlimited
  bool allow_large = false;                      // required for n > 39
};

struct StageTimings {
  double rowsums = 0, candidates = 0, matching = 0, dedup = 0, solving = 0, canonicalize = 0;
};

struct SearchReport {
  int n = 0;
  double wall_seconds = 0;
  std::size_t rowsum_triples = 0;
  std::size_t s_sk = 0, s_sy = 0;
  std::size_t matched_quads = 0;     // |S_q| before equivalence reduction
  std::size_t total_instances = 0;   // after reduction, across all shards
  std::size_t instance_count = 0;    // instances solved by this run (this shard)
  std::size_t solutions_found = 0;   // raw solutions before canonicalization
  std::size_t inequivalent = 0;      // #G_n (for this shard when sharded)
  std::uint64_t conflicts = 0;
  StageTimings timings;
  Shard shard;
  bool exhaustive = true;
  FilterOptions filters;
  std::string digest;
};

struct EnumerationResult {
  std::vector<CanonicalQuad> quads;
  SearchReport report;
};

/// Thrown when an instance hit its resource limit; carries what was found.
class IncompleteSearch : public std::runtime_error {
 public:
  IncompleteSearch(const std::string& what, EnumerationResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const EnumerationResult& partial() const noexcept { return partial_; }

 private:
  EnumerationResult partial_;
};

inline void check_order(int n, bool allow_large) {
  if (n < 3 || n % 2 == 0 || n % 3 != 0) {
    throw InvalidInput("order must be odd, divisible by 3 and at least 3");
  }
  if (n > kDeskScaleMaxOrder && !allow_large) {
    throw InvalidInput("orders above 39 need an explicit opt-in");
  }
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// 64-bit FNV-1a over the row-file text of the sorted quads, as hex.
inline std::string quads_digest(const std::vector<CanonicalQuad>& quads) {
  std::ostringstream os;
  for (const auto& q : quads) {
    const DefiningQuad single[] = {q.quad};
    write_quads(os, single);
  }
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

/// Steps 1-3 plus the compressed-level reduction. The returned list is
/// sorted and is what shards partition.
inline std::vector<CompressedQuad> prepare_instances(int n, const PipelineOptions& opts,
                                                     SearchReport& report) {
  check_order(n, opts.allow_large);
  auto t0 = std::chrono::steady_clock::now();
  const auto rowsums = signed_rowsums(n);
  report.rowsum_triples = rowsums.size();
  report.timings.rowsums = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const auto cands = generate_candidates(n, rowsums, opts.filters);
  report.s_sk = cands.s_sk.size();
  report.s_sy = cands.s_sy.size();
  report.timings.candidates = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto quads = match_quadruples(cands, opts.filters);
  report.matched_quads = quads.size();
  report.timings.matching = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (opts.filters.compressed_dedup) {
    quads = dedup(quads, [n](const CompressedQuad& q) { return canonical_compressed(q, n); });
  }
  report.total_instances = quads.size();
  report.timings.dedup = detail::seconds_since(t0);
  return quads;
}

/// Solves the given instances on a worker pool and returns the raw solutions
/// in instance order.
inline std::vector<DefiningQuad> solve_instances(const std::vector<CompressedQuad>& instances,
                                                 const PipelineOptions& opts, SearchReport& report) {
  std::vector<std::vector<DefiningQuad>> per(instances.size());
  std::vector<std::uint64_t> conflicts(instances.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> incomplete{false};
  std::mutex error_mutex;
  std::exception_ptr failure;

  SolveOptions so;
  so.seed = opts.seed;
  so.max_conflicts = opts.max_conflicts_per_instance;
  so.epsilon = opts.filters.epsilon;
  so.prefix_filter = opts.filters.callback_prefix;

  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        const auto inst = build_instance(instances[i], opts.filters);
        auto outcome = solve_all(inst, so);
        per[i] = std::move(outcome.solutions);
        conflicts[i] = outcome.solver.conflicts;
      } catch (const InfeasibleInstance&) {
        // Cannot be uncompressed; contributes nothing.
      } catch (const PartialResultError& e) {
        per[i] = e.partial();
        incomplete = true;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, instances.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<DefiningQuad> all;
  for (std::size_t i = 0; i < per.size(); ++i) {
    report.conflicts += conflicts[i];
    all.insert(all.end(), per[i].begin(), per[i].end());
  }
  report.exhaustive = !incomplete;
  return all;
}

inline EnumerationResult enumerate_good_matrices(int n, const PipelineOptions& opts = {}) {
  if (opts.shard.count < 1 || opts.shard.index < 0 || opts.shard.index >= opts.shard.count) {
    throw InvalidInput("shard index must satisfy 0 <= i < N");
  }
  const auto start = std::chrono::steady_clock::now();
  EnumerationResult result;
  auto& report = result.report;
  report.n = n;
  report.shard = opts.shard;
  report.filters = opts.filters;

  const auto all_instances = prepare_instances(n, opts, report);
  std::vector<CompressedQuad> mine;
  for (std::size_t i = 0; i < all_instances.size(); ++i) {
    if (opts.shard.owns(i)) mine.push_back(all_instances[i]);
  }
  report.instance_count = mine.size();

  auto t0 = std::chrono::steady_clock::now();
  const auto raw = solve_instances(mine, opts, report);
  report.solutions_found = raw.size();
  report.timings.solving = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  result.quads = dedup(raw, [](const DefiningQuad& q) { return canonical_form(q); });
  report.inequivalent = result.quads.size();
  report.timings.canonicalize = detail::seconds_since(t0);
  report.digest = quads_digest(result.quads);
  report.wall_seconds = detail::seconds_since(start);
  if (!report.exhaustive) {
    throw IncompleteSearch("search for order " + std::to_string(n) + " is not exhaustive",
                           std::move(result));
  }
  return result;
}

/// Union of shard results, canonicalized again (equivalent solutions can come
/// from different shards).
inline std::vector<CanonicalQuad> merge_shards(const std::vector<std::vector<CanonicalQuad>>& shards) {
  std::vector<DefiningQuad> all;
  for (const auto& s : shards) {
    for (const auto& q : s) all.push_back(q.quad);
  }
  return dedup(all, [](const DefiningQuad& q) { return canonical_form(q); });
}

}  // namespace goodmat
