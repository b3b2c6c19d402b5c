#pragma once

#include "goodmat/spectral.hpp"

namespace goodmat {

/// Switches for every pruning step that is not needed for correctness.
/// Turning any of them off must leave the final solution set unchanged.
struct FilterOptions {
  bool candidate_psd = true;     // PSD bound on single rows in candidate generation
  bool candidate_rowsum = true;  // rowsum membership for symmetric candidates
  bool pair_psd = true;          // PSD bound on (A',B') and (C',D') pairs before the join
  bool compressed_dedup = true;  // keep one compressed quadruple per equivalence class
  bool parity_clauses = true;    // product-theorem clauses in each SAT instance
  // PSD-bound clauses on 1-3 complete rows during SAT search. This is part of
  // the search callback itself, so none() leaves it on; without it every
  // compression-consistent model is visited one by one.
  bool callback_prefix = true;
  double epsilon = kDefaultEpsilon;

  /// Every pipeline filter off; the callback keeps its partial-row check.
  static FilterOptions none() {
    FilterOptions o;
    o.candidate_psd = o.candidate_rowsum = o.pair_psd = false;
    o.compressed_dedup = o.parity_clauses = false;
    return o;
  }
};

}  // namespace goodmat
