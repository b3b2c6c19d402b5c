#pragma once

// Power spectral density and periodic autocorrelation of integer sequences.
//
// PSD values are computed by a direct transform in double precision and are
// only ever used for one-sided filtering against 4n + eps. Every final
// accept/reject decision goes through the exact integer PAF certificate.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "goodmat/error.hpp"
#include "goodmat/seq.hpp"

namespace goodmat {

inline constexpr double kDefaultEpsilon = 1e-2;

/// Twiddle tables for a length-n transform. Angles are reduced as (j*k mod n)
/// before lookup so every evaluation uses one of n exact table entries.
class DftTable {
 public:
  explicit DftTable(std::size_t n) : n_(n), cos_(n), sin_(n) {
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      cos_[j] = std::cos(angle);
      sin_[j] = std::sin(angle);
    }
  }

  std::size_t order() const noexcept { return n_; }

  double psd(std::span<const Entry> x, std::size_t k) const {
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;
    const std::size_t step = k % n_;
    for (std::size_t j = 0; j < n_; ++j) {
      re += x[j] * cos_[idx];
      im += x[j] * sin_[idx];
      idx += step;
      if (idx >= n_) idx -= n_;
    }
    return re * re + im * im;
  }

  // PSD at k = 0 .. floor(n/2); out must have that many + 1 slots.
  void psd_half(std::span<const Entry> x, std::span<double> out) const {
    for (std::size_t k = 0; k <= n_ / 2; ++k) out[k] = psd(x, k);
  }

 private:
  std::size_t n_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Shared, lazily built table for order n. Safe to call from any thread.
inline const DftTable& dft_table(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<DftTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[n];
  if (!slot) slot = std::make_unique<DftTable>(n);
  return *slot;
}

struct SpectralProfile {
  std::vector<double> values;  // PSD(k) for k = 0 .. floor(n/2)
  double epsilon = kDefaultEpsilon;

  double max() const {
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
  }
};

template <class Seq>
SpectralProfile psd_profile(const Seq& x, double eps = kDefaultEpsilon) {
  const auto& table = dft_table(x.size());
  SpectralProfile out{std::vector<double>(x.size() / 2 + 1), eps};
  table.psd_half(x.entries(), out.values);
  return out;
}

inline int paf(std::span<const Entry> x, std::size_t k) {
  const std::size_t n = x.size();
  int s = 0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] * x[(j + k) % n];
  return s;
}

template <class Seq>
int paf(const Seq& x, std::size_t k) {
  return paf(x.entries(), k);
}

struct PafVector {
  std::vector<int> values;  // PAF(k) for k = 0 .. floor(n/2)
};

template <class Seq>
PafVector paf_vector(const Seq& x) {
  PafVector out;
  out.values.resize(x.size() / 2 + 1);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = paf(x.entries(), k);
  return out;
}

/// Subset form of the PSD bound: true iff sum over `rows` of PSD(k) <= 4*order + eps
/// for every k. `order` is the uncompressed n even when the rows are compressed.
inline bool passes_psd_filter(std::span<const std::span<const Entry>> rows, int order,
                              double eps = kDefaultEpsilon) {
  if (rows.empty()) throw InvalidInput("PSD filter needs at least one row");
  const std::size_t len = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != len) throw InvalidInput("PSD filter rows differ in length");
  }
  const auto& table = dft_table(len);
  const double bound = 4.0 * order + eps;
  for (std::size_t k = 0; k <= len / 2; ++k) {
    double sum = 0.0;
    for (const auto& r : rows) sum += table.psd(r, k);
    if (sum > bound) return false;
  }
  return true;
}

inline bool passes_psd_filter(std::initializer_list<std::span<const Entry>> rows, int order,
                              double eps = kDefaultEpsilon) {
  return passes_psd_filter(std::span<const std::span<const Entry>>(rows.begin(), rows.size()),
                           order, eps);
}

/// Exact test that (A, B, C, D) define circulant good matrices: the four PAFs
/// sum to zero at every nonzero shift. The zero shift sums to 4n by length.
inline bool paf_certificate(const DefiningQuad& q) {
  const std::size_t n = q.order();
  for (std::size_t k = 1; k <= n / 2; ++k) {
    int sum = 0;
    for (std::size_t r = 0; r < 4; ++r) sum += paf(q.row(r).entries(), k);
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace goodmat
