#pragma once

// Independent certificates for defining rows, using exact integer matrices
// only (no spectral code):
//   - Definition check with circulant matrices: A skew, B, C, D symmetric,
//     A A^T + B^2 + C^2 + D^2 = 4n I.
//   - Recovery of amicable good matrices by reversing the rows of B, C, D.
//   - The 4x4 block skew Hadamard construction of order 4n.

#include <array>
#include <cstddef>
#include <vector>

#include "goodmat/error.hpp"
#include "goodmat/seq.hpp"

namespace goodmat {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static IntMatrix scaled_identity(std::size_t n, int scale) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool is_symmetric() const { return *this == transpose(); }

  friend IntMatrix operator*(const IntMatrix& l, const IntMatrix& r) {
    if (l.cols_ != r.rows_) throw InvalidInput("matrix shapes do not match");
    IntMatrix out(l.rows_, r.cols_);
    for (std::size_t i = 0; i < l.rows_; ++i) {
      for (std::size_t k = 0; k < l.cols_; ++k) {
        const int v = l(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < r.cols_; ++j) out(i, j) += v * r(k, j);
      }
    }
    return out;
  }

  friend IntMatrix operator+(IntMatrix l, const IntMatrix& r) {
    if (l.rows_ != r.rows_ || l.cols_ != r.cols_) throw InvalidInput("matrix shapes do not match");
    for (std::size_t i = 0; i < l.data_.size(); ++i) l.data_[i] += r.data_[i];
    return l;
  }

  IntMatrix operator-() const {
    IntMatrix out = *this;
    for (auto& v : out.data_) v = -v;
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<int> data_;
};

/// Row i is the defining row cyclically shifted right by i.
inline IntMatrix circulant(const PmSequence& row) {
  const std::size_t n = row.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[(j + n - i) % n];
  }
  return m;
}

inline IntMatrix reverse_rows(const IntMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(m.rows() - 1 - i, j);
  }
  return out;
}

inline bool is_skew_matrix(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 1) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) return false;
    }
  }
  return true;
}

namespace detail {

inline bool gram_condition(const std::array<IntMatrix, 4>& g) {
  const std::size_t n = g[0].rows();
  IntMatrix sum = g[0] * g[0].transpose();
  for (std::size_t r = 1; r < 4; ++r) sum = sum + g[r] * g[r];
  return sum == IntMatrix::scaled_identity(n, 4 * static_cast<int>(n));
}

}  // namespace detail

/// Circulant variant of the definition: A skew, B, C, D symmetric, and
/// A A^T + B^2 + C^2 + D^2 = 4n I, all in exact integer arithmetic.
inline bool verify_definition(const DefiningQuad& q) {
  std::array<IntMatrix, 4> g{circulant(q.a()), circulant(q.b()), circulant(q.c()), circulant(q.d())};
  if (!is_skew_matrix(g[0])) return false;
  for (std::size_t r = 1; r < 4; ++r) {
    if (!g[r].is_symmetric()) return false;
  }
  return detail::gram_condition(g);
}

/// Original definition: pairwise amicable, A skew, B, C, D symmetric, and the
/// Gram identity.
inline bool is_good_family(const std::array<IntMatrix, 4>& g) {
  if (!is_skew_matrix(g[0])) return false;
  for (std::size_t r = 1; r < 4; ++r) {
    if (!g[r].is_symmetric()) return false;
  }
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = x + 1; y < 4; ++y) {
      if (!(g[x] * g[y].transpose()).is_symmetric()) return false;
    }
  }
  return detail::gram_condition(g);
}

/// A unchanged; B, C, D with their rows in reverse order.
inline std::array<IntMatrix, 4> recover_amicable(const DefiningQuad& q) {
  if (!verify_definition(q)) throw InvalidInput("rows do not define circulant good matrices");
  std::array<IntMatrix, 4> g{circulant(q.a()), reverse_rows(circulant(q.b())),
                             reverse_rows(circulant(q.c())), reverse_rows(circulant(q.d()))};
  if (!is_good_family(g)) throw ConstructionError("row reversal did not produce amicable good matrices");
  return g;
}

inline bool is_skew_hadamard(const IntMatrix& h) {
  const std::size_t order = h.rows();
  if (h * h.transpose() != IntMatrix::scaled_identity(order, static_cast<int>(order))) return false;
  return h + h.transpose() == IntMatrix::scaled_identity(order, 2);
}

/// Block array
///    A  B  C  D
///   -B  A  D -C
///   -C -D  A  B
///   -D  C -B  A
/// on the recovered good matrices; verified before it is returned.
inline IntMatrix build_skew_hadamard(const DefiningQuad& q) {
  const auto g = recover_amicable(q);
  const IntMatrix &a = g[0], &b = g[1], &c = g[2], &d = g[3];
  const IntMatrix nb = -b, nc = -c, nd = -d;
  const IntMatrix* layout[4][4] = {
      {&a, &b, &c, &d}, {&nb, &a, &d, &nc}, {&nc, &nd, &a, &b}, {&nd, &c, &nb, &a}};
  const std::size_t n = q.order();
  IntMatrix h(4 * n, 4 * n);
  for (std::size_t bi = 0; bi < 4; ++bi) {
    for (std::size_t bj = 0; bj < 4; ++bj) {
      const IntMatrix& blk = *layout[bi][bj];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) h(bi * n + i, bj * n + j) = blk(i, j);
      }
    }
  }
  if (!is_skew_hadamard(h)) throw ConstructionError("block array is not a skew Hadamard matrix");
  return h;
}

/// a_k b_k c_k d_k = -a_{2k mod n} b_0 c_0 d_0 for 1 <= k < n.
inline bool satisfies_product_theorem(const DefiningQuad& q) {
  const std::size_t n = q.order();
  const int base = q.b()[0] * q.c()[0] * q.d()[0];
  for (std::size_t k = 1; k < n; ++k) {
    if (q.a()[k] * q.b()[k] * q.c()[k] * q.d()[k] != -q.a()[(2 * k) % n] * base) return false;
  }
  return true;
}

}  // namespace goodmat
