#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

/// Dense matrix over F_2, rows packed little-endian into 64-bit words
/// (column c of a row lives in bit c % 64 of word c / 64).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id.set(i, i, true);
    return id;
  }

  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      auto row = m.row(r);
      for (auto& w : row) w = rng();
      m.mask_row(r);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value) {
    assert(r < rows_ && c < cols_);
    auto& w = bits_[r * stride_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * stride_, stride_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * stride_, stride_}; }

  void xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = bits_.data() + dst * stride_;
    const std::uint64_t* s = bits_.data() + src * stride_;
    for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }
  bool row_is_zero(std::size_t r) const {
    const auto w = row(r);
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
  }

  bool is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t x) { return x == 0; });
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) t.set(c, r, true);
    return t;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    assert(a.cols_ == b.rows_);
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::uint64_t* o = out.bits_.data() + r * out.stride_;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (!a.get(r, k)) continue;
        const std::uint64_t* s = b.bits_.data() + k * b.stride_;
        for (std::size_t i = 0; i < out.stride_; ++i) o[i] ^= s[i];
      }
    }
    return out;
  }

  friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    BitMatrix out = a;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] ^= b.bits_[i];
    return out;
  }

  /// Reduced row echelon form in place; returns the pivot column of each
  /// nonzero row, in row order.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      const std::size_t word = c / 64;
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      std::size_t p = r;
      while (p < rows_ && !(bits_[p * stride_ + word] & bit)) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      // Row r is zero left of column c, so only the tail words change.
      const std::uint64_t* src = bits_.data() + r * stride_;
      for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t* dst = bits_.data() + i * stride_;
        if (i != r && (dst[word] & bit))
          for (std::size_t w = word; w < stride_; ++w) dst[w] ^= src[w];
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    BitMatrix tmp = *this;
    return tmp.rref().size();
  }

  /// Canonical basis of the row space (RREF, zero rows dropped).
  BitMatrix row_space() const {
    BitMatrix tmp = *this;
    const std::size_t r = tmp.rref().size();
    tmp.bits_.resize(r * stride_);
    tmp.rows_ = r;
    return tmp;
  }

  /// Basis of {x : M x = 0}, one vector per row, ordered by free column.
  BitMatrix nullspace() const {
    BitMatrix red = *this;
    const auto pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    BitMatrix basis(cols_ - pivots.size(), cols_);
    std::size_t b = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      basis.set(b, f, true);
      for (std::size_t i = 0; i < pivots.size(); ++i)
        if (red.get(i, f)) basis.set(b, pivots[i], true);
      ++b;
    }
    return basis;
  }

  std::optional<BitMatrix> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c)
        if (get(r, c)) aug.set(r, c, true);
      aug.set(r, n + r, true);
    }
    const auto pivots = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (aug.get(r, n + c)) inv.set(r, c, true);
    return inv;
  }

  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  /// Rows [first, first + count) as a new matrix.
  BitMatrix row_block(std::size_t first, std::size_t count) const {
    BitMatrix out(count, cols_);
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(first * stride_), count * stride_, out.bits_.begin());
    return out;
  }

  /// Columns [first, first + count) as a new matrix.
  BitMatrix column_block(std::size_t first, std::size_t count) const {
    BitMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c)
        if (get(r, first + c)) out.set(r, c, true);
    return out;
  }

 private:
  void mask_row(std::size_t r) {
    if (cols_ % 64 != 0 && stride_ > 0) bits_[r * stride_ + stride_ - 1] &= (std::uint64_t{1} << (cols_ % 64)) - 1;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Solves A x = b over F_2. Free variables are set to zero.
inline std::optional<std::vector<std::uint8_t>> solve(const BitMatrix& a, std::span<const std::uint8_t> b) {
  assert(b.size() == a.rows());
  const std::size_t n = a.cols();
  BitMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = aug.row(r);
    const auto src = a.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
    if (b[r]) aug.set(r, n, true);
  }
  const auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  std::vector<std::uint8_t> x(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.get(i, n) ? 1 : 0;
  return x;
}

/// Uniformly random invertible n x n matrix over F_2.
inline BitMatrix sample_gln(std::size_t n, Rng& rng) {
  for (;;) {
    BitMatrix m = BitMatrix::random(n, n, rng);
    if (m.is_invertible()) return m;
  }
}

/// Uniformly random rows x cols matrix of rank exactly r (requires r <= min).
inline BitMatrix sample_rank_matrix(std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  if (r > rows || r > cols) throw BadParameters("requested rank exceeds matrix dimensions");
  if (r == 0) return BitMatrix(rows, cols);
  BitMatrix left, right;
  do left = BitMatrix::random(rows, r, rng); while (left.rank() != r);
  do right = BitMatrix::random(r, cols, rng); while (right.rank() != r);
  return left * right;
}

}  // namespace rankcrypt
