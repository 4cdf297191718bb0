#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rankcrypt/errors.hpp"

namespace rankcrypt {

template <class F>
concept FieldLike = requires(const F& f, const typename F::Element& a) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
};

/// Dense row-major matrix over a field given at call sites.
template <FieldLike F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Element& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zeros(const F& f, std::size_t rows, std::size_t cols) { return Matrix(rows, cols, f.zero()); }
  static Matrix identity(const F& f, std::size_t n) {
    Matrix m = zeros(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

  void append_row(std::span<const Element> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw BadParameters("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <FieldLike F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && f.is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    const auto inv = f.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      const auto factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!f.is_zero(a(r, j))) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <FieldLike F>
std::size_t rank(const F& f, Matrix<F> a) {
  return rref(f, a).size();
}

/// Basis of {x : a x = 0}, one vector per free column in increasing order;
/// each has a 1 at its free column.
template <FieldLike F>
std::vector<std::vector<typename F::Element>> nullspace(const F& f, Matrix<F> a) {
  const auto pivots = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename F::Element> v(a.cols(), f.zero());
    v[c] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(f.zero(), a(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of a x = b (free variables zero), or nullopt if inconsistent.
template <FieldLike F>
std::optional<std::vector<typename F::Element>> solve(const F& f, const Matrix<F>& a,
                                                      std::span<const typename F::Element> b) {
  if (b.size() != a.rows()) throw BadParameters("right-hand side length mismatch");
  Matrix<F> aug = Matrix<F>::zeros(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<typename F::Element> x(a.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

template <FieldLike F>
std::optional<Matrix<F>> inverse(const F& f, const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw BadParameters("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<F> aug = Matrix<F>::zeros(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  const auto pivots = rref(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> out = Matrix<F>::zeros(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

template <FieldLike F>
Matrix<F> multiply(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw BadParameters("matrix shape mismatch");
  Matrix<F> out = Matrix<F>::zeros(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (f.is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, l), b(l, j)));
    }
  return out;
}

/// a x for a column vector x.
template <FieldLike F>
std::vector<typename F::Element> apply(const F& f, const Matrix<F>& a, std::span<const typename F::Element> x) {
  if (x.size() != a.cols()) throw BadParameters("vector length mismatch");
  std::vector<typename F::Element> y(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = f.add(y[i], f.mul(a(i, j), x[j]));
  return y;
}

/// x a for a row vector x.
template <FieldLike F>
std::vector<typename F::Element> apply_left(const F& f, std::span<const typename F::Element> x, const Matrix<F>& a) {
  if (x.size() != a.rows()) throw BadParameters("vector length mismatch");
  std::vector<typename F::Element> y(a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (f.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] = f.add(y[j], f.mul(x[i], a(i, j)));
  }
  return y;
}

}  // namespace rankcrypt
