#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/field_matrix.hpp"
#include "rankcrypt/tower.hpp"

namespace rankcrypt {

using MidVector = std::vector<MidElement>;
using TopVector = std::vector<TopElement>;

/// n x m matrix whose row i holds the digits of v_i.
inline BitMatrix digit_rows(const BinaryField& f, std::span<const MidElement> v) {
  BitMatrix out(v.size(), static_cast<std::size_t>(f.degree()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto row = out.row(i);
    for (std::size_t w = 0; w < row.size(); ++w) row[w] = v[i].limbs[w];
  }
  return out;
}

/// Inverse of digit_rows.
inline MidVector from_digit_rows(const BinaryField& f, const BitMatrix& rows) {
  if (rows.cols() != static_cast<std::size_t>(f.degree())) throw BadParameters("digit matrix width must be m");
  MidVector v(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) v[i] = f.from_bits(rows.row(i));
  return v;
}

/// Ext(v): m x n matrix, column j the power-basis coordinates of v_j.
inline BitMatrix expand(const BinaryField& f, std::span<const MidElement> v) { return digit_rows(f, v).transpose(); }

/// Ext_B(v) for an arbitrary F_q-basis B of F_{q^m}.
inline BitMatrix expand(const BinaryField& f, std::span<const MidElement> v, std::span<const MidElement> basis) {
  if (basis.size() != static_cast<std::size_t>(f.degree())) throw NotABasis("basis must have m elements");
  const auto change = expand(f, basis).inverse();
  if (!change) throw NotABasis("elements are not independent over F_q");
  return *change * expand(f, v);
}

inline std::size_t rank_q(const BinaryField& f, std::span<const MidElement> v) { return digit_rows(f, v).rank(); }

/// Echelon basis of span_{F_q}{v_i}.
inline MidVector column_support(const BinaryField& f, std::span<const MidElement> v) {
  return from_digit_rows(f, digit_rows(f, v).row_space());
}

/// Row space of Ext(v) in RREF, as a (rank x n) matrix.
inline BitMatrix row_support(const BinaryField& f, std::span<const MidElement> v) { return expand(f, v).row_space(); }

/// F_q-rank of a vector over F_{q^{mu}}, viewing each entry as mu digits.
inline std::size_t rank_q(const TowerField& t, std::span<const TopElement> v) {
  const std::size_t m = static_cast<std::size_t>(t.mid().degree());
  BitMatrix rows(v.size(), m * t.degree());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < t.degree(); ++j)
      for (std::size_t d = 0; d < m; ++d)
        if (v[i].coeffs[j].digit(d)) rows.set(i, j * m + d, true);
  return rows.rank();
}

/// Dimension of the F_{q^m}-span of the entries.
inline std::size_t rank_qm(const TowerField& t, std::span<const TopElement> v) {
  auto a = Matrix<BinaryField>::zeros(t.mid(), v.size(), t.degree());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < t.degree(); ++j) a(i, j) = v[i].coeffs[j];
  return rank(t.mid(), std::move(a));
}

/// Entrywise Tr_{F_{q^{mu}}/F_{q^m}}.
inline MidVector trace_down(const TowerField& t, std::span<const TopElement> v) {
  MidVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = t.trace_down(v[i]);
  return out;
}

/// Tr(lambda v) entrywise.
inline MidVector trace_scaled(const TowerField& t, const TopElement& lambda, std::span<const TopElement> v) {
  MidVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = t.trace_down(t.mul(lambda, v[i]));
  return out;
}

inline MidVector add(std::span<const MidElement> a, std::span<const MidElement> b) {
  if (a.size() != b.size()) throw BadParameters("vector length mismatch");
  MidVector out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

inline MidVector sub(std::span<const MidElement> a, std::span<const MidElement> b) { return add(a, b); }

/// x P for a row vector x and an F_q matrix P.
inline MidVector times_base_matrix(std::span<const MidElement> x, const BitMatrix& p) {
  if (x.size() != p.rows()) throw BadParameters("vector length mismatch");
  MidVector out(p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p.get(i, j)) out[j] += x[i];
  return out;
}

inline TopVector times_base_matrix(const TowerField& t, std::span<const TopElement> x, const BitMatrix& p) {
  if (x.size() != p.rows()) throw BadParameters("vector length mismatch");
  TopVector out(p.cols(), t.zero());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p.get(i, j)) out[j] = t.add(out[j], x[i]);
  return out;
}

}  // namespace rankcrypt
