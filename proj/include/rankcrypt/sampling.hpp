#pragma once

#include <cstddef>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/rng.hpp"
#include "rankcrypt/tower.hpp"
#include "rankcrypt/vectors.hpp"

namespace rankcrypt {

/// Uniform vector of length len <= m with F_q-rank len.
inline MidVector sample_full_rank_vector(const BinaryField& f, std::size_t len, Rng& rng) {
  if (len > static_cast<std::size_t>(f.degree())) throw BadParameters("full-rank length exceeds m");
  for (;;) {
    MidVector v(len);
    for (auto& x : v) x = f.random(rng);
    if (rank_q(f, v) == len) return v;
  }
}

/// Uniform vector over F_{q^{mu}} of length len <= mu with F_q-rank len.
inline TopVector sample_full_rank_vector(const TowerField& t, std::size_t len, Rng& rng) {
  if (len > t.degree() * static_cast<std::size_t>(t.mid().degree()))
    throw BadParameters("full-rank length exceeds mu");
  for (;;) {
    TopVector v(len);
    for (auto& x : v) x = t.random(rng);
    if (rank_q(t, v) == len) return v;
  }
}

/// Uniform vector of length len <= u with rank_qm equal to len.
inline TopVector sample_independent_top(const TowerField& t, std::size_t len, Rng& rng) {
  if (len > t.degree()) throw BadParameters("cannot draw more than u independent elements");
  for (;;) {
    TopVector v(len);
    for (auto& x : v) x = t.random(rng);
    if (rank_qm(t, v) == len) return v;
  }
}

/// Vector of length n and F_q-rank exactly r: (n x r full rank) times a
/// random F_q-independent r-tuple.
inline MidVector sample_rank_t_vector(const BinaryField& f, std::size_t n, std::size_t r, Rng& rng) {
  if (r > n || r > static_cast<std::size_t>(f.degree())) throw BadParameters("rank exceeds min(m, n)");
  if (r == 0) return MidVector(n);
  const MidVector support = sample_full_rank_vector(f, r, rng);
  BitMatrix a;
  do a = BitMatrix::random(n, r, rng); while (a.rank() != r);
  MidVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (a.get(i, j)) v[i] += support[j];
  return v;
}

/// zeta vectors of F_{q^m}^w, each of F_q-rank w, independent over F_{q^m}.
inline std::vector<MidVector> sample_subspace_full_rank_basis(const BinaryField& f, std::size_t w, std::size_t zeta,
                                                             Rng& rng) {
  if (zeta > w || w > static_cast<std::size_t>(f.degree())) throw BadParameters("need zeta <= w <= m");
  for (;;) {
    std::vector<MidVector> basis;
    for (std::size_t i = 0; i < zeta; ++i) basis.push_back(sample_full_rank_vector(f, w, rng));
    auto a = Matrix<BinaryField>::zeros(f, zeta, w);
    for (std::size_t i = 0; i < zeta; ++i)
      for (std::size_t j = 0; j < w; ++j) a(i, j) = basis[i][j];
    if (rank(f, std::move(a)) == zeta) return basis;
  }
}

}  // namespace rankcrypt
