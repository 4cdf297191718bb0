#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/vectors.hpp"

namespace rankcrypt {

/// q-degree reported for the zero polynomial.
inline constexpr int kZeroQDegree = std::numeric_limits<int>::min();

/// q-polynomial sum_i p_i X^{q^i}; coefficient vectors are kept trimmed.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<MidElement> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static QPoly identity() { return QPoly({MidElement::one()}); }
  /// a X^{q^i}
  static QPoly monomial(const MidElement& a, std::size_t i) {
    std::vector<MidElement> c(i + 1);
    c[i] = a;
    return QPoly(std::move(c));
  }

  int q_degree() const { return coeffs_.empty() ? kZeroQDegree : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<MidElement>& coeffs() const { return coeffs_; }
  MidElement coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : MidElement{}; }
  const MidElement& leading() const { return coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == MidElement::one(); }

  void set_coeff(std::size_t i, const MidElement& a) {
    if (i >= coeffs_.size()) coeffs_.resize(i + 1);
    coeffs_[i] = a;
    trim();
  }

  QPoly& operator+=(const QPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) { return *this += o; }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a += b; }

  friend bool operator==(const QPoly&, const QPoly&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<MidElement> coeffs_;
};

/// F_{q^m}-linear span of q-polynomials, by basis.
struct QPolySpace {
  std::vector<QPoly> basis;
  std::size_t dim() const { return basis.size(); }
};

inline MidElement evaluate(const BinaryField& f, const QPoly& p, MidElement x) {
  MidElement acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) x = f.sqr(x);
    if (!p.coeffs()[i].is_zero()) acc += f.mul(p.coeffs()[i], x);
  }
  return acc;
}

inline MidVector evaluate(const BinaryField& f, const QPoly& p, std::span<const MidElement> xs) {
  MidVector out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluate(f, p, xs[i]);
  return out;
}

/// a P (left scalar multiplication, i.e. (aX) o P).
inline QPoly scale(const BinaryField& f, const MidElement& a, const QPoly& p) {
  std::vector<MidElement> c(p.coeffs());
  for (auto& x : c) x = f.mul(a, x);
  return QPoly(std::move(c));
}

/// Class of P modulo X^{q^m} - X, as a polynomial of q-degree < m.
inline QPoly reduce(const BinaryField& f, const QPoly& p) {
  const std::size_t m = static_cast<std::size_t>(f.degree());
  if (p.size() <= m) return p;
  std::vector<MidElement> c(m);
  for (std::size_t i = 0; i < p.size(); ++i) c[i % m] += p.coeffs()[i];
  return QPoly(std::move(c));
}

/// P o Q without reduction.
inline QPoly compose(const BinaryField& f, const QPoly& p, const QPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<MidElement> c(p.size() + q.size() - 1);
  std::vector<MidElement> qf(q.coeffs());  // q_j^{q^i} for the current i
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      for (auto& x : qf) x = f.sqr(x);
    const auto& pi = p.coeffs()[i];
    if (pi.is_zero()) continue;
    for (std::size_t j = 0; j < qf.size(); ++j) c[i + j] += f.mul(pi, qf[j]);
  }
  return QPoly(std::move(c));
}

/// P o Q modulo X^{q^m} - X.
inline QPoly compose_mod(const BinaryField& f, const QPoly& p, const QPoly& q) {
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const QPoly pr = reduce(f, p), qr = reduce(f, q);
  if (pr.is_zero() || qr.is_zero()) return {};
  std::vector<MidElement> c(m);
  std::vector<MidElement> qf(qr.coeffs());
  for (std::size_t i = 0; i < pr.size(); ++i) {
    if (i)
      for (auto& x : qf) x = f.sqr(x);
    const auto& pi = pr.coeffs()[i];
    if (pi.is_zero()) continue;
    for (std::size_t j = 0; j < qf.size(); ++j) c[(i + j) % m] += f.mul(pi, qf[j]);
  }
  return QPoly(std::move(c));
}

/// X^{q^j} o P: coefficients raised to q^j and shifted by j (no reduction).
inline QPoly frobenius_left(const BinaryField& f, const QPoly& p, std::size_t j) {
  if (p.is_zero()) return {};
  std::vector<MidElement> c(p.size() + j);
  for (std::size_t i = 0; i < p.size(); ++i) c[i + j] = f.frobenius(p.coeffs()[i], static_cast<long>(j));
  return QPoly(std::move(c));
}

/// Adjoint with respect to the trace form: sum p_i^{q^{m-i}} X^{q^{m-i}}.
inline QPoly adjoint(const BinaryField& f, const QPoly& p) {
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const QPoly pr = reduce(f, p);
  if (pr.is_zero()) return {};
  std::vector<MidElement> c(m);
  for (std::size_t i = 0; i < pr.size(); ++i) {
    const std::size_t j = (m - i) % m;
    c[j] = f.frobenius(pr.coeffs()[i], static_cast<long>(j));
  }
  return QPoly(std::move(c));
}

/// The power basis 1, theta, ..., theta^{m-1}.
inline MidVector power_basis(const BinaryField& f) {
  MidVector b(static_cast<std::size_t>(f.degree()));
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = MidElement::monomial(i);
  return b;
}

/// An F_q-basis g of F_{q^m} prepared for coordinates and interpolation.
/// Interpolation uses the trace-dual basis g*: the unique P of q-degree < m
/// with P(g_j) = y_j has p_i = sum_j y_j (g*_j)^{q^i}.
class EvaluationBasis {
 public:
  EvaluationBasis(const BinaryField& f, MidVector g) : f_(f), g_(std::move(g)) {
    const std::size_t m = static_cast<std::size_t>(f.degree());
    if (g_.size() != m) throw NotABasis("an evaluation basis needs exactly m elements");
    // t(i, l) = Tr(g_i theta^l); g*_j = sum_l c(j, l) theta^l with t c^T = I.
    BitMatrix t(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      MidElement x = g_[i];
      for (std::size_t l = 0; l < m; ++l) {
        if (f.trace(x)) t.set(i, l, true);
        x = f.mul(x, f.generator());
      }
    }
    const auto tinv = t.inverse();
    if (!tinv) throw NotABasis("support vector is not of full rank");
    dual_.resize(m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l)
        if (tinv->get(l, j)) dual_[j].set_digit(l, true);
    frob_dual_.resize(m * m);
    for (std::size_t j = 0; j < m; ++j) {
      MidElement x = dual_[j];
      for (std::size_t i = 0; i < m; ++i) {
        frob_dual_[i * m + j] = x;
        x = f.sqr(x);
      }
    }
  }

  const BinaryField& field() const { return f_; }
  const MidVector& elements() const { return g_; }
  const MidVector& dual() const { return dual_; }
  std::size_t size() const { return g_.size(); }

  QPoly interpolate(std::span<const MidElement> y) const {
    const std::size_t m = g_.size();
    if (y.size() != m) throw BadParameters("interpolation needs m values");
    std::vector<MidElement> c(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!y[j].is_zero()) c[i] += f_.mul(y[j], frob_dual_[i * m + j]);
    return QPoly(std::move(c));
  }

  MidVector evaluate(const QPoly& p) const { return rankcrypt::evaluate(f_, p, g_); }

  /// Coordinates of x in this basis: x = sum_i Tr(g*_i x) g_i.
  std::vector<std::uint8_t> coordinates(const MidElement& x) const {
    std::vector<std::uint8_t> out(g_.size());
    for (std::size_t i = 0; i < g_.size(); ++i) out[i] = f_.trace(f_.mul(dual_[i], x)) ? 1 : 0;
    return out;
  }

 private:
  BinaryField f_;
  MidVector g_;
  MidVector dual_;
  std::vector<MidElement> frob_dual_;  // (g*_j)^{q^i} at [i * m + j]
};

/// Y of q-degree < m with Y(g_i) = y_i.
inline QPoly interpolate(const BinaryField& f, std::span<const MidElement> g, std::span<const MidElement> y) {
  return EvaluationBasis(f, MidVector(g.begin(), g.end())).interpolate(y);
}

/// m x m matrix over F_q, column j the power-basis coordinates of P(theta^j).
inline BitMatrix matrix_rep(const BinaryField& f, const QPoly& p) {
  return expand(f, evaluate(f, p, power_basis(f)));
}

/// Matrix of P in the basis b: column j = coords_b(P(b_j)).
inline BitMatrix matrix_rep(const QPoly& p, const EvaluationBasis& b) {
  const std::size_t m = b.size();
  BitMatrix out(m, m);
  const MidVector images = b.evaluate(p);
  for (std::size_t j = 0; j < m; ++j) {
    const auto c = b.coordinates(images[j]);
    for (std::size_t i = 0; i < m; ++i)
      if (c[i]) out.set(i, j, true);
  }
  return out;
}

inline QPoly from_matrix(const BitMatrix& mat, const EvaluationBasis& b) {
  const std::size_t m = b.size();
  if (mat.rows() != m || mat.cols() != m) throw BadParameters("matrix must be m x m");
  MidVector images(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (mat.get(i, j)) images[j] += b.elements()[i];
  return b.interpolate(images);
}

inline QPoly from_matrix(const BinaryField& f, const BitMatrix& mat) {
  return from_matrix(mat, EvaluationBasis(f, power_basis(f)));
}

inline std::size_t rank(const BinaryField& f, const QPoly& p) { return matrix_rep(f, p).rank(); }

/// Echelon F_q-basis of ker P.
inline MidVector kernel_basis(const BinaryField& f, const QPoly& p) {
  return from_digit_rows(f, matrix_rep(f, p).nullspace().row_space());
}

/// Echelon F_q-basis of Im P.
inline MidVector image_basis(const BinaryField& f, const QPoly& p) {
  return from_digit_rows(f, matrix_rep(f, p).transpose().row_space());
}

struct DivisionResult {
  QPoly quotient;
  QPoly remainder;
};

/// A = Q o B + R with q-degree(R) < q-degree(B); no reduction mod X^{q^m} - X.
inline DivisionResult right_divide(const BinaryField& f, const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const std::size_t db = b.size() - 1;
  std::vector<MidElement> r(a.coeffs());
  std::vector<MidElement> quot(r.size() > db ? r.size() - db : 0);
  for (std::size_t top = r.size(); top-- > db;) {
    if (r[top].is_zero()) continue;
    const std::size_t d = top - db;
    const long dl = static_cast<long>(d);
    const MidElement c = f.div(r[top], f.frobenius(b.leading(), dl));
    quot[d] = c;
    for (std::size_t j = 0; j <= db; ++j)
      if (!b.coeffs()[j].is_zero()) r[j + d] += f.mul(c, f.frobenius(b.coeffs()[j], dl));
  }
  return {QPoly(std::move(quot)), QPoly(std::move(r))};
}

/// A = B o Q + R with q-degree(R) < q-degree(B); no reduction mod X^{q^m} - X.
inline DivisionResult left_divide(const BinaryField& f, const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const std::size_t db = b.size() - 1;
  std::vector<MidElement> r(a.coeffs());
  std::vector<MidElement> quot(r.size() > db ? r.size() - db : 0);
  for (std::size_t top = r.size(); top-- > db;) {
    if (r[top].is_zero()) continue;
    const std::size_t d = top - db;
    const MidElement c = f.frobenius(f.div(r[top], b.leading()), -static_cast<long>(db));
    quot[d] = c;
    MidElement cf = c;  // c^{q^i}
    for (std::size_t i = 0; i <= db; ++i) {
      if (i) cf = f.sqr(cf);
      if (!b.coeffs()[i].is_zero()) r[i + d] += f.mul(b.coeffs()[i], cf);
    }
  }
  return {QPoly(std::move(quot)), QPoly(std::move(r))};
}

/// Monic q-polynomial of q-degree dim U vanishing exactly on U (unreduced;
/// for U = F_{q^m} this is X^{q^m} - X).
inline QPoly subspace_polynomial(const BinaryField& f, std::span<const MidElement> spanning) {
  const MidVector basis = column_support(f, spanning);
  QPoly l = QPoly::identity();
  for (const auto& b : basis) {
    // L <- L^q - L(b)^{q-1} L, with q = 2.
    const MidElement lb = evaluate(f, l, b);
    l = frobenius_left(f, l, 1) - scale(f, lb, l);
  }
  return l;
}

/// Monic V of q-degree rank(E) with V o E = 0; X when E = 0.
inline QPoly left_annihilator(const BinaryField& f, const QPoly& e) {
  return subspace_polynomial(f, image_basis(f, e));
}

/// Monic V of q-degree rank(E) with E o V = 0 mod X^{q^m} - X; X when E = 0.
inline QPoly right_annihilator(const BinaryField& f, const QPoly& e) {
  const long m = f.degree();
  const QPoly q = subspace_polynomial(f, image_basis(f, adjoint(f, e)));
  const std::size_t t = q.size() - 1;
  if (t == 0) return QPoly::identity();
  if (t == static_cast<std::size_t>(m)) return QPoly::monomial(MidElement::one(), t) - QPoly::identity();
  // adjoint(Q) = V o X^{q^{m-t}}, V = sum_i a_{t-i}^{q^{m-t+i}} X^{q^i}.
  std::vector<MidElement> v(t + 1);
  for (std::size_t i = 0; i <= t; ++i)
    v[i] = f.frobenius(q.coeffs()[t - i], m - static_cast<long>(t) + static_cast<long>(i));
  // Monic by right composition with cX, c^{q^t} = 1 / v_t.
  const MidElement c = f.frobenius(f.inv(v[t]), m - static_cast<long>(t));
  MidElement cf = c;
  for (std::size_t i = 0; i <= t; ++i) {
    if (i) cf = f.sqr(cf);
    v[i] = f.mul(v[i], cf);
  }
  return QPoly(std::move(v));
}

/// Uniformly random q-polynomial of q-degree < bound.
inline QPoly random_qpoly(const BinaryField& f, std::size_t bound, Rng& rng) {
  std::vector<MidElement> c(bound);
  for (auto& x : c) x = f.random(rng);
  return QPoly(std::move(c));
}

}  // namespace rankcrypt
