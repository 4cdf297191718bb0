#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/field_matrix.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/vectors.hpp"

namespace rankcrypt {

struct SupercodeDecodeResult {
  MidVector error;
  MidVector error_support;
  MidVector corrected;
  QPoly annihilator;
};

namespace detail {

inline Matrix<BinaryField> coefficient_rows(const BinaryField& f, std::span<const QPoly> polys, std::size_t width) {
  auto a = Matrix<BinaryField>::zeros(f, polys.size(), width);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < polys[i].size() && j < width; ++j) a(i, j) = polys[i].coeffs()[j];
  return a;
}

inline std::vector<QPoly> nonzero_rows(const Matrix<BinaryField>& a) {
  std::vector<QPoly> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    QPoly p(MidVector(a.row(i).begin(), a.row(i).end()));
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// F_q-linear erasure decoding: finds e with entries in span(support) such
/// that y - e lies in the row space of `gen`.
inline MidVector support_erasure_decode(const BinaryField& f, const Matrix<BinaryField>& gen,
                                        std::span<const MidElement> y, std::span<const MidElement> support) {
  const std::size_t n = y.size(), m = static_cast<std::size_t>(f.degree());
  if (gen.cols() != n) throw BadParameters("generator width must equal the word length");
  const MidVector v = column_support(f, support);
  const std::size_t s = v.size();
  const auto hrows = nullspace(f, gen);
  const std::size_t r = hrows.size();
  // Syndrome of y.
  MidVector syn(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) syn[i] += f.mul(hrows[i][j], y[j]);
  if (s == 0) {
    for (const auto& x : syn)
      if (!x.is_zero()) throw DecodingFailure("word is not in the code and the support is empty");
    return MidVector(n);
  }
  // Unknown a(j, l) in F_q at column j * s + l; e_j = sum_l a(j, l) v_l.
  BitMatrix sys(r * m, n * s);
  std::vector<std::uint8_t> rhs(r * m);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (hrows[i][j].is_zero()) continue;
      for (std::size_t l = 0; l < s; ++l) {
        const MidElement prod = f.mul(hrows[i][j], v[l]);
        for (std::size_t d = 0; d < m; ++d)
          if (prod.digit(d)) sys.set(i * m + d, j * s + l, true);
      }
    }
    for (std::size_t d = 0; d < m; ++d) rhs[i * m + d] = syn[i].digit(d) ? 1 : 0;
  }
  const auto sol = solve(sys, rhs);
  if (!sol) throw DecodingFailure("no error with the given support explains the syndrome");
  MidVector e(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < s; ++l)
      if ((*sol)[j * s + l]) e[j] += v[l];
  return e;
}

/// The code qpoly_{<k} + T evaluated at a basis g of F_{q^m} (so n = m),
/// decoded up to rank t.
///
/// For left decoding T is an F_{q^m}-space spanned by `t_basis`; for right
/// decoding T is the right space spanned by T_b o aX, a in F_{q^m}.
class Supercode {
 public:
  Supercode(std::shared_ptr<const EvaluationBasis> g, std::size_t k, std::vector<QPoly> t_basis, std::size_t t)
      : g_(std::move(g)), k_(k), t_basis_(std::move(t_basis)), t_(t) {
    const std::size_t m = g_->size();
    if (k_ + t_ > m) throw BadParameters("k + t exceeds m");
    for (auto& p : t_basis_) p = reduce(field(), p);
  }

  const BinaryField& field() const { return g_->field(); }
  std::size_t length() const { return g_->size(); }
  std::size_t k() const { return k_; }
  std::size_t t() const { return t_; }
  const std::vector<QPoly>& t_basis() const { return t_basis_; }

  /// Basis of qpoly_{<k+t} + qpoly_{<=t} o T: the monomials below k + t and
  /// the echelon reduction of X^{q^j} o T_b with coefficients below k + t
  /// removed.
  QPolySpace n_space_basis_left() const { return n_space(k_, t_basis_); }

  /// dim(qpoly_{<=t} o T).
  std::size_t composite_dim_left() const { return composite_dim(t_basis_); }

  /// k + 2t + dim(qpoly_{<=t} o T).
  std::size_t feasibility_lhs_left() const { return k_ + 2 * t_ + composite_dim_left(); }

  /// k + 2t + dim(T o qpoly_{<=t}), T read as a right space.
  std::size_t feasibility_lhs_right() const { return k_ + 2 * t_ + composite_dim(conjugate_space()); }

  /// Generator of the evaluated code, left reading of T, echelon rows.
  Matrix<BinaryField> generator_left() const { return generator(t_basis_); }

  SupercodeDecodeResult decode_left(std::span<const MidElement> y, bool force = false) const {
    if (!force && feasibility_lhs_left() > length())
      throw BadParameters("k + 2t + dim(qpoly<=t o T) = " + std::to_string(feasibility_lhs_left()) + " exceeds n = " +
                          std::to_string(length()));
    return decode_left_impl(t_basis_, y);
  }

  /// Solves Y o L = N by conjugation: with c = k - 1, Y' = X^{q^c} o Y* lies in
  /// qpoly_{<k} + T' + E' where T' = X^{q^c} o T* is a left space.
  SupercodeDecodeResult decode_right(std::span<const MidElement> y, bool force = false) const {
    if (!force && feasibility_lhs_right() > length())
      throw BadParameters("k + 2t + dim(T o qpoly<=t) = " + std::to_string(feasibility_lhs_right()) + " exceeds n = " +
                          std::to_string(length()));
    const auto& f = field();
    const std::size_t m = length(), c = shift();
    const QPoly sh = QPoly::monomial(MidElement::one(), c);
    const QPoly back = QPoly::monomial(MidElement::one(), (m - c) % m);
    const QPoly yc = compose_mod(f, sh, adjoint(f, g_->interpolate(y)));
    const auto inner = decode_left_impl(conjugate_space(), g_->evaluate(yc));
    const QPoly e = adjoint(f, compose_mod(f, back, g_->interpolate(inner.error)));
    SupercodeDecodeResult out;
    out.error = g_->evaluate(e);
    out.error_support = column_support(f, out.error);
    out.corrected = sub(y, out.error);
    out.annihilator = compose_mod(f, back, adjoint(f, inner.annihilator));
    return out;
  }

 private:
  std::size_t shift() const { return k_ > 0 ? k_ - 1 : 0; }

  std::vector<QPoly> conjugate_space() const {
    const auto& f = field();
    const QPoly sh = QPoly::monomial(MidElement::one(), shift());
    std::vector<QPoly> out;
    for (const auto& p : t_basis_) out.push_back(compose_mod(f, sh, adjoint(f, p)));
    return out;
  }

  std::vector<QPoly> composite_generators(const std::vector<QPoly>& tb) const {
    std::vector<QPoly> gens;
    for (std::size_t j = 0; j <= t_; ++j)
      for (const auto& p : tb) gens.push_back(reduce(field(), frobenius_left(field(), p, j)));
    return gens;
  }

  std::size_t composite_dim(const std::vector<QPoly>& tb) const {
    const auto gens = composite_generators(tb);
    if (gens.empty()) return 0;
    return rank(field(), detail::coefficient_rows(field(), gens, length()));
  }

  // Echelon basis of the projections of qpoly_{<=t} o T onto coefficients >= k + t.
  std::vector<QPoly> projected_generators(const std::vector<QPoly>& tb) const {
    const std::size_t m = length(), low = k_ + t_;
    auto gens = composite_generators(tb);
    if (gens.empty()) return {};
    auto a = detail::coefficient_rows(field(), gens, m);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < low; ++j) a(i, j) = field().zero();
    rref(field(), a);
    return detail::nonzero_rows(a);
  }

  QPolySpace n_space(std::size_t k, const std::vector<QPoly>& tb) const {
    QPolySpace out;
    for (std::size_t i = 0; i < k + t_; ++i) out.basis.push_back(QPoly::monomial(MidElement::one(), i));
    for (auto& p : projected_generators(tb)) out.basis.push_back(std::move(p));
    return out;
  }

  Matrix<BinaryField> generator(const std::vector<QPoly>& tb) const {
    const auto& f = field();
    const std::size_t n = length();
    auto gen = Matrix<BinaryField>::zeros(f, k_ + tb.size(), n);
    for (std::size_t j = 0; j < n; ++j) {
      MidElement x = g_->elements()[j];
      for (std::size_t i = 0; i < k_; ++i) {
        gen(i, j) = x;
        x = f.sqr(x);
      }
    }
    for (std::size_t b = 0; b < tb.size(); ++b) {
      const MidVector ev = g_->evaluate(tb[b]);
      for (std::size_t j = 0; j < n; ++j) gen(k_ + b, j) = ev[j];
    }
    const std::size_t r = rref(f, gen).size();
    auto out = Matrix<BinaryField>::zeros(f, r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = gen(i, j);
    return out;
  }

  SupercodeDecodeResult decode_left_impl(const std::vector<QPoly>& tb, std::span<const MidElement> y) const {
    const auto& f = field();
    const std::size_t m = length(), low = k_ + t_, nl = t_ + 1;
    if (y.size() != m) throw BadParameters("received word length must equal m");
    const QPoly ypoly = g_->interpolate(y);
    const auto w = projected_generators(tb);
    // Coefficient s >= k + t of Lambda o Y equals the projected N part.
    auto sys = Matrix<BinaryField>::zeros(f, m - low, nl + w.size());
    std::vector<MidElement> yf(m);
    for (std::size_t i = 0; i < m; ++i) yf[i] = ypoly.coeff(i);
    for (std::size_t j = 0; j < nl; ++j) {
      if (j)
        for (auto& x : yf) x = f.sqr(x);
      for (std::size_t s = low; s < m; ++s) sys(s - low, j) = yf[(s + m - j) % m];
    }
    for (std::size_t d = 0; d < w.size(); ++d)
      for (std::size_t s = low; s < m; ++s) sys(s - low, nl + d) = w[d].coeff(s);
    const auto kernel = nullspace(f, std::move(sys));
    if (kernel.empty()) throw DecodingFailure("supercode key equation has only the zero solution");
    const auto gen = generator(tb);
    for (const auto& sol : kernel) {
      const QPoly lambda(MidVector(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(nl)));
      if (lambda.is_zero()) continue;
      const MidVector support = kernel_basis(f, lambda);
      if (support.size() > t_) continue;
      MidVector e;
      try {
        e = support_erasure_decode(f, gen, y, support);
      } catch (const DecodingFailure&) {
        continue;
      }
      if (rank_q(f, e) > t_) continue;
      for (const auto& x : e)
        if (!evaluate(f, lambda, x).is_zero()) throw Error("annihilator does not vanish on the recovered error");
      SupercodeDecodeResult out;
      out.error_support = support;
      out.corrected = sub(y, e);
      out.error = std::move(e);
      out.annihilator = lambda;
      return out;
    }
    throw DecodingFailure("no solution of the supercode key equation yields a valid error");
  }

  std::shared_ptr<const EvaluationBasis> g_;
  std::size_t k_;
  std::vector<QPoly> t_basis_;
  std::size_t t_;
};

}  // namespace rankcrypt
