#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/field_matrix.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/sampling.hpp"
#include "rankcrypt/vectors.hpp"

namespace rankcrypt {

struct DecodeResult {
  MidVector codeword;
  MidVector message;
  MidVector error;
  std::size_t error_rank = 0;
  QPoly annihilator;
};

/// Gab_k(g): evaluations at g of q-polynomials of q-degree < k.
class GabidulinCode {
 public:
  GabidulinCode(BinaryField f, MidVector g, std::size_t k) : f_(std::move(f)), g_(std::move(g)), k_(k) {
    const std::size_t n = g_.size();
    if (n > static_cast<std::size_t>(f_.degree())) throw BadParameters("code length exceeds m");
    if (k_ > n) throw BadParameters("dimension exceeds length");
    if (rank_q(f_, g_) != n) throw NotABasis("support vector is not of full rank");
    if (n == static_cast<std::size_t>(f_.degree())) basis_ = std::make_shared<const EvaluationBasis>(f_, g_);
  }

  const BinaryField& field() const { return f_; }
  const MidVector& support() const { return g_; }
  std::size_t length() const { return g_.size(); }
  std::size_t dimension() const { return k_; }
  std::size_t unique_radius() const { return (length() - k_) / 2; }
  /// Available when n = m.
  const EvaluationBasis* evaluation_basis() const { return basis_.get(); }

  MidVector encode(std::span<const MidElement> msg) const {
    if (msg.size() != k_) throw BadParameters("message length must equal k");
    return evaluate(f_, QPoly(MidVector(msg.begin(), msg.end())), g_);
  }

  /// k x n matrix with rows g^{[i]}.
  Matrix<BinaryField> generator_matrix() const {
    auto gm = Matrix<BinaryField>::zeros(f_, k_, length());
    for (std::size_t j = 0; j < length(); ++j) {
      MidElement x = g_[j];
      for (std::size_t i = 0; i < k_; ++i) {
        gm(i, j) = x;
        x = f_.sqr(x);
      }
    }
    return gm;
  }

  /// (n - k) x n matrix H with H c^T = 0 on the code.
  Matrix<BinaryField> parity_check() const {
    const auto rows = nullspace(f_, generator_matrix());
    auto h = Matrix<BinaryField>::zeros(f_, rows.size(), length());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < length(); ++j) h(i, j) = rows[i][j];
    return h;
  }

  MidVector unencode(std::span<const MidElement> codeword) const {
    if (codeword.size() != length()) throw BadParameters("word length must equal n");
    const auto gm = generator_matrix();
    auto gt = Matrix<BinaryField>::zeros(f_, length(), k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < length(); ++j) gt(j, i) = gm(i, j);
    auto msg = solve(f_, gt, codeword);
    if (!msg) throw NotACodeword("word is not in the code");
    return *msg;
  }

  bool contains(std::span<const MidElement> word) const {
    try {
      unencode(word);
      return true;
    } catch (const NotACodeword&) {
      return false;
    }
  }

  /// Welch-Berlekamp with a left error annihilator: V(y_i) = N(g_i) with
  /// q-degree V <= t and N of q-degree < k + t; then N = V o C.
  DecodeResult decode_left(std::span<const MidElement> y, std::optional<std::size_t> t_max = std::nullopt) const {
    const std::size_t t = check_radius(y, t_max);
    const std::size_t n = length(), nv = t + 1, nn = k_ + t;
    auto sys = Matrix<BinaryField>::zeros(f_, n, nv + nn);
    for (std::size_t i = 0; i < n; ++i) {
      MidElement x = y[i];
      for (std::size_t j = 0; j < nv; ++j) {
        sys(i, j) = x;
        x = f_.sqr(x);
      }
      x = g_[i];
      for (std::size_t l = 0; l < nn; ++l) {
        sys(i, nv + l) = x;
        x = f_.sqr(x);
      }
    }
    const auto kernel = nullspace(f_, std::move(sys));
    if (kernel.empty()) throw DecodingFailure("key equation has no nonzero solution");
    const auto& sol = kernel.front();
    const QPoly v(MidVector(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(nv)));
    const QPoly nq(MidVector(sol.begin() + static_cast<std::ptrdiff_t>(nv), sol.end()));
    if (v.is_zero()) throw DecodingFailure("degenerate solution of the key equation");
    auto [c, r] = left_divide(f_, nq, v);
    return finish(y, c, r, v, t);
  }

  /// Right-hand variant; requires n = m. Solves V*(y^_i) = N*(g_i) with
  /// y^ = Y*(g), Y the interpolation of y; then N = C o V.
  DecodeResult decode_right(std::span<const MidElement> y, std::optional<std::size_t> t_max = std::nullopt) const {
    if (!basis_) throw BadParameters("right-hand decoding requires n = m");
    const std::size_t t = check_radius(y, t_max);
    const std::size_t n = length(), m = n, nv = t + 1, nn = k_ + t;
    const QPoly ystar = adjoint(f_, basis_->interpolate(y));
    const MidVector yhat = evaluate(f_, ystar, g_);
    auto sys = Matrix<BinaryField>::zeros(f_, n, nv + nn);
    for (std::size_t i = 0; i < n; ++i) {
      // Column for index j holds x^{q^{(m - j) mod m}}; walk j downwards.
      MidElement x = yhat[i];  // exponent q^0 = q^m
      for (std::size_t s = 0; s < m; ++s) {
        const std::size_t j = (m - s) % m;  // x = yhat^{q^s}, s = (m - j) mod m
        if (j < nv) sys(i, j) = x;
        x = f_.sqr(x);
      }
      x = g_[i];
      for (std::size_t s = 0; s < m; ++s) {
        const std::size_t l = (m - s) % m;
        if (l < nn) sys(i, nv + l) = x;
        x = f_.sqr(x);
      }
    }
    const auto kernel = nullspace(f_, std::move(sys));
    if (kernel.empty()) throw DecodingFailure("key equation has no nonzero solution");
    const auto& sol = kernel.front();
    MidVector vc(nv), nc(nn);
    for (std::size_t j = 0; j < nv; ++j) vc[j] = f_.frobenius(sol[j], static_cast<long>(j));
    for (std::size_t l = 0; l < nn; ++l) nc[l] = f_.frobenius(sol[nv + l], static_cast<long>(l));
    const QPoly v(std::move(vc)), nq(std::move(nc));
    if (v.is_zero()) throw DecodingFailure("degenerate solution of the key equation");
    auto [c, r] = right_divide(f_, nq, v);
    return finish(y, c, r, v, t);
  }

 private:
  std::size_t check_radius(std::span<const MidElement> y, std::optional<std::size_t> t_max) const {
    if (y.size() != length()) throw BadParameters("received word length must equal n");
    const std::size_t t = t_max.value_or(unique_radius());
    if (t > unique_radius()) throw BadParameters("decoding radius exceeds (n - k) / 2");
    return t;
  }

  DecodeResult finish(std::span<const MidElement> y, const QPoly& c, const QPoly& r, const QPoly& v, std::size_t t) const {
    if (!r.is_zero()) throw DecodingFailure("nonzero remainder in the final division");
    if (c.q_degree() >= static_cast<int>(k_)) throw DecodingFailure("quotient exceeds the code dimension");
    DecodeResult out;
    out.message = c.coeffs();
    out.message.resize(k_);
    out.codeword = evaluate(f_, c, g_);
    out.error = sub(y, out.codeword);
    out.error_rank = rank_q(f_, out.error);
    if (out.error_rank > t) throw DecodingFailure("recovered error exceeds the decoding radius");
    out.annihilator = v;
    return out;
  }

  BinaryField f_;
  MidVector g_;
  std::size_t k_;
  std::shared_ptr<const EvaluationBasis> basis_;
};

/// Error vector of length n and rank exactly t.
inline MidVector sample_error(const BinaryField& f, std::size_t n, std::size_t t, Rng& rng) {
  return sample_rank_t_vector(f, n, t, rng);
}

}  // namespace rankcrypt
