#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

struct RamessesParams {
  std::size_t m = 0;  // also the code length n
  std::size_t k = 0;
  std::size_t w = 0;
  std::size_t l = 0;  // q-degree of the masking polynomial T
  std::size_t t = 0;

  void validate() const {
    auto in_range = [&](std::size_t v) { return v >= 1 && v <= m; };
    if (!in_range(k) || !in_range(w) || !in_range(l) || !in_range(t))
      throw BadParameters("ramesses parameters need 1 <= w, k, l, t <= m");
    if (k + l + w > m || 2 * t > m - k - l - w) throw BadParameters("ramesses parameters violate 2t <= n - k - l - w");
  }
  friend bool operator==(const RamessesParams&, const RamessesParams&) = default;
};

struct RamessesKeyPair {
  QPoly secret;  // K_sec, rank w
  QPoly public_key;  // K_sec with coefficients below k cleared
};

/// t x m echelon basis of a t-dimensional subspace of F_q^m.
using RamessesPlaintext = BitMatrix;

/// Ciphertext together with the encryption randomness.
struct RamessesEncryption {
  QPoly ciphertext;
  QPoly c;
  QPoly c0;  // C'_0, with C' = C'_0 + K_pub
  QPoly mask;  // T
  QPoly error;  // E
};

class Ramesses {
 public:
  Ramesses(BinaryField f, RamessesParams params) : f_(std::move(f)), params_(params) {
    params_.validate();
    if (static_cast<std::size_t>(f_.degree()) != params_.m) throw BadParameters("field degree must equal m");
    basis_ = std::make_shared<const EvaluationBasis>(f_, power_basis(f_));
  }

  const BinaryField& field() const { return f_; }
  const RamessesParams& params() const { return params_; }
  const EvaluationBasis& basis() const { return *basis_; }

  RamessesKeyPair keygen(Rng& rng) const {
    RamessesKeyPair keys;
    keys.secret = from_matrix(sample_rank_matrix(params_.m, params_.m, params_.w, rng), *basis_);
    keys.public_key = public_from_secret(keys.secret);
    return keys;
  }

  QPoly public_from_secret(const QPoly& secret) const {
    std::vector<MidElement> c(secret.coeffs());
    for (std::size_t i = 0; i < std::min(params_.k, c.size()); ++i) c[i] = MidElement{};
    return QPoly(std::move(c));
  }

  RamessesPlaintext random_plaintext(Rng& rng) const {
    return sample_rank_matrix(params_.t, params_.m, params_.t, rng).row_space();
  }

  void check_plaintext(const RamessesPlaintext& pt) const {
    if (pt.rows() != params_.t || pt.cols() != params_.m) throw BadParameters("plaintext must be a t x m matrix");
    if (pt.row_space() != pt) throw BadParameters("plaintext must be a rank-t reduced echelon basis");
  }

  RamessesEncryption encrypt_traced(const QPoly& public_key, const RamessesPlaintext& pt, Rng& rng) const {
    check_plaintext(pt);
    const std::size_t m = params_.m;
    RamessesEncryption enc;
    std::vector<MidElement> tc(params_.l + 1);
    for (auto& x : tc) x = f_.random(rng);
    tc.back() = f_.random_nonzero(rng);
    enc.mask = QPoly(std::move(tc));
    BitMatrix a;
    do a = BitMatrix::random(m, params_.t, rng); while (a.rank() != params_.t);
    enc.error = from_matrix(a * pt, *basis_);
    enc.c = random_qpoly(f_, params_.k, rng);
    enc.c0 = random_qpoly(f_, params_.k, rng);
    enc.ciphertext = reduce(f_, enc.c + compose_mod(f_, enc.c0 + public_key, enc.mask) + enc.error);
    return enc;
  }

  QPoly encrypt(const QPoly& public_key, const RamessesPlaintext& pt, Rng& rng) const {
    return encrypt_traced(public_key, pt, rng).ciphertext;
  }

  /// Decodes V o Y in Gab_{k+l+w} with V the left annihilator of K_sec.
  RamessesPlaintext decrypt(const QPoly& secret, const QPoly& ciphertext) const {
    const QPoly v = left_annihilator(f_, secret);
    const QPoly z = compose_mod(f_, v, ciphertext);
    const GabidulinCode code(f_, basis_->elements(), params_.k + params_.l + v.size() - 1);
    const auto dec = code.decode_left(basis_->evaluate(z), params_.t);
    if (dec.error_rank < params_.t) throw RankDrop("rank of V o E fell below t");
    return expand(f_, dec.error).row_space();
  }

  /// Row space of matrix_rep(E): the plaintext carried by an error polynomial.
  BitMatrix plaintext_of_error(const QPoly& e) const { return matrix_rep(e, *basis_).row_space(); }

 private:
  BinaryField f_;
  RamessesParams params_;
  std::shared_ptr<const EvaluationBasis> basis_;
};

}  // namespace rankcrypt
