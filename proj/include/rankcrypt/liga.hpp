#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/sampling.hpp"
#include "rankcrypt/tower.hpp"
#include "rankcrypt/vectors.hpp"

namespace rankcrypt {

struct LigaParams {
  std::size_t q = 2;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t w = 0;
  std::size_t u = 0;
  std::size_t zeta = 0;

  std::size_t t_pub() const { return n >= k + w ? (n - k - w) / 2 : 0; }

  void validate() const {
    if (q != 2) throw BadParameters("only q = 2 is supported");
    if (!(u < k && k < n && n <= m)) throw BadParameters("liga parameters need u < k < n <= m");
    if (!(n - k > w && w > (n - k) / 2)) throw BadParameters("liga parameters need n - k > w > (n - k) / 2");
    if (zeta < 1 || zeta > u) throw BadParameters("liga parameters need 1 <= zeta <= u");
    if (t_pub() < 1) throw BadParameters("liga parameters need t_pub >= 1");
  }
  friend bool operator==(const LigaParams&, const LigaParams&) = default;
};

enum class LigaVariant { original, liga };

struct LigaPublicKey {
  MidVector g;  // support of the public Gabidulin code
  TopVector k_pub;
};

struct LigaSecretKey {
  TopVector x;
  TopVector z;
  BitMatrix p;
};

struct LigaKeyPair {
  LigaSecretKey secret;
  LigaPublicKey public_key;
};

struct LigaEncryption {
  MidVector ciphertext;
  TopElement alpha;
  MidVector error;
};

inline constexpr std::size_t kLigaKeygenRetries = 10000;

class Liga {
 public:
  Liga(TowerField tower, LigaParams params) : tower_(std::move(tower)), params_(params) {
    params_.validate();
    if (static_cast<std::size_t>(tower_.mid().degree()) != params_.m || tower_.degree() != params_.u)
      throw BadParameters("tower does not match (m, u)");
  }

  const TowerField& tower() const { return tower_; }
  const BinaryField& field() const { return tower_.mid(); }
  const LigaParams& params() const { return params_; }

  /// x G for x over F_{q^{mu}} and G the generator with rows g^{[i]}.
  TopVector times_generator(std::span<const TopElement> x, std::span<const MidElement> g) const {
    const auto& f = field();
    TopVector out(g.size(), tower_.zero());
    for (std::size_t j = 0; j < g.size(); ++j) {
      MidElement gj = g[j];
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) gj = f.sqr(gj);
        out[j] = tower_.add(out[j], tower_.scale(gj, x[i]));
      }
    }
    return out;
  }

  LigaKeyPair keygen(Rng& rng, LigaVariant variant = LigaVariant::liga) const {
    const auto& f = field();
    const std::size_t n = params_.n, k = params_.k, w = params_.w, u = params_.u;
    LigaKeyPair keys;
    keys.public_key.g = sample_full_rank_vector(f, n, rng);
    for (std::size_t attempt = 0; attempt < kLigaKeygenRetries; ++attempt) {
      TopVector x(k);
      for (std::size_t i = 0; i + u < k; ++i) x[i] = tower_.random(rng);
      const TopVector tail = sample_independent_top(tower_, u, rng);
      std::copy(tail.begin(), tail.end(), x.begin() + static_cast<std::ptrdiff_t>(k - u));

      TopVector s;
      if (variant == LigaVariant::original) {
        s = sample_full_rank_vector(tower_, w, rng);
      } else {
        auto drawn = sample_liga_s(rng);
        if (!drawn) continue;
        s = std::move(*drawn);
      }

      const BitMatrix p = sample_gln(n, rng);
      TopVector padded(n, tower_.zero());
      std::copy(s.begin(), s.end(), padded.begin());
      const TopVector z = times_base_matrix(tower_, padded, *p.inverse());
      if (rank_q(tower_, z) != w) continue;
      keys.secret = LigaSecretKey{std::move(x), z, p};
      const TopVector xg = times_generator(keys.secret.x, keys.public_key.g);
      keys.public_key.k_pub.resize(n);
      for (std::size_t j = 0; j < n; ++j) keys.public_key.k_pub[j] = tower_.add(xg[j], z[j]);
      return keys;
    }
    throw BadParameters("key generation exceeded its retry budget");
  }

  MidVector random_plaintext(Rng& rng) const {
    MidVector msg(params_.k);
    for (std::size_t i = 0; i + params_.u < params_.k; ++i) msg[i] = field().random(rng);
    return msg;
  }

  void check_plaintext(std::span<const MidElement> msg) const {
    if (msg.size() != params_.k) throw BadParameters("plaintext length must equal k");
    for (std::size_t i = params_.k - params_.u; i < params_.k; ++i)
      if (!msg[i].is_zero()) throw BadParameters("the last u plaintext entries must be zero");
  }

  /// c = m G + Tr(alpha k_pub) + e with explicit randomness.
  MidVector encrypt_with(const LigaPublicKey& pk, std::span<const MidElement> msg, const TopElement& alpha,
                         std::span<const MidElement> e) const {
    check_plaintext(msg);
    if (e.size() != params_.n) throw BadParameters("error length must equal n");
    const GabidulinCode code(field(), pk.g, params_.k);
    return add(add(code.encode(msg), trace_scaled(tower_, alpha, pk.k_pub)), e);
  }

  LigaEncryption encrypt_traced(const LigaPublicKey& pk, std::span<const MidElement> msg, Rng& rng) const {
    LigaEncryption enc;
    enc.alpha = tower_.random(rng);
    enc.error = sample_rank_t_vector(field(), params_.n, params_.t_pub(), rng);
    enc.ciphertext = encrypt_with(pk, msg, enc.alpha, enc.error);
    return enc;
  }

  MidVector encrypt(const LigaPublicKey& pk, std::span<const MidElement> msg, Rng& rng) const {
    return encrypt_traced(pk, msg, rng).ciphertext;
  }

  /// Decodes the last n - w positions of c P, then strips Tr(alpha x).
  MidVector decrypt(const LigaKeyPair& keys, std::span<const MidElement> c) const {
    const std::size_t n = params_.n, k = params_.k, w = params_.w, u = params_.u;
    if (c.size() != n) throw BadParameters("ciphertext length must equal n");
    const MidVector cp = times_base_matrix(c, keys.secret.p);
    const MidVector gp = times_base_matrix(keys.public_key.g, keys.secret.p);
    const GabidulinCode punctured(field(), MidVector(gp.begin() + static_cast<std::ptrdiff_t>(w), gp.end()), k);
    const auto dec = punctured.decode_left(MidVector(cp.begin() + static_cast<std::ptrdiff_t>(w), cp.end()), params_.t_pub());
    const MidVector& mprime = dec.message;
    const TopVector tail(keys.secret.x.begin() + static_cast<std::ptrdiff_t>(k - u), keys.secret.x.end());
    const TopVector dual = tower_.dual_basis(tail);
    TopElement alpha = tower_.zero();
    for (std::size_t i = 0; i < u; ++i) alpha = tower_.add(alpha, tower_.scale(mprime[k - u + i], dual[i]));
    MidVector msg = sub(mprime, trace_scaled(tower_, alpha, keys.secret.x));
    check_plaintext(msg);
    return msg;
  }

 private:
  // s = sum_i s_i gamma_i^* with span{s_i} = A, dim A = zeta, rank(s_i) = w.
  std::optional<TopVector> sample_liga_s(Rng& rng) const {
    const auto& f = field();
    const std::size_t w = params_.w, u = params_.u, zeta = params_.zeta;
    const TopVector gamma = sample_independent_top(tower_, u, rng);
    const TopVector gamma_dual = tower_.dual_basis(gamma);
    const auto a = sample_subspace_full_rank_basis(f, w, zeta, rng);
    std::vector<MidVector> si(u, MidVector(w));
    auto coeffs = Matrix<BinaryField>::zeros(f, u, zeta);
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = 0; j < zeta; ++j) {
        coeffs(i, j) = f.random(rng);
        for (std::size_t l = 0; l < w; ++l) si[i][l] += f.mul(coeffs(i, j), a[j][l]);
      }
      if (rank_q(f, si[i]) != w) return std::nullopt;
    }
    if (rank(f, coeffs) != zeta) return std::nullopt;
    TopVector s(w, tower_.zero());
    for (std::size_t l = 0; l < w; ++l)
      for (std::size_t i = 0; i < u; ++i) s[l] = tower_.add(s[l], tower_.scale(si[i][l], gamma_dual[i]));
    if (rank_q(tower_, s) != w) return std::nullopt;
    return s;
  }

  TowerField tower_;
  LigaParams params_;
};

}  // namespace rankcrypt
