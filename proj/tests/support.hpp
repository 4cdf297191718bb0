#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.

#include <bit>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "rankcrypt/rankcrypt.hpp"

namespace rctest {

using namespace rankcrypt;

/// Schoolbook shift-and-add product, reducing one bit at a time.
inline MidElement naive_mul(const BinaryField& f, const MidElement& a, const MidElement& b) {
  const auto m = static_cast<std::size_t>(f.degree());
  const auto& mod = f.modulus();
  std::vector<std::uint8_t> acc(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (a.digit(i))
      for (std::size_t j = 0; j < m; ++j) acc[i + j] ^= static_cast<std::uint8_t>(b.digit(j));
  for (std::size_t d = 2 * m - 1; d >= m; --d)
    if (acc[d])
      for (std::size_t i = 0; i <= m; ++i) acc[d - m + i] ^= mod[i];
  acc.resize(m);
  return f.from_digits(acc);
}

/// Irreducibility by trial division over all polynomials of degree <= m/2.
inline bool irreducible_by_trial_division(std::uint64_t poly, int m) {
  auto deg = [](std::uint64_t p) { return 63 - std::countl_zero(p); };
  auto mod = [&](std::uint64_t a, std::uint64_t b) {
    const int db = deg(b);
    while (a && deg(a) >= db) a ^= b << (deg(a) - db);
    return a;
  };
  for (std::uint64_t d = 2; d < (std::uint64_t{1} << (m / 2 + 1)); ++d)
    if (mod(poly, d) == 0) return false;
  return true;
}

inline MidVector random_message(const BinaryField& f, std::size_t k, Rng& rng) {
  MidVector msg(k);
  for (auto& x : msg) x = f.random(rng);
  return msg;
}

/// Exhaustive nearest-codeword search; returns the message of the closest
/// codeword, or nullopt if the minimum rank distance is not attained once.
inline std::optional<MidVector> brute_force_nearest(const GabidulinCode& code, std::span<const MidElement> y) {
  const auto& f = code.field();
  const auto m = static_cast<std::size_t>(f.degree());
  const std::size_t k = code.dimension();
  const std::uint64_t total = std::uint64_t{1} << (m * k);
  std::size_t best = SIZE_MAX, ties = 0;
  MidVector best_msg;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    MidVector msg(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::uint8_t> d(m);
      for (std::size_t b = 0; b < m; ++b) d[b] = static_cast<std::uint8_t>((idx >> (i * m + b)) & 1U);
      msg[i] = f.from_digits(d);
    }
    const auto r = rank_q(f, sub(y, code.encode(msg)));
    if (r < best) {
      best = r;
      ties = 1;
      best_msg = msg;
    } else if (r == best) {
      ++ties;
    }
  }
  if (ties != 1) return std::nullopt;
  return best_msg;
}

/// Minimal-degree monic V with side(V, E) = 0, found by enumerating all monic
/// q-polynomials of q-degree 0, 1, ... up to `max_degree`. Returns every
/// minimiser.
inline std::vector<QPoly> brute_force_annihilators(const BinaryField& f, const QPoly& e, bool left,
                                                   std::size_t max_degree) {
  const auto m = static_cast<std::size_t>(f.degree());
  for (std::size_t d = 0; d <= max_degree; ++d) {
    std::vector<QPoly> found;
    const std::uint64_t total = std::uint64_t{1} << (m * d);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<MidElement> c(d + 1);
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::uint8_t> digits(m);
        for (std::size_t b = 0; b < m; ++b) digits[b] = static_cast<std::uint8_t>((idx >> (i * m + b)) & 1U);
        c[i] = f.from_digits(digits);
      }
      c[d] = f.one();
      const QPoly v(c);
      const QPoly prod = left ? compose_mod(f, v, e) : compose_mod(f, e, v);
      if (prod.is_zero()) found.push_back(v);
    }
    if (!found.empty()) return found;
  }
  return {};
}

inline std::size_t rank_of_rows(const BinaryField& f, const std::vector<MidVector>& rows) {
  if (rows.empty()) return 0;
  auto a = Matrix<BinaryField>::zeros(f, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  return rank(f, std::move(a));
}

/// x G for the Gabidulin generator of support g, entries in the top field.
inline TopVector top_times_generator(const TowerField& tw, std::span<const TopElement> x, std::span<const MidElement> g) {
  const auto& f = tw.mid();
  TopVector out(g.size(), tw.zero());
  for (std::size_t j = 0; j < g.size(); ++j) {
    MidElement power = g[j];
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[j] = tw.add(out[j], tw.scale(power, x[i]));
      power = f.sqr(power);
    }
  }
  return out;
}

struct PublicCodeDraw {
  bool equal = false;  // C = C_pub
  bool contains = false;  // C_pub is inside C
};

/// Hand-built instance k_pub = x G + mu_1 z_1 + ... + mu_zeta z_zeta, outside
/// the LIGA key constraints, for checking how often the public code built
/// from random gammas equals Gab_k(g) + <z_i>.
struct PublicCodeInstance {
  TowerField tower;
  std::size_t k;
  MidVector g;
  std::vector<MidVector> z;
  TopVector k_pub;

  static PublicCodeInstance sample(const TowerField& tw, std::size_t n, std::size_t k, std::size_t zeta, Rng& rng) {
    const auto& f = tw.mid();
    PublicCodeInstance inst{tw, k, sample_full_rank_vector(f, n, rng), {}, {}};
    const GabidulinCode code(f, inst.g, k);
    const auto gen = code.generator_matrix();
    std::vector<MidVector> rows;
    for (std::size_t i = 0; i < k; ++i) rows.emplace_back(gen.row(i).begin(), gen.row(i).end());
    do {
      inst.z.clear();
      for (std::size_t i = 0; i < zeta; ++i) inst.z.push_back(random_message(f, n, rng));
      auto all = rows;
      all.insert(all.end(), inst.z.begin(), inst.z.end());
      if (rank_of_rows(f, all) == k + zeta) break;
    } while (true);
    const TopVector mu = sample_independent_top(tw, zeta, rng);
    TopVector x(k);
    for (auto& xi : x) xi = tw.random(rng);
    inst.k_pub = top_times_generator(tw, x, inst.g);
    for (std::size_t i = 0; i < zeta; ++i)
      for (std::size_t j = 0; j < n; ++j) inst.k_pub[j] = tw.add(inst.k_pub[j], tw.scale(inst.z[i][j], mu[i]));
    return inst;
  }

  PublicCodeDraw draw(Rng& rng) const {
    const auto& f = tower.mid();
    const GabidulinCode code(f, g, k);
    const auto gen = code.generator_matrix();
    std::vector<MidVector> base;
    for (std::size_t i = 0; i < k; ++i) base.emplace_back(gen.row(i).begin(), gen.row(i).end());
    auto c = base;
    c.insert(c.end(), z.begin(), z.end());
    auto c_pub = base;
    for (const auto& gamma : sample_independent_top(tower, z.size(), rng))
      c_pub.push_back(trace_scaled(tower, gamma, k_pub));
    auto both = c;
    both.insert(both.end(), c_pub.begin(), c_pub.end());
    const std::size_t rc = rank_of_rows(f, c), rp = rank_of_rows(f, c_pub), rb = rank_of_rows(f, both);
    return {rc == rp && rb == rc, rb == rc};
  }
};

/// Number of subspaces G of F_2^n with span(e_1..e_d) + G = F_2^n directly.
inline std::size_t count_complements(std::size_t n, std::size_t d) {
  std::set<std::vector<std::uint64_t>> seen;
  const std::size_t need = n - d;
  const std::uint64_t vectors = std::uint64_t{1} << n;
  std::size_t count = 0;
  std::vector<std::uint64_t> pick(need, 0);
  // Enumerate ordered tuples of `need` vectors; keep each spanned space once.
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == need) {
      BitMatrix g(need, n);
      for (std::size_t i = 0; i < need; ++i)
        for (std::size_t b = 0; b < n; ++b)
          if ((pick[i] >> b) & 1U) g.set(i, b, true);
      if (g.rank() != need) return;
      const BitMatrix canon = g.row_space();
      std::vector<std::uint64_t> key;
      for (std::size_t r = 0; r < canon.rows(); ++r) key.push_back(canon.row(r)[0]);
      if (!seen.insert(key).second) return;
      BitMatrix all(n, n);
      for (std::size_t i = 0; i < d; ++i) all.set(i, i, true);
      for (std::size_t i = 0; i < need; ++i)
        for (std::size_t b = 0; b < n; ++b)
          if (g.get(i, b)) all.set(d + i, b, true);
      if (all.rank() == n) ++count;
      return;
    }
    for (std::uint64_t v = 1; v < vectors; ++v) {
      pick[depth] = v;
      rec(depth + 1);
    }
  };
  rec(0);
  return count;
}

/// Codeword of qpoly_{<k} + span(T) evaluated at the basis, plus a planted
/// rank-t error.
struct SupercodeInstance {
  MidVector codeword;
  MidVector error;
  MidVector received;
};

inline SupercodeInstance plant_supercode(const EvaluationBasis& basis, std::size_t k, const std::vector<QPoly>& t_basis,
                                         std::size_t t, Rng& rng) {
  const auto& f = basis.field();
  QPoly p = random_qpoly(f, k, rng);
  for (const auto& tb : t_basis) p = p + scale(f, f.random(rng), tb);
  SupercodeInstance out;
  out.codeword = basis.evaluate(p);
  out.error = sample_error(f, basis.size(), t, rng);
  out.received = add(out.codeword, out.error);
  return out;
}

}  // namespace rctest
