#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/liga.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/ramesses.hpp"
#include "rankcrypt/supercode.hpp"

namespace rankcrypt {

struct FeasibilityRow {
  std::size_t lhs = 0;
  std::size_t n = 0;
  bool broken = false;
};

/// k + 3t + 2l + 1 <= n: the right supercode decoder handles RAMESSES.
inline FeasibilityRow audit_ramesses(const RamessesParams& p) {
  const std::size_t lhs = p.k + 3 * p.t + 2 * p.l + 1;
  return {lhs, p.m, lhs <= p.m};
}

/// k + 2t + zeta(t + 1) <= n with t = t_pub.
inline FeasibilityRow audit_liga(const LigaParams& p) {
  const std::size_t t = p.t_pub();
  const std::size_t lhs = p.k + 2 * t + p.zeta * (t + 1);
  return {lhs, p.n, lhs <= p.n};
}

namespace detail {
inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}
}  // namespace detail

struct RamessesAttackReport {
  RamessesPlaintext plaintext;
  QPoly error;
  MidVector error_support;
  QPoly annihilator;
  std::size_t retries = 0;
  double elapsed_ms = 0;
};

/// Decodes Y in qpoly_{<k+l} + K_pub o qpoly_{<=l} on the right and reads the
/// plaintext off the recovered error.
inline RamessesAttackReport attack_ramesses(const Ramesses& scheme, const QPoly& public_key, const QPoly& ciphertext,
                                            bool force = false) {
  const auto start = std::chrono::steady_clock::now();
  const auto& p = scheme.params();
  const auto audit = audit_ramesses(p);
  if (!force && !audit.broken)
    throw BadParameters("k + 3t + 2l + 1 = " + std::to_string(audit.lhs) + " exceeds n = " + std::to_string(audit.n));
  const auto& f = scheme.field();
  std::vector<QPoly> t_basis;
  for (std::size_t j = 0; j <= p.l; ++j)
    t_basis.push_back(compose_mod(f, public_key, QPoly::monomial(MidElement::one(), j)));
  auto basis = std::make_shared<const EvaluationBasis>(scheme.basis());
  const Supercode code(basis, p.k + p.l, std::move(t_basis), p.t);
  const auto dec = code.decode_right(basis->evaluate(ciphertext), force);
  RamessesAttackReport report;
  report.error = basis->interpolate(dec.error);
  report.plaintext = scheme.plaintext_of_error(report.error);
  report.error_support = dec.error_support;
  report.annihilator = dec.annihilator;
  if (report.plaintext.rows() != p.t) throw AttackFailure("supercode", "recovered error does not have rank t");
  report.elapsed_ms = detail::elapsed_ms(start);
  return report;
}

struct LigaStep1Result {
  MidVector corrected;  // c' = c - e
  MidVector error;
  MidVector support;
  TopVector gamma;
  std::size_t retries = 0;
};

struct LigaAffineSpace {
  TopElement point;
  TopVector directions;
};

struct LigaAttackReport {
  MidVector plaintext;
  LigaStep1Result step1;
  LigaAffineSpace affine;
  std::size_t retries = 0;
  double elapsed_ms = 0;
};

inline constexpr std::size_t kLigaStep1Retries = 16;

namespace detail {
inline void require_square_support(const Liga& scheme) {
  if (scheme.params().n != scheme.params().m) throw BadParameters("the supercode step needs n = m");
}
}  // namespace detail

/// Supercode qpoly_{<k} + span{Tr(gamma_i k_pub)} built from public data;
/// decoding it strips the small error.
inline Supercode liga_public_supercode(const Liga& scheme, const LigaPublicKey& pk,
                                       const std::shared_ptr<const EvaluationBasis>& basis, const TopVector& gamma) {
  std::vector<QPoly> t_basis;
  for (const auto& gi : gamma) t_basis.push_back(basis->interpolate(trace_scaled(scheme.tower(), gi, pk.k_pub)));
  return Supercode(basis, scheme.params().k, std::move(t_basis), scheme.params().t_pub());
}

inline LigaStep1Result liga_step1_strip_error(const Liga& scheme, const LigaPublicKey& pk, std::span<const MidElement> c,
                                              Rng& rng, bool force = false,
                                              std::size_t retry_cap = kLigaStep1Retries) {
  detail::require_square_support(scheme);
  const auto& p = scheme.params();
  if (c.size() != p.n) throw BadParameters("ciphertext length must equal n");
  auto basis = std::make_shared<const EvaluationBasis>(scheme.field(), pk.g);
  for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
    TopVector gamma = sample_independent_top(scheme.tower(), p.zeta, rng);
    const Supercode code = liga_public_supercode(scheme, pk, basis, gamma);
    try {
      auto dec = code.decode_left(c, force);
      if (rank_q(scheme.field(), dec.error) > p.t_pub()) continue;
      LigaStep1Result out;
      out.corrected = std::move(dec.corrected);
      out.error = std::move(dec.error);
      out.support = std::move(dec.error_support);
      out.gamma = std::move(gamma);
      out.retries = attempt;
      return out;
    } catch (const DecodingFailure&) {
    }
  }
  throw AttackFailure("step1", "supercode decoding failed for every sampled gamma");
}

/// {beta : c' - Tr(beta k_pub) in Gab_k(g)} as point + F_{q^m}-directions,
/// beta written in the power basis of the top field.
inline LigaAffineSpace liga_step2_affine_space(const Liga& scheme, const LigaPublicKey& pk,
                                               std::span<const MidElement> cprime) {
  const auto& f = scheme.field();
  const auto& tw = scheme.tower();
  const std::size_t u = tw.degree();
  const GabidulinCode code(f, pk.g, scheme.params().k);
  const auto h = code.parity_check();
  auto sys = Matrix<BinaryField>::zeros(f, h.rows(), u);
  for (std::size_t l = 0; l < u; ++l) {
    const MidVector wl = trace_scaled(tw, tw.basis_element(l), pk.k_pub);
    const auto hw = apply(f, h, std::span<const MidElement>(wl));
    for (std::size_t r = 0; r < h.rows(); ++r) sys(r, l) = hw[r];
  }
  const auto rhs = apply(f, h, cprime);
  const auto point = solve(f, sys, std::span<const MidElement>(rhs));
  if (!point) throw AttackFailure("step2", "no beta removes the key contribution");
  LigaAffineSpace out;
  out.point = TopElement{*point};
  for (auto& d : nullspace(f, sys)) out.directions.push_back(TopElement{std::move(d)});
  return out;
}

/// System m + sum lambda_i e_i = s, m_{k-u..k-1} = 0 in the unknowns
/// (m_0..m_{k-1}, lambda_1..lambda_f), where s and the e_i come from the
/// affine space m + F.
struct LigaMessageSystem {
  Matrix<BinaryField> matrix;
  MidVector rhs;
};

inline LigaMessageSystem liga_step3_system(const Liga& scheme, const LigaPublicKey& pk,
                                           std::span<const MidElement> cprime, const LigaAffineSpace& affine) {
  const auto& f = scheme.field();
  const auto& tw = scheme.tower();
  const std::size_t k = scheme.params().k, u = scheme.params().u;
  const GabidulinCode code(f, pk.g, k);
  MidVector s;
  std::vector<MidVector> dirs;
  try {
    s = code.unencode(sub(cprime, trace_scaled(tw, affine.point, pk.k_pub)));
    for (const auto& d : affine.directions) dirs.push_back(code.unencode(trace_scaled(tw, d, pk.k_pub)));
  } catch (const NotACodeword&) {
    throw AttackFailure("step3", "affine space does not lead into the public code");
  }
  // Basis e_1..e_f of F.
  std::vector<MidVector> basis;
  if (!dirs.empty()) {
    auto a = Matrix<BinaryField>::zeros(f, dirs.size(), k);
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = dirs[i][j];
    const std::size_t r = rref(f, a).size();
    for (std::size_t i = 0; i < r; ++i) basis.emplace_back(a.row(i).begin(), a.row(i).end());
  }
  const std::size_t fdim = basis.size();
  LigaMessageSystem sys{Matrix<BinaryField>::zeros(f, k + u, k + fdim), MidVector(k + u)};
  for (std::size_t i = 0; i < k; ++i) {
    sys.matrix(i, i) = f.one();
    for (std::size_t j = 0; j < fdim; ++j) sys.matrix(i, k + j) = basis[j][i];
    sys.rhs[i] = s[i];
  }
  for (std::size_t i = 0; i < u; ++i) sys.matrix(k + i, k - u + i) = f.one();
  return sys;
}

inline MidVector liga_step3_recover_message(const Liga& scheme, const LigaPublicKey& pk,
                                            std::span<const MidElement> cprime, const LigaAffineSpace& affine) {
  const auto sys = liga_step3_system(scheme, pk, cprime, affine);
  const auto sol = solve(scheme.field(), sys.matrix, std::span<const MidElement>(sys.rhs));
  if (!sol) throw AttackFailure("step3", "message system is inconsistent");
  return MidVector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(scheme.params().k));
}

inline LigaAttackReport attack_liga(const Liga& scheme, const LigaPublicKey& pk, std::span<const MidElement> c, Rng& rng,
                                    bool force = false) {
  const auto start = std::chrono::steady_clock::now();
  const auto audit = audit_liga(scheme.params());
  if (!force && !audit.broken)
    throw BadParameters("k + 2t + zeta(t + 1) = " + std::to_string(audit.lhs) + " exceeds n = " +
                        std::to_string(audit.n));
  LigaAttackReport report;
  report.step1 = liga_step1_strip_error(scheme, pk, c, rng, force);
  report.retries = report.step1.retries;
  report.affine = liga_step2_affine_space(scheme, pk, report.step1.corrected);
  report.plaintext = liga_step3_recover_message(scheme, pk, report.step1.corrected, report.affine);
  const std::size_t k = scheme.params().k, u = scheme.params().u;
  for (std::size_t i = k - u; i < k; ++i)
    if (!report.plaintext[i].is_zero()) throw AttackFailure("step3", "recovered message has a nonzero tail");
  report.elapsed_ms = detail::elapsed_ms(start);
  return report;
}

/// True when the candidate decodes in the public supercode within rank t_pub.
inline bool liga_distinguish(const Liga& scheme, const LigaPublicKey& pk, std::span<const MidElement> candidate,
                             Rng& rng) {
  try {
    liga_step1_strip_error(scheme, pk, candidate, rng, true);
    return true;
  } catch (const AttackFailure&) {
    return false;
  }
}

}  // namespace rankcrypt
