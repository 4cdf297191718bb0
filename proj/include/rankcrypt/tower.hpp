#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/field_matrix.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

/// Element of F_{q^{mu}} in the power basis 1, theta, ..., theta^{u-1} of the
/// top modulus over F_{q^m}.
struct TopElement {
  std::vector<MidElement> coeffs;
  friend bool operator==(const TopElement&, const TopElement&) = default;
};

namespace detail {

// Dense polynomials over F_{q^m}, constant term first.
using MidPoly = std::vector<MidElement>;

inline void trim(MidPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline MidPoly poly_mod(const BinaryField& f, MidPoly a, const MidPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
    trim(a);
  }
  return a;
}

inline MidPoly poly_gcd(const BinaryField& f, MidPoly a, MidPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(f, std::move(a), b);
    std::swap(a, b);
  }
  return a;
}

inline MidPoly poly_sqr_mod(const BinaryField& f, const MidPoly& a, const MidPoly& m) {
  MidPoly sq(a.empty() ? 0 : 2 * a.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) sq[2 * i] = f.sqr(a[i]);
  return poly_mod(f, std::move(sq), m);
}

}  // namespace detail

/// Ben-Or test for a monic polynomial over F_{q^m}, coefficients constant first.
inline bool is_irreducible_over(const BinaryField& f, const std::vector<MidElement>& poly) {
  using namespace detail;
  MidPoly p = poly;
  trim(p);
  if (p.size() < 2) return false;
  const std::size_t u = p.size() - 1;
  if (u == 1) return true;
  if (p[0].is_zero()) return false;
  const MidPoly x{f.zero(), f.one()};
  MidPoly h = x;
  for (std::size_t i = 1; i <= u / 2; ++i) {
    for (int s = 0; s < f.degree(); ++s) h = poly_sqr_mod(f, h, p);
    MidPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), f.zero());
    diff[1] = f.sub(diff[1], f.one());
    const MidPoly g = poly_gcd(f, p, diff);
    if (g.size() != 1) return false;
  }
  return true;
}

/// Smallest monic irreducible of degree u over F_{q^m}, where candidates are
/// X^u + c_{u-1} X^{u-1} + ... + c_0 with each c_i read as the integer of its
/// digits, below 2^min(m, 8), ordered by the base-2^min(m,8) number
/// c_{u-1} ... c_0.
inline std::vector<MidElement> smallest_irreducible_over(const BinaryField& f, int u) {
  if (u < 1) throw BadParameters("top extension degree must be positive");
  const int digit_bits = std::min(f.degree(), 8);
  const std::uint64_t base = std::uint64_t{1} << digit_bits;
  std::vector<std::uint64_t> counter(static_cast<std::size_t>(u), 0);
  for (;;) {
    std::vector<MidElement> poly(static_cast<std::size_t>(u) + 1, f.zero());
    poly.back() = f.one();
    for (std::size_t i = 0; i < counter.size(); ++i) poly[i] = f.from_bits(std::span(&counter[i], 1));
    if (is_irreducible_over(f, poly)) return poly;
    std::size_t i = 0;
    while (i < counter.size() && ++counter[i] == base) counter[i++] = 0;
    if (i == counter.size()) throw BadParameters("no irreducible top modulus among small-coefficient candidates");
  }
}

/// The extension F_{q^{mu}} of a BinaryField F_{q^m}. Copies share tables.
class TowerField {
 public:
  using Element = TopElement;

  /// `modulus` is monic of degree u, coefficients constant first.
  TowerField(BinaryField mid, std::vector<MidElement> modulus) : mid_(std::move(mid)) {
    detail::trim(modulus);
    if (modulus.size() < 2 || modulus.back() != mid_.one())
      throw BadParameters("top modulus must be monic of degree >= 1");
    if (!is_irreducible_over(mid_, modulus)) throw BadParameters("top modulus is not irreducible");
    u_ = modulus.size() - 1;
    auto t = std::make_shared<Tables>();
    t->modulus = std::move(modulus);
    tables_ = t;
    // Tr(theta^i) as sums of conjugates; each lands in F_{q^m}.
    t->traces.resize(u_);
    for (std::size_t i = 0; i < u_; ++i) {
      const TopElement sum = conjugate_sum(basis_element(i));
      for (std::size_t j = 1; j < u_; ++j)
        if (!sum.coeffs[j].is_zero()) throw Error("trace does not lie in the subfield");
      t->traces[i] = sum.coeffs[0];
    }
  }

  static TowerField with_default_modulus(const BinaryField& mid, int u) {
    return TowerField(mid, smallest_irreducible_over(mid, u));
  }

  const BinaryField& mid() const noexcept { return mid_; }
  std::size_t degree() const noexcept { return u_; }
  const std::vector<MidElement>& modulus() const noexcept { return tables_->modulus; }

  friend bool operator==(const TowerField& a, const TowerField& b) {
    return a.mid_ == b.mid_ && a.modulus() == b.modulus();
  }

  Element zero() const { return Element{std::vector<MidElement>(u_, mid_.zero())}; }
  Element one() const { return embed(mid_.one()); }
  Element embed(const MidElement& a) const {
    Element e = zero();
    e.coeffs[0] = a;
    return e;
  }
  Element basis_element(std::size_t i) const {
    Element e = zero();
    if (i >= u_) throw BadParameters("basis index out of range");
    e.coeffs[i] = mid_.one();
    return e;
  }
  bool is_zero(const Element& a) const {
    for (const auto& c : a.coeffs)
      if (!c.is_zero()) return false;
    return true;
  }

  Element add(const Element& a, const Element& b) const {
    Element r = a;
    for (std::size_t i = 0; i < u_; ++i) r.coeffs[i] += b.coeffs[i];
    return r;
  }
  Element sub(const Element& a, const Element& b) const { return add(a, b); }
  Element neg(const Element& a) const { return a; }

  /// lambda * a for lambda in F_{q^m}.
  Element scale(const MidElement& lambda, const Element& a) const {
    Element r = a;
    for (auto& c : r.coeffs) c = mid_.mul(lambda, c);
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    std::vector<MidElement> prod(2 * u_ - 1, mid_.zero());
    for (std::size_t i = 0; i < u_; ++i) {
      if (a.coeffs[i].is_zero()) continue;
      for (std::size_t j = 0; j < u_; ++j) prod[i + j] += mid_.mul(a.coeffs[i], b.coeffs[j]);
    }
    return reduce(std::move(prod));
  }

  Element sqr(const Element& a) const {
    std::vector<MidElement> prod(2 * u_ - 1, mid_.zero());
    for (std::size_t i = 0; i < u_; ++i) prod[2 * i] = mid_.sqr(a.coeffs[i]);
    return reduce(std::move(prod));
  }

  Element inv(const Element& a) const {
    if (is_zero(a)) throw DivisionByZero();
    // Solve (multiplication by a) x = 1.
    auto m = Matrix<BinaryField>::zeros(mid_, u_, u_);
    for (std::size_t j = 0; j < u_; ++j) {
      const Element col = mul(a, basis_element(j));
      for (std::size_t i = 0; i < u_; ++i) m(i, j) = col.coeffs[i];
    }
    const auto rhs = one().coeffs;
    auto x = solve(mid_, m, std::span<const MidElement>(rhs));
    return Element{std::move(*x)};
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  /// a^((q^m)^i) by repeated squaring.
  Element frobenius_mid(Element a, std::size_t i = 1) const {
    const std::size_t steps = (i % u_) * static_cast<std::size_t>(mid_.degree());
    for (std::size_t s = 0; s < steps; ++s) a = sqr(a);
    return a;
  }

  /// Sum of the u conjugates of a over F_{q^m}.
  Element conjugate_sum(const Element& a) const {
    Element acc = a, cur = a;
    for (std::size_t i = 1; i < u_; ++i) {
      cur = frobenius_mid(cur);
      acc = add(acc, cur);
    }
    return acc;
  }

  /// Tr_{F_{q^{mu}}/F_{q^m}}.
  MidElement trace_down(const Element& a) const {
    MidElement r = mid_.zero();
    for (std::size_t i = 0; i < u_; ++i) r += mid_.mul(a.coeffs[i], tables_->traces[i]);
    return r;
  }

  /// Dual of an F_{q^m}-basis of F_{q^{mu}} under (x, y) -> Tr(xy).
  std::vector<Element> dual_basis(std::span<const Element> basis) const {
    if (basis.size() != u_) throw NotABasis("dual basis needs exactly u elements");
    auto t = Matrix<BinaryField>::zeros(mid_, u_, u_);
    for (std::size_t i = 0; i < u_; ++i)
      for (std::size_t l = 0; l < u_; ++l) t(i, l) = trace_down(mul(basis[i], basis_element(l)));
    const auto tinv = inverse(mid_, t);
    if (!tinv) throw NotABasis("elements are not independent over the subfield");
    std::vector<Element> dual(u_, zero());
    for (std::size_t j = 0; j < u_; ++j)
      for (std::size_t l = 0; l < u_; ++l) dual[j].coeffs[l] = (*tinv)(l, j);
    return dual;
  }

  Element random(Rng& rng) const {
    Element e = zero();
    for (auto& c : e.coeffs) c = mid_.random(rng);
    return e;
  }

  /// Base-field digits, coefficient 0 first, m digits per coefficient.
  std::vector<std::uint8_t> to_digits(const Element& a) const {
    std::vector<std::uint8_t> d;
    d.reserve(u_ * static_cast<std::size_t>(mid_.degree()));
    for (const auto& c : a.coeffs) {
      const auto part = mid_.to_digits(c);
      d.insert(d.end(), part.begin(), part.end());
    }
    return d;
  }

  Element from_digits(std::span<const std::uint8_t> digits) const {
    const std::size_t m = static_cast<std::size_t>(mid_.degree());
    if (digits.size() != m * u_) throw BadParameters("wrong digit count for top element");
    Element e = zero();
    for (std::size_t i = 0; i < u_; ++i) e.coeffs[i] = mid_.from_digits(digits.subspan(i * m, m));
    return e;
  }

 private:
  struct Tables {
    std::vector<MidElement> modulus;
    std::vector<MidElement> traces;
  };

  Element reduce(std::vector<MidElement> prod) const {
    const auto& f = tables_->modulus;
    for (std::size_t i = prod.size(); i-- > u_;) {
      const MidElement c = prod[i];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < u_; ++j) prod[i - u_ + j] += mid_.mul(c, f[j]);
    }
    prod.resize(u_);
    return Element{std::move(prod)};
  }

  BinaryField mid_;
  std::size_t u_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace rankcrypt
