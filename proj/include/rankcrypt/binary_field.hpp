#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#include <emmintrin.h>
#endif

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

/// Limb capacity of a field element; bounds the extension degree by 255.
inline constexpr std::size_t kMaxLimbs = 4;
inline constexpr int kMaxExtensionDegree = 64 * static_cast<int>(kMaxLimbs) - 1;

/// Element of F_{2^m} in the power basis of the field modulus. Digit i (the
/// coefficient of theta^i) is bit i; unused high bits are always zero.
struct Gf2mElement {
  std::array<std::uint64_t, kMaxLimbs> limbs{};

  static constexpr Gf2mElement zero() { return {}; }
  static constexpr Gf2mElement one() {
    Gf2mElement e;
    e.limbs[0] = 1;
    return e;
  }
  static Gf2mElement monomial(std::size_t i) {
    Gf2mElement e;
    e.limbs[i / 64] = std::uint64_t{1} << (i % 64);
    return e;
  }

  bool is_zero() const {
    return std::all_of(limbs.begin(), limbs.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool digit(std::size_t i) const { return (limbs[i / 64] >> (i % 64)) & 1U; }
  void set_digit(std::size_t i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    limbs[i / 64] = v ? (limbs[i / 64] | bit) : (limbs[i / 64] & ~bit);
  }

  Gf2mElement& operator+=(const Gf2mElement& o) {
    for (std::size_t i = 0; i < kMaxLimbs; ++i) limbs[i] ^= o.limbs[i];
    return *this;
  }
  Gf2mElement& operator-=(const Gf2mElement& o) { return *this += o; }
  friend Gf2mElement operator+(Gf2mElement a, const Gf2mElement& b) { return a += b; }
  friend Gf2mElement operator-(Gf2mElement a, const Gf2mElement& b) { return a += b; }
  friend Gf2mElement operator-(const Gf2mElement& a) { return a; }

  friend bool operator==(const Gf2mElement&, const Gf2mElement&) = default;
  friend auto operator<=>(const Gf2mElement&, const Gf2mElement&) = default;
};

using MidElement = Gf2mElement;

namespace detail {

/// Carry-less 64 x 64 -> 128 bit product.
inline void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) {
#if defined(__PCLMUL__)
  const __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
#else
  // 4-bit window over b.
  std::uint64_t tlo[16], thi[16];
  tlo[0] = thi[0] = 0;
  for (int i = 1; i < 16; ++i) {
    if (i & 1) {
      tlo[i] = tlo[i - 1] ^ a;
      thi[i] = thi[i - 1];
    } else {
      tlo[i] = tlo[i / 2] << 1;
      thi[i] = (thi[i / 2] << 1) | (tlo[i / 2] >> 63);
    }
  }
  lo = hi = 0;
  for (int s = 60; s >= 0; s -= 4) {
    hi = (hi << 4) | (lo >> 60);
    lo <<= 4;
    const unsigned nib = static_cast<unsigned>((b >> s) & 0xF);
    lo ^= tlo[nib];
    hi ^= thi[nib];
  }
#endif
}

// Binary polynomials as little-endian word vectors; used only to validate
// and search for moduli.
using Gf2x = std::vector<std::uint64_t>;

inline int gf2x_degree(const Gf2x& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i]) return static_cast<int>(64 * i + 63 - static_cast<std::size_t>(std::countl_zero(a[i])));
  return -1;
}

inline bool gf2x_bit(const Gf2x& a, std::size_t i) { return i / 64 < a.size() && ((a[i / 64] >> (i % 64)) & 1U); }

inline void gf2x_xor_shifted(Gf2x& dst, const Gf2x& src, std::size_t shift) {
  const std::size_t ws = shift / 64, bs = shift % 64;
  const int dsrc = gf2x_degree(src);
  if (dsrc < 0) return;
  const std::size_t need = (static_cast<std::size_t>(dsrc) + shift) / 64 + 1;
  if (dst.size() < need) dst.resize(need, 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i]) continue;
    dst[i + ws] ^= src[i] << bs;
    if (bs && i + ws + 1 < dst.size()) dst[i + ws + 1] ^= src[i] >> (64 - bs);
  }
}

inline Gf2x gf2x_mod(Gf2x a, const Gf2x& f) {
  const int df = gf2x_degree(f);
  assert(df >= 0);
  for (int d = gf2x_degree(a); d >= df; d = gf2x_degree(a)) gf2x_xor_shifted(a, f, static_cast<std::size_t>(d - df));
  a.resize(static_cast<std::size_t>(df) / 64 + 1, 0);
  return a;
}

inline Gf2x gf2x_sqr(const Gf2x& a) {
  Gf2x out(2 * a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) clmul64(a[i], a[i], out[2 * i], out[2 * i + 1]);
  return out;
}

inline Gf2x gf2x_gcd(Gf2x a, Gf2x b) {
  while (gf2x_degree(b) >= 0) {
    a = gf2x_mod(std::move(a), b);
    std::swap(a, b);
  }
  return a;
}

inline Gf2x gf2x_from_digits(std::span<const std::uint8_t> digits) {
  Gf2x p((digits.size() + 63) / 64 + 1, 0);
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i]) p[i / 64] |= std::uint64_t{1} << (i % 64);
  return p;
}

}  // namespace detail

/// Ben-Or irreducibility test for a binary polynomial given by its
/// little-endian digits (constant term first).
inline bool is_irreducible_gf2(std::span<const std::uint8_t> digits) {
  using namespace detail;
  const Gf2x f = gf2x_from_digits(digits);
  const int m = gf2x_degree(f);
  if (m < 1) return false;
  if (m == 1) return true;
  if (!gf2x_bit(f, 0)) return false;
  const Gf2x x = gf2x_from_digits(std::vector<std::uint8_t>{0, 1});
  Gf2x h = x;
  for (int i = 1; i <= m / 2; ++i) {
    h = gf2x_mod(gf2x_sqr(h), f);
    Gf2x diff = h;
    diff.resize(std::max(diff.size(), x.size()), 0);
    diff[0] ^= 2;
    if (gf2x_degree(gf2x_gcd(f, diff)) != 0) return false;
  }
  return true;
}

/// Smallest irreducible binary polynomial of degree m, ordering candidates
/// by the integer whose bit i is the coefficient of x^i.
inline std::vector<std::uint8_t> smallest_irreducible_gf2(int m) {
  if (m < 2 || m > kMaxExtensionDegree) throw BadParameters("extension degree out of range: " + std::to_string(m));
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(m) + 1, 0);
  digits[static_cast<std::size_t>(m)] = 1;
  // Enumerate the low part as a counter; low-order digit first.
  for (;;) {
    if (is_irreducible_gf2(digits)) return digits;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(m) && digits[i] == 1) digits[i++] = 0;
    if (i == static_cast<std::size_t>(m)) throw BadParameters("no irreducible polynomial found");
    digits[i] = 1;
  }
}

/// The field F_{2^m} = F_2[x] / (f). Immutable; copies share lookup tables.
class BinaryField {
 public:
  using Element = Gf2mElement;

  /// `modulus` holds the m + 1 little-endian digits of f (monic, irreducible).
  explicit BinaryField(std::vector<std::uint8_t> modulus) {
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 3) throw BadParameters("field modulus must have degree >= 2");
    for (auto d : modulus)
      if (d > 1) throw BadParameters("binary field modulus digits must be 0 or 1");
    m_ = static_cast<int>(modulus.size()) - 1;
    if (m_ > kMaxExtensionDegree) throw BadParameters("extension degree exceeds " + std::to_string(kMaxExtensionDegree));
    if (!is_irreducible_gf2(modulus)) throw BadParameters("field modulus is not irreducible over F_2");
    limbs_ = (static_cast<std::size_t>(m_) + 63) / 64;
    tables_ = build_tables(modulus);
  }

  static BinaryField with_default_modulus(int m) { return BinaryField(smallest_irreducible_gf2(m)); }

  int degree() const noexcept { return m_; }
  std::size_t limbs() const noexcept { return limbs_; }
  /// q, the size of the prime subfield.
  static constexpr int characteristic() { return 2; }
  const std::vector<std::uint8_t>& modulus() const noexcept { return tables_->modulus; }

  friend bool operator==(const BinaryField& a, const BinaryField& b) {
    return a.m_ == b.m_ && a.tables_->modulus == b.tables_->modulus;
  }

  Element zero() const { return Element::zero(); }
  Element one() const { return Element::one(); }
  /// The class of x, i.e. the power-basis generator theta.
  Element generator() const { return Element::monomial(1); }
  bool is_zero(const Element& a) const { return a.is_zero(); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a + b; }
  Element neg(const Element& a) const { return a; }

  Element mul(const Element& a, const Element& b) const {
    std::uint64_t prod[2 * kMaxLimbs + 1] = {};
    for (std::size_t i = 0; i < limbs_; ++i) {
      if (!a.limbs[i]) continue;
      for (std::size_t j = 0; j < limbs_; ++j) {
        std::uint64_t lo, hi;
        detail::clmul64(a.limbs[i], b.limbs[j], lo, hi);
        prod[i + j] ^= lo;
        prod[i + j + 1] ^= hi;
      }
    }
    return reduce(prod);
  }

  Element sqr(const Element& a) const {
    std::uint64_t prod[2 * kMaxLimbs + 1] = {};
    for (std::size_t i = 0; i < limbs_; ++i) detail::clmul64(a.limbs[i], a.limbs[i], prod[2 * i], prod[2 * i + 1]);
    return reduce(prod);
  }

  /// a^(q^j); j is taken modulo m and may be negative.
  Element frobenius(Element a, long j) const {
    long r = j % m_;
    if (r < 0) r += m_;
    for (long i = 0; i < r; ++i) a = sqr(a);
    return a;
  }

  Element pow(const Element& a, std::uint64_t e) const {
    Element result = one();
    Element base = a;
    while (e) {
      if (e & 1U) result = mul(result, base);
      base = sqr(base);
      e >>= 1U;
    }
    return result;
  }

  Element inv(const Element& a) const {
    if (a.is_zero()) throw DivisionByZero();
    // a^(2^m - 2) = (a^(2^(m-1) - 1))^2
    Element r = a;
    for (int i = 1; i <= m_ - 2; ++i) r = mul(sqr(r), a);
    return sqr(r);
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  /// Absolute trace Tr_{F_{2^m}/F_2}.
  bool trace(const Element& a) const {
    unsigned parity = 0;
    for (std::size_t i = 0; i < limbs_; ++i) parity ^= static_cast<unsigned>(std::popcount(a.limbs[i] & tables_->trace_mask.limbs[i]));
    return parity & 1U;
  }

  Element random(Rng& rng) const {
    Element e;
    for (std::size_t i = 0; i < limbs_; ++i) e.limbs[i] = rng();
    mask(e);
    return e;
  }

  Element random_nonzero(Rng& rng) const {
    Element e;
    do e = random(rng); while (e.is_zero());
    return e;
  }

  Element from_digits(std::span<const std::uint8_t> digits) const {
    if (digits.size() > static_cast<std::size_t>(m_)) throw BadParameters("too many digits for field element");
    Element e;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] > 1) throw BadParameters("binary digit out of range");
      e.set_digit(i, digits[i] != 0);
    }
    return e;
  }

  std::vector<std::uint8_t> to_digits(const Element& a) const {
    std::vector<std::uint8_t> d(static_cast<std::size_t>(m_));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.digit(i) ? 1 : 0;
    return d;
  }

  /// Element whose digits are the low m bits of `bits`.
  Element from_bits(std::span<const std::uint64_t> bits) const {
    Element e;
    for (std::size_t i = 0; i < std::min(bits.size(), limbs_); ++i) e.limbs[i] = bits[i];
    mask(e);
    return e;
  }

 private:
  struct Tables {
    std::vector<std::uint8_t> modulus;
    std::size_t reduce_bytes = 0;
    std::vector<Element> reduce;  // reduce[b * 256 + v] = v(x) * x^(m + 8b) mod f
    Element trace_mask;
  };

  void mask(Element& e) const {
    for (std::size_t i = limbs_; i < kMaxLimbs; ++i) e.limbs[i] = 0;
    if (m_ % 64) e.limbs[limbs_ - 1] &= (std::uint64_t{1} << (m_ % 64)) - 1;
  }

  // Reduces a product of two reduced elements (degree <= 2m - 2).
  Element reduce(const std::uint64_t* prod) const {
    Element r;
    for (std::size_t i = 0; i < limbs_; ++i) r.limbs[i] = prod[i];
    mask(r);
    const auto& t = *tables_;
    for (std::size_t b = 0; b < t.reduce_bytes; ++b) {
      const std::size_t pos = static_cast<std::size_t>(m_) + 8 * b;
      const std::size_t w = pos / 64, o = pos % 64;
      std::uint64_t v = prod[w] >> o;
      if (o > 56) v |= prod[w + 1] << (64 - o);
      v &= 0xFF;
      if (v) {
        const Element& add = t.reduce[b * 256 + v];
        for (std::size_t i = 0; i < limbs_; ++i) r.limbs[i] ^= add.limbs[i];
      }
    }
    return r;
  }

  std::shared_ptr<const Tables> build_tables(const std::vector<std::uint8_t>& modulus) {
    auto t = std::make_shared<Tables>();
    t->modulus = modulus;
    Element low;  // x^m mod f
    for (int i = 0; i < m_; ++i)
      if (modulus[static_cast<std::size_t>(i)]) low.set_digit(static_cast<std::size_t>(i), true);
    t->reduce_bytes = static_cast<std::size_t>(m_ - 1 + 7) / 8;
    t->reduce.assign(t->reduce_bytes * 256, Element{});
    Element cur = low;
    for (std::size_t b = 0; b < t->reduce_bytes; ++b) {
      Element base[8];
      for (auto& e : base) {
        e = cur;
        // cur *= x
        const bool carry = cur.digit(static_cast<std::size_t>(m_ - 1));
        for (std::size_t i = kMaxLimbs; i-- > 0;) cur.limbs[i] = (cur.limbs[i] << 1) | (i ? cur.limbs[i - 1] >> 63 : 0);
        cur.set_digit(static_cast<std::size_t>(m_), false);
        if (carry) cur += low;
      }
      for (unsigned v = 1; v < 256; ++v)
        t->reduce[b * 256 + v] = t->reduce[b * 256 + (v & (v - 1))] + base[std::countr_zero(v)];
    }
    tables_ = t;  // needed by sqr() below
    // Tr(theta^i) = sum_j (theta^i)^(2^j), always in F_2.
    for (int i = 0; i < m_; ++i) {
      Element x = Element::monomial(static_cast<std::size_t>(i));
      Element acc = x;
      for (int j = 1; j < m_; ++j) {
        x = sqr(x);
        acc += x;
      }
      if (acc.digit(0)) t->trace_mask.set_digit(static_cast<std::size_t>(i), true);
    }
    return t;
  }

  int m_ = 0;
  std::size_t limbs_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace rankcrypt
