#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ceresa/error.hpp"

namespace ceresa {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

// Moduli are kept below 2^32 so that products of residues fit in 64 bits.
inline constexpr u64 kMaxModulus = u64{1} << 32;

inline u64 mod_reduce(i64 a, u64 p) {
  i64 r = a % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

inline u64 mod_reduce(const BigInt& a, u64 p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r.convert_to<u64>();
}

inline u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

inline u64 powmod(u64 base, u64 e, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(p), nr = static_cast<i64>(a % p);
  if (nr == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  while (nr) {
    i64 q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) throw Error(ErrorCode::DivisionByZero, "non-invertible residue");
  return mod_reduce(t, p);
}

/// Kronecker symbol (a/n), n != 0.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    if ((v & 1) && ((a & 7) == 3 || (a & 7) == 5)) result = -result;
  }
  // Jacobi symbol for odd positive n.
  i64 m = a % n;
  if (m < 0) m += n;
  while (m != 0) {
    while ((m & 1) == 0) {
      m >>= 1;
      if ((n & 7) == 3 || (n & 7) == 5) result = -result;
    }
    std::swap(m, n);
    if ((m & 3) == 3 && (n & 3) == 3) result = -result;
    m %= n;
  }
  return n == 1 ? result : 0;
}

/// Tonelli-Shanks. Returns the root r with r <= p - r.
inline u64 sqrt_mod_p(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (kronecker(static_cast<i64>(a), static_cast<i64>(p)) != 1)
    throw Error(ErrorCode::NonResidue, std::to_string(a) + " mod " + std::to_string(p));
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (kronecker(static_cast<i64>(z), static_cast<i64>(p)) != -1) ++z;
  u64 c = powmod(z, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  u64 t = powmod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return std::min(r, p - r);
}

inline u64 smallest_nonresidue(u64 p) {
  u64 z = 2;
  while (kronecker(static_cast<i64>(z), static_cast<i64>(p)) != -1) ++z;
  return z;
}

/// F_{p^2} = F_p(t), t^2 = m with m a non-residue mod p.
struct Fp2Field {
  u64 p = 0;
  u64 m = 0;

  Fp2Field() = default;
  Fp2Field(u64 p_, u64 m_) : p(p_), m(m_ % p_) {
    if (p < 3 || p >= kMaxModulus || (p & 1) == 0)
      throw Error(ErrorCode::BadModulus, "unsupported modulus " + std::to_string(p));
    if (kronecker(static_cast<i64>(m), static_cast<i64>(p)) != -1)
      throw Error(ErrorCode::NonResidue,
                  "generator radicand " + std::to_string(m_) + " is not a non-residue mod " +
                      std::to_string(p));
  }

  static Fp2Field standard(u64 p) { return Fp2Field(p, smallest_nonresidue(p)); }

  bool operator==(const Fp2Field&) const = default;
};

struct Fp2Element {
  Fp2Field field;
  u64 re = 0;
  u64 im = 0;

  Fp2Element() = default;
  Fp2Element(const Fp2Field& f, u64 r, u64 i) : field(f), re(r % f.p), im(i % f.p) {}

  static Fp2Element from_int(const Fp2Field& f, i64 v) { return {f, mod_reduce(v, f.p), 0}; }
  static Fp2Element from_int(const Fp2Field& f, const BigInt& v) {
    return {f, mod_reduce(v, f.p), 0};
  }
  static Fp2Element zero(const Fp2Field& f) { return {f, 0, 0}; }
  static Fp2Element one(const Fp2Field& f) { return {f, 1, 0}; }
  static Fp2Element generator(const Fp2Field& f) { return {f, 0, 1}; }

  u64 p() const { return field.p; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool in_base_field() const { return im == 0; }

  Fp2Element frobenius() const { return {field, re, im == 0 ? 0 : field.p - im}; }
  Fp2Element norm() const { return *this * frobenius(); }

  Fp2Element operator+(const Fp2Element& o) const {
    u64 P = field.p;
    return {field, (re + o.re) % P, (im + o.im) % P};
  }
  Fp2Element operator-(const Fp2Element& o) const {
    u64 P = field.p;
    return {field, (re + P - o.re) % P, (im + P - o.im) % P};
  }
  Fp2Element operator-() const { return zero(field) - *this; }
  Fp2Element operator*(const Fp2Element& o) const {
    u64 P = field.p;
    u64 r = (mulmod(re, o.re, P) + mulmod(field.m, mulmod(im, o.im, P), P)) % P;
    u64 i = (mulmod(re, o.im, P) + mulmod(im, o.re, P)) % P;
    return {field, r, i};
  }
  Fp2Element operator*(u64 s) const {
    u64 P = field.p;
    s %= P;
    return {field, mulmod(re, s, P), mulmod(im, s, P)};
  }
  Fp2Element inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_p^2");
    u64 P = field.p;
    u64 n = (mulmod(re, re, P) + P - mulmod(field.m, mulmod(im, im, P), P)) % P;
    u64 ni = invmod(n, P);
    return {field, mulmod(re, ni, P), mulmod(im == 0 ? 0 : P - im, ni, P)};
  }
  Fp2Element operator/(const Fp2Element& o) const { return *this * o.inverse(); }

  Fp2Element& operator+=(const Fp2Element& o) { return *this = *this + o; }
  Fp2Element& operator-=(const Fp2Element& o) { return *this = *this - o; }
  Fp2Element& operator*=(const Fp2Element& o) { return *this = *this * o; }

  bool operator==(const Fp2Element& o) const { return re == o.re && im == o.im && field == o.field; }
  bool operator!=(const Fp2Element& o) const { return !(*this == o); }
  bool operator<(const Fp2Element& o) const { return std::pair{re, im} < std::pair{o.re, o.im}; }

  std::string to_string() const {
    if (im == 0) return std::to_string(re);
    return std::to_string(re) + "+" + std::to_string(im) + "*t";
  }
};

inline Fp2Element fp2_pow(Fp2Element x, const BigInt& e) {
  BigInt k = e;
  if (k < 0) {
    if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "negative power of 0");
    x = x.inverse();
    k = -k;
  }
  Fp2Element r = Fp2Element::one(x.field);
  while (k > 0) {
    if ((k & 1) != 0) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

inline Fp2Element fp2_pow(const Fp2Element& x, i64 e) { return fp2_pow(x, BigInt(e)); }

inline Fp2Element fp2_pow_u(Fp2Element x, u64 e) {
  Fp2Element r = Fp2Element::one(x.field);
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

/// Square root in F_p^2 when one exists; returns false otherwise.
inline bool fp2_sqrt(const Fp2Element& a, Fp2Element& out);

/// (a + b sqrt(m)) / denom over the integers.
struct QuadraticSurd {
  BigInt a;
  BigInt b;
  i64 m = 1;
  i64 denom = 1;

  QuadraticSurd conjugate() const { return {a, -b, m, denom}; }
};

/// (c0 + c1 sqrt(r) + c2 sqrt(s) + c3 sqrt(r s)) / denom, with r a residue and s a
/// non-residue at the primes where it is reduced.
struct BiquadraticSurd {
  std::array<BigInt, 4> c;
  i64 r = 2;
  i64 s = 7;
  i64 denom = 1;
};

namespace detail {
inline void check_surd_modulus(u64 p, i64 m, i64 denom) {
  if (p < 3 || (p & 1) == 0 || p >= kMaxModulus)
    throw Error(ErrorCode::BadModulus, "unsupported modulus " + std::to_string(p));
  if (mod_reduce(denom, p) == 0 || mod_reduce(m, p) == 0)
    throw Error(ErrorCode::BadModulus,
                std::to_string(p) + " divides the radicand or denominator of the surd");
}
}  // namespace detail

/// Image of sqrt(m) in F_p^2 for a field with any non-residue generator.
inline Fp2Element embed_sqrt(i64 m, const Fp2Field& field) {
  u64 P = field.p;
  u64 mm = mod_reduce(m, P);
  int k = kronecker(static_cast<i64>(mm), static_cast<i64>(P));
  if (k >= 0) return {field, sqrt_mod_p(mm, P), 0};
  // m / field.m is a residue c^2, so sqrt(m) = c t.
  u64 c = sqrt_mod_p(mulmod(mm, invmod(field.m, P), P), P);
  return {field, 0, c};
}

inline Fp2Element reduce_surd(const QuadraticSurd& j, const Fp2Field& field) {
  detail::check_surd_modulus(field.p, j.m, j.denom);
  Fp2Element a = Fp2Element::from_int(field, j.a);
  Fp2Element b = Fp2Element::from_int(field, j.b);
  Fp2Element v = a + b * embed_sqrt(j.m, field);
  return v * invmod(mod_reduce(j.denom, field.p), field.p);
}

/// Reduction into F_p(sqrt m) when m is a non-residue, else into the standard field.
inline Fp2Element reduce_surd(const QuadraticSurd& j, u64 p) {
  detail::check_surd_modulus(p, j.m, j.denom);
  if (kronecker(j.m, static_cast<i64>(p)) == -1)
    return reduce_surd(j, Fp2Field(p, mod_reduce(j.m, p)));
  return reduce_surd(j, Fp2Field::standard(p));
}

inline Fp2Element reduce_surd(const BiquadraticSurd& j, const Fp2Field& field) {
  detail::check_surd_modulus(field.p, j.r * j.s, j.denom);
  if (kronecker(j.r, static_cast<i64>(field.p)) != 1)
    throw Error(ErrorCode::BadModulus,
                "sqrt(" + std::to_string(j.r) + ") is not rational mod " + std::to_string(field.p));
  Fp2Element sr = embed_sqrt(j.r, field);
  Fp2Element ss = embed_sqrt(j.s, field);
  std::array<Fp2Element, 4> basis{Fp2Element::one(field), sr, ss, sr * ss};
  Fp2Element v = Fp2Element::zero(field);
  for (int k = 0; k < 4; ++k) v += Fp2Element::from_int(field, j.c[k]) * basis[k];
  return v * invmod(mod_reduce(j.denom, field.p), field.p);
}

inline Fp2Element reduce_surd(const BiquadraticSurd& j, u64 p) {
  detail::check_surd_modulus(p, j.r * j.s, j.denom);
  if (kronecker(j.s, static_cast<i64>(p)) != -1)
    throw Error(ErrorCode::BadModulus,
                "sqrt(" + std::to_string(j.s) + ") is rational mod " + std::to_string(p));
  return reduce_surd(j, Fp2Field(p, mod_reduce(j.s, p)));
}

inline bool fp2_sqrt(const Fp2Element& a, Fp2Element& out) {
  const Fp2Field& F = a.field;
  u64 P = F.p;
  if (a.is_zero()) {
    out = a;
    return true;
  }
  // a is a square in F_p^2 iff its norm is a square in F_p; every norm is.
  Fp2Element n = a.norm();
  u64 nr = n.re;
  if (kronecker(static_cast<i64>(nr), static_cast<i64>(P)) == -1) return false;
  // Solve (x + y t)^2 = a: x^2 + m y^2 = a.re, 2 x y = a.im.
  u64 s = sqrt_mod_p(nr, P);
  u64 inv2 = invmod(2, P);
  for (u64 sign : {s, (P - s) % P}) {
    u64 x2 = mulmod((a.re + sign) % P, inv2, P);
    if (x2 == 0) {
      // x = 0: m y^2 = a.re.
      u64 y2 = mulmod(a.re, invmod(F.m, P), P);
      if (kronecker(static_cast<i64>(y2), static_cast<i64>(P)) == -1) continue;
      Fp2Element c{F, 0, sqrt_mod_p(y2, P)};
      if (c * c == a) {
        out = c;
        return true;
      }
      continue;
    }
    if (kronecker(static_cast<i64>(x2), static_cast<i64>(P)) == -1) continue;
    u64 x = sqrt_mod_p(x2, P);
    u64 y = mulmod(a.im, invmod(mulmod(2, x, P), P), P);
    Fp2Element c{F, x, y};
    if (c * c == a) {
      out = c;
      return true;
    }
  }
  return false;
}

}  // namespace ceresa
