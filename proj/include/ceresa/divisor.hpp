#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceresa/arith.hpp"
#include "ceresa/classgroup.hpp"
#include "ceresa/error.hpp"
#include "ceresa/primes.hpp"

namespace ceresa {

/// (a + b p) / den with den > 0 and gcd(a, b, den) = 1.
struct AffineCoeff {
  i64 a = 0;
  i64 b = 0;
  i64 den = 1;

  AffineCoeff() = default;
  AffineCoeff(i64 a_, i64 b_ = 0, i64 den_ = 1) : a(a_), b(b_), den(den_) { normalize(); }

  static AffineCoeff constant(i64 v) { return {v, 0, 1}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_integral() const { return den == 1; }

  /// Exact value at p; throws when (a + b p) is not divisible by den.
  i64 value(i64 p) const {
    i64 num = a + b * p;
    if (num % den != 0)
      throw Error(ErrorCode::BadClass, "coefficient " + to_string() + " is not integral at p = " +
                                           std::to_string(p));
    return num / den;
  }

  AffineCoeff operator+(const AffineCoeff& o) const {
    i64 l = std::lcm(den, o.den);
    return {a * (l / den) + o.a * (l / o.den), b * (l / den) + o.b * (l / o.den), l};
  }
  AffineCoeff operator-() const { return {-a, -b, den}; }
  AffineCoeff operator-(const AffineCoeff& o) const { return *this + (-o); }
  AffineCoeff operator*(i64 k) const { return {a * k, b * k, den}; }
  AffineCoeff scaled(i64 num, i64 d) const { return {a * num, b * num, den * d}; }

  bool operator==(const AffineCoeff& o) const { return a == o.a && b == o.b && den == o.den; }

  std::string to_string() const {
    std::string s;
    if (b == 0) {
      s = std::to_string(a);
    } else {
      if (b == 1)
        s = "p";
      else if (b == -1)
        s = "-p";
      else
        s = std::to_string(b) + "p";
      if (a > 0) s += "+" + std::to_string(a);
      if (a < 0) s += std::to_string(a);
    }
    if (den != 1) s = "(" + s + ")/" + std::to_string(den);
    return s;
  }

 private:
  void normalize() {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    if (den < 0) {
      a = -a;
      b = -b;
      den = -den;
    }
    i64 g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), den);
    if (g > 1) {
      a /= g;
      b /= g;
      den /= g;
    }
  }
};

struct Symbol {
  enum class Kind { CM, Cusp0, CuspInf, AllCusps, CuspOrbit };
  Kind kind = Kind::CM;
  i64 d = 0;

  static Symbol cm(i64 d) {
    if (!is_discriminant(-d))
      throw Error(ErrorCode::BadDiscriminant, "-" + std::to_string(d) + " is not a discriminant");
    return {Kind::CM, d};
  }
  static Symbol cusp0() { return {Kind::Cusp0, 0}; }
  static Symbol cusp_inf() { return {Kind::CuspInf, 0}; }
  static Symbol all_cusps() { return {Kind::AllCusps, 0}; }
  static Symbol cusp_orbit() { return {Kind::CuspOrbit, 0}; }

  bool is_cusp() const { return kind != Kind::CM; }

  auto operator<=>(const Symbol&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::CM: return "D" + std::to_string(d);
      case Kind::Cusp0: return "c0";
      case Kind::CuspInf: return "cinf";
      case Kind::AllCusps: return "D";
      case Kind::CuspOrbit: return "Dorb";
    }
    return "?";
  }

  static Symbol parse(const std::string& s) {
    if (s == "c0") return cusp0();
    if (s == "cinf") return cusp_inf();
    if (s == "D") return all_cusps();
    if (s == "Dorb") return cusp_orbit();
    if (s.size() > 1 && s[0] == 'D') {
      try {
        return cm(std::stoll(s.substr(1)));
      } catch (const std::logic_error&) {
      }
    }
    throw Error(ErrorCode::SchemaError, "unknown divisor symbol '" + s + "'");
  }
};

/// Formal sum of support symbols on X_0(p^exponent). Terms keep insertion order for display.
class FormalDivisor {
 public:
  explicit FormalDivisor(int exponent = 1) : exponent_(exponent) {}
  FormalDivisor(int exponent, std::vector<std::pair<Symbol, AffineCoeff>> terms) : exponent_(exponent) {
    for (auto& [s, c] : terms) add(s, c);
  }

  int exponent() const { return exponent_; }
  const std::vector<std::pair<Symbol, AffineCoeff>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AffineCoeff coeff(const Symbol& s) const {
    for (const auto& [k, c] : terms_)
      if (k == s) return c;
    return {};
  }

  FormalDivisor& add(const Symbol& s, const AffineCoeff& c) {
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->first == s) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
        return *this;
      }
    }
    if (!c.is_zero()) terms_.emplace_back(s, c);
    return *this;
  }

  FormalDivisor operator+(const FormalDivisor& o) const {
    FormalDivisor r = *this;
    for (const auto& [s, c] : o.terms_) r.add(s, c);
    return r;
  }
  FormalDivisor operator-() const {
    FormalDivisor r(exponent_);
    for (const auto& [s, c] : terms_) r.add(s, -c);
    return r;
  }
  FormalDivisor operator-(const FormalDivisor& o) const { return *this + (-o); }
  FormalDivisor operator*(i64 k) const {
    FormalDivisor r(exponent_);
    for (const auto& [s, c] : terms_) r.add(s, c * k);
    return r;
  }
  FormalDivisor operator*(const AffineCoeff& k) const {
    if (k.b != 0 && std::any_of(terms_.begin(), terms_.end(), [](auto& t) { return t.second.b != 0; }))
      throw Error(ErrorCode::BadClass, "product would not be affine in p");
    FormalDivisor r(exponent_);
    for (const auto& [s, c] : terms_) {
      AffineCoeff v = k.b != 0 ? k.scaled(c.a, c.den) : c.scaled(k.a, k.den);
      r.add(s, v);
    }
    return r;
  }

  /// Order-insensitive equality.
  bool operator==(const FormalDivisor& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    return std::all_of(terms_.begin(), terms_.end(), [&](auto& t) { return o.coeff(t.first) == t.second; });
  }

  bool is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](auto& t) { return t.second.is_integral(); });
  }

  /// Least common denominator of all coefficients.
  i64 denominator() const {
    i64 l = 1;
    for (const auto& [s, c] : terms_) l = std::lcm(l, c.den);
    return l;
  }

  /// Coefficients evaluated at p, as constants.
  FormalDivisor evaluate(i64 p) const {
    FormalDivisor r(exponent_);
    for (const auto& [s, c] : terms_) r.add(s, AffineCoeff::constant(c.value(p)));
    return r;
  }

  /// Drops CM components that are empty on X_0(p^exponent).
  FormalDivisor restrict_to(i64 p) const {
    FormalDivisor r(exponent_);
    for (const auto& [s, c] : terms_) {
      if (s.kind == Symbol::Kind::CM && cm_component_degree(s.d, p, exponent_) == 0) continue;
      r.add(s, c);
    }
    return r;
  }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int exponent_;
  std::vector<std::pair<Symbol, AffineCoeff>> terms_;
};

inline i64 symbol_degree(const Symbol& s, i64 p, int exponent) {
  switch (s.kind) {
    case Symbol::Kind::CM: return cm_component_degree(s.d, p, exponent);
    case Symbol::Kind::Cusp0:
    case Symbol::Kind::CuspInf: return 1;
    case Symbol::Kind::AllCusps: return cusp_count(p, exponent);
    case Symbol::Kind::CuspOrbit: return exponent == 1 ? 0 : p - 1;
  }
  return 0;
}

inline i64 degree(const FormalDivisor& d, i64 p) {
  i64 total = 0;
  for (const auto& [s, c] : d.terms()) {
    i64 deg = symbol_degree(s, p, d.exponent());
    if (deg != 0) total += c.value(p) * deg;
  }
  return total;
}

/// Coefficients reduced into [0, p + 1), the exponent of Pic^0 of the special fibre.
inline FormalDivisor reduce_mod_exponent(const FormalDivisor& d, i64 p) {
  FormalDivisor r(d.exponent());
  for (const auto& [s, c] : d.terms()) {
    i64 v = c.value(p) % (p + 1);
    if (v < 0) v += p + 1;
    r.add(s, AffineCoeff::constant(v));
  }
  return r;
}

/// The divisor evaluated at p and divided by the gcd of its coefficients (its content).
inline std::pair<i64, FormalDivisor> primitive_part(const FormalDivisor& d, i64 p) {
  FormalDivisor ev = d.restrict_to(p).evaluate(p);
  i64 g = 0;
  for (const auto& [s, c] : ev.terms()) g = std::gcd(g, std::llabs(c.a));
  if (g <= 1) return {1, ev};
  FormalDivisor out(d.exponent());
  for (const auto& [s, c] : ev.terms()) out.add(s, AffineCoeff::constant(c.a / g));
  return {g, out};
}

inline std::string FormalDivisor::to_string() const {
  if (terms_.empty()) return "0";
  // Pair c0 and cinf when their coefficients agree.
  std::vector<std::pair<std::string, AffineCoeff>> items;
  bool paired = coeff(Symbol::cusp0()) == coeff(Symbol::cusp_inf()) && !coeff(Symbol::cusp0()).is_zero();
  for (const auto& [s, c] : terms_) {
    if (paired && s.kind == Symbol::Kind::CuspInf) continue;
    if (paired && s.kind == Symbol::Kind::Cusp0)
      items.emplace_back("(c0+cinf)", c);
    else
      items.emplace_back(s.to_string(), c);
  }
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& [name, c] = items[i];
    std::string cs;
    bool negative = false;
    if (c.b == 0 && c.den == 1) {
      negative = c.a < 0;
      i64 mag = std::llabs(c.a);
      cs = mag == 1 ? "" : std::to_string(mag) + "*";
    } else {
      cs = "(" + c.to_string() + ")*";
    }
    if (i == 0)
      out += (negative ? "-" : "") + cs + name;
    else
      out += (negative ? " - " : " + ") + cs + name;
  }
  return out;
}

inline nlohmann::json FormalDivisor::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [s, c] : terms_) {
    if (c.den == 1)
      j[s.to_string()] = {c.a, c.b};
    else
      j[s.to_string()] = {c.a, c.b, c.den};
  }
  return j;
}

inline FormalDivisor divisor_from_json(const nlohmann::json& j, int exponent = 1) {
  FormalDivisor d(exponent);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (!v.is_array() || v.size() < 2 || v.size() > 3)
      throw Error(ErrorCode::SchemaError, "coefficient of " + it.key() + " must be [a, b] or [a, b, den]");
    i64 den = v.size() == 3 ? v[2].get<i64>() : 1;
    d.add(Symbol::parse(it.key()), AffineCoeff(v[0].get<i64>(), v[1].get<i64>(), den));
  }
  return d;
}

/// A divisor together with the multiple of the shadow it represents: scale * Sh = divisor.
struct ScaledShadow {
  i64 scale = 1;
  FormalDivisor divisor;
  std::string label;  // e.g. "Sh(T2)"

  std::string to_string() const {
    return (scale == 1 ? "" : std::to_string(scale) + "*") + label + " = " + divisor.to_string();
  }
};

namespace detail {
inline FormalDivisor cusps(int exponent, const AffineCoeff& c) {
  FormalDivisor d(exponent);
  if (exponent == 1) {
    d.add(Symbol::cusp0(), c);
    d.add(Symbol::cusp_inf(), c);
  } else {
    d.add(Symbol::all_cusps(), c);
  }
  return d;
}
inline AffineCoeff aff(i64 b, i64 a) { return AffineCoeff(a, b); }  // b p + a
inline AffineCoeff cst(i64 a) { return AffineCoeff::constant(a); }
}  // namespace detail

/// lambda * K on X_0(p), lambda in {1, 2, 3, 6}.
inline std::pair<i64, FormalDivisor> canonical_divisor(i64 p) {
  using detail::cst;
  if (p < 11 || !is_prime(static_cast<u64>(p)))
    throw Error(ErrorCode::BadClass, "canonical divisor formulas need a prime p >= 11");
  const i64 r = p % 12;
  FormalDivisor K(1);
  switch (r) {
    case 11: K = detail::cusps(1, AffineCoeff(-11, 1, 12)); return {1, K};
    case 7:
      K = detail::cusps(1, AffineCoeff(-11, 1, 4));
      K.add(Symbol::cm(3), cst(-2));
      return {3, K};
    case 5:
      K = detail::cusps(1, AffineCoeff(-11, 1, 6));
      K.add(Symbol::cm(4), cst(-1));
      return {2, K};
    default:
      K = detail::cusps(1, AffineCoeff(-11, 1, 2));
      K.add(Symbol::cm(3), cst(-4));
      K.add(Symbol::cm(4), cst(-3));
      return {6, K};
  }
}

/// Fixed-point divisor of T_l on X_0(p^exponent): CM orders containing an element of norm l,
/// with multiplicity the number of primes above l, and every cusp twice.
inline FormalDivisor fixed_divisor_hecke(i64 l, int exponent = 1) {
  if (l != 2 && l != 3 && l != 5)
    throw Error(ErrorCode::UnsupportedHeckePrime, "T_" + std::to_string(l) + " is not supported");
  std::vector<i64> ds;
  for (i64 b = 1; b * b <= 4 * l; ++b) {
    for (i64 a = 0; a * a <= 4 * l; ++a) {
      i64 rest = 4 * l - a * a;
      if (rest <= 0 || rest % (b * b) != 0) continue;
      i64 d = rest / (b * b);
      if (is_discriminant(-d) && std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
    }
  }
  std::sort(ds.begin(), ds.end());
  FormalDivisor F(exponent);
  for (i64 d : ds) F.add(Symbol::cm(d), detail::cst(1 + kronecker(-d, l)));
  return F + detail::cusps(exponent, detail::cst(2));
}

inline FormalDivisor fixed_divisor_atkin_lehner(i64 p) {
  FormalDivisor F(1);
  if (p % 4 == 3) F.add(Symbol::cm(p), detail::cst(1));
  F.add(Symbol::cm(4 * p), detail::cst(1));
  return F;
}

/// Fundamental discriminant and conductor of the order of discriminant D.
inline std::pair<i64, i64> fundamental_part(i64 D) {
  require_discriminant(D);
  i64 n = -D;
  i64 sq = 1, core = n;
  for (i64 q = 2; q * q <= core; ++q) {
    while (core % (q * q) == 0) {
      core /= q * q;
      sq *= q;
    }
  }
  i64 DK = -core;
  if (((DK % 4) + 4) % 4 != 1) {
    DK *= 4;
    sq /= 2;
  }
  return {DK, sq};
}

/// T_l applied to the CM divisor D_d (action on the divisor of all points of that order).
inline FormalDivisor hecke_on_cm(i64 l, i64 d, int exponent = 1) {
  require_discriminant(-d);
  if (!is_prime(static_cast<u64>(l)))
    throw Error(ErrorCode::UnsupportedHeckePrime, "T_" + std::to_string(l) + " needs a prime");
  auto [DK, f] = fundamental_part(-d);
  FormalDivisor out(exponent);
  const i64 h = class_number(-d);
  if (f % l != 0) {
    int chi = kronecker(DK, l);
    // 1 + chi horizontal isogenies; the descending ones reach each point of D_{l^2 d}
    // w(D)/2 times.
    i64 u = d == 3 ? 3 : (d == 4 ? 2 : 1);
    if (1 + chi != 0) out.add(Symbol::cm(d), detail::cst(1 + chi));
    out.add(Symbol::cm(l * l * d), detail::cst(u));
  } else {
    i64 parent = d / (l * l);
    i64 up = h / class_number(-parent);
    out.add(Symbol::cm(parent), detail::cst(up));
    out.add(Symbol::cm(l * l * d), detail::cst(1));
  }
  return out;
}

namespace detail {
inline FormalDivisor hecke_on_divisor(i64 l, const FormalDivisor& D) {
  FormalDivisor out(D.exponent());
  for (const auto& [s, c] : D.terms()) {
    if (s.kind == Symbol::Kind::CM) {
      out = out + hecke_on_cm(l, s.d, D.exponent()) * c;
    } else {
      out.add(s, c * (l + 1));
    }
  }
  return out;
}
}  // namespace detail

/// Sh(T_l) assembled from the canonical and fixed-point divisors; the returned scale is the
/// least multiple of the canonical scale that makes all coefficients integral in p.
inline ScaledShadow shadow_derive(i64 l, i64 p) {
  if (l != 2 && l != 3 && l != 5)
    throw Error(ErrorCode::UnsupportedHeckePrime, "T_" + std::to_string(l) + " is not supported");
  if (l == p) throw Error(ErrorCode::BadPrime, "T_l needs l != p");
  auto [lambda, K] = canonical_divisor(p);
  GenusData gd = genus_x0(p);
  FormalDivisor F = fixed_divisor_hecke(l, 1).restrict_to(p);
  const i64 degF = degree(F, p);
  // 2g - 2 = (p + 1 - 3 nu2 - 4 nu3 - 12) / 6
  AffineCoeff two_g_minus_2(1 - 3 * gd.nu2 - 4 * gd.nu3 - 12, 1, 6);
  FormalDivisor S = F * (two_g_minus_2 * lambda) - K * degF - detail::hecke_on_divisor(l, K) * 2 +
                    K * (2 * (l + 1));
  S = S.restrict_to(p);
  i64 k = S.denominator();
  return {lambda * k, S * k, "Sh(T" + std::to_string(l) + ")"};
}

/// Sh(w_p) = (2g - 2) F - deg(F) K, scaled to integral coefficients.
inline ScaledShadow shadow_derive_wp(i64 p) {
  auto [lambda, K] = canonical_divisor(p);
  GenusData gd = genus_x0(p);
  FormalDivisor F = fixed_divisor_atkin_lehner(p);
  const i64 degF = degree(F, p);
  FormalDivisor S = F * AffineCoeff::constant(lambda * (2 * gd.g - 2)) - K * degF;
  S = S.restrict_to(p).evaluate(p);
  return {lambda, S, "Sh(w" + std::to_string(p) + ")"};
}

}  // namespace ceresa
