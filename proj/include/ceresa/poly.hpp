#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "ceresa/arith.hpp"

namespace ceresa {

/// Dense univariate polynomial over F_p^2, coefficients low degree first.
class Fp2Poly {
 public:
  explicit Fp2Poly(const Fp2Field& f) : field_(f) {}
  Fp2Poly(const Fp2Field& f, std::vector<Fp2Element> c) : field_(f), c_(std::move(c)) { trim(); }

  static Fp2Poly monomial(const Fp2Field& f, size_t deg) {
    std::vector<Fp2Element> c(deg + 1, Fp2Element::zero(f));
    c[deg] = Fp2Element::one(f);
    return {f, std::move(c)};
  }
  /// X - r
  static Fp2Poly linear(const Fp2Element& r) {
    return {r.field, {-r, Fp2Element::one(r.field)}};
  }

  const Fp2Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fp2Element>& coeffs() const { return c_; }
  Fp2Element lead() const { return c_.back(); }
  Fp2Element coeff(size_t i) const { return i < c_.size() ? c_[i] : Fp2Element::zero(field_); }

  Fp2Element operator()(const Fp2Element& x) const {
    Fp2Element acc = Fp2Element::zero(field_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Fp2Poly operator+(const Fp2Poly& o) const {
    std::vector<Fp2Element> r(std::max(c_.size(), o.c_.size()), Fp2Element::zero(field_));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return {field_, std::move(r)};
  }
  Fp2Poly operator-(const Fp2Poly& o) const {
    std::vector<Fp2Element> r(std::max(c_.size(), o.c_.size()), Fp2Element::zero(field_));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return {field_, std::move(r)};
  }
  Fp2Poly operator*(const Fp2Poly& o) const {
    if (is_zero() || o.is_zero()) return Fp2Poly(field_);
    std::vector<Fp2Element> r(c_.size() + o.c_.size() - 1, Fp2Element::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t k = 0; k < o.c_.size(); ++k) r[i + k] += c_[i] * o.c_[k];
    return {field_, std::move(r)};
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Fp2Poly, Fp2Poly> divmod(const Fp2Poly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (degree() < d.degree()) return {Fp2Poly(field_), *this};
    std::vector<Fp2Element> rem = c_;
    std::vector<Fp2Element> q(c_.size() - d.c_.size() + 1, Fp2Element::zero(field_));
    Fp2Element inv = d.lead().inverse();
    for (size_t i = q.size(); i-- > 0;) {
      Fp2Element t = rem[i + d.c_.size() - 1] * inv;
      q[i] = t;
      if (t.is_zero()) continue;
      for (size_t k = 0; k < d.c_.size(); ++k) rem[i + k] -= t * d.c_[k];
    }
    rem.resize(d.c_.size() - 1);
    return {Fp2Poly(field_, std::move(q)), Fp2Poly(field_, std::move(rem))};
  }
  Fp2Poly operator%(const Fp2Poly& d) const { return divmod(d).second; }

  Fp2Poly monic() const {
    if (is_zero()) return *this;
    Fp2Element inv = lead().inverse();
    std::vector<Fp2Element> r = c_;
    for (auto& x : r) x *= inv;
    return {field_, std::move(r)};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Fp2Field field_;
  std::vector<Fp2Element> c_;
};

inline Fp2Poly poly_gcd(Fp2Poly a, Fp2Poly b) {
  while (!b.is_zero()) {
    Fp2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod f.
inline Fp2Poly poly_powmod(Fp2Poly base, u64 e, const Fp2Poly& f) {
  Fp2Poly r = Fp2Poly::monomial(f.field(), 0) % f;
  base = base % f;
  while (e) {
    if (e & 1) r = (r * base) % f;
    base = (base * base) % f;
    e >>= 1;
  }
  return r;
}

namespace detail {

inline void split_distinct(const Fp2Poly& g, std::mt19937_64& rng, std::vector<Fp2Element>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    Fp2Poly m = g.monic();
    out.push_back(-m.coeff(0));
    return;
  }
  const Fp2Field& F = g.field();
  const u64 q = F.p * F.p;
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  for (;;) {
    Fp2Element delta{F, dist(rng), dist(rng)};
    Fp2Poly shifted(F, {delta, Fp2Element::one(F)});
    Fp2Poly h = poly_powmod(shifted, (q - 1) / 2, g) - Fp2Poly::monomial(F, 0);
    Fp2Poly d = poly_gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_distinct(d, rng, out);
      split_distinct(g.divmod(d).first, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots in F_p^2, sorted.
inline std::vector<Fp2Element> distinct_roots(const Fp2Poly& f, std::mt19937_64& rng) {
  std::vector<Fp2Element> out;
  if (f.degree() <= 0) return out;
  const Fp2Field& F = f.field();
  Fp2Poly fm = f.monic();
  Fp2Poly x = Fp2Poly::monomial(F, 1);
  Fp2Poly xp = poly_powmod(x, F.p, fm);
  Fp2Poly xq = poly_powmod(xp, F.p, fm);
  Fp2Poly g = poly_gcd(fm, xq - x);
  detail::split_distinct(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Roots with multiplicity, sorted by root.
inline std::vector<std::pair<Fp2Element, int>> roots_with_multiplicity(const Fp2Poly& f,
                                                                       std::mt19937_64& rng) {
  std::vector<std::pair<Fp2Element, int>> out;
  for (const auto& r : distinct_roots(f, rng)) {
    int mult = 0;
    Fp2Poly g = f;
    Fp2Poly lin = Fp2Poly::linear(r);
    for (;;) {
      auto [q, rem] = g.divmod(lin);
      if (!rem.is_zero()) break;
      ++mult;
      g = std::move(q);
    }
    out.emplace_back(r, mult);
  }
  return out;
}

}  // namespace ceresa
