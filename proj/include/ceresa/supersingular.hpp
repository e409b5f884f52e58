#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/classgroup.hpp"
#include "ceresa/cm_values.hpp"
#include "ceresa/error.hpp"
#include "ceresa/poly.hpp"

namespace ceresa {

inline constexpr u64 kDefaultSeed = 20240601;

/// Classical modular polynomial of level 2, coefficient of X^i Y^k at [i][k].
using BivariateIntPoly = std::array<std::array<i64, 4>, 4>;

inline const BivariateIntPoly& phi2_constant() {
  static const BivariateIntPoly phi = [] {
    BivariateIntPoly c{};
    c[3][0] = c[0][3] = 1;
    c[2][2] = -1;
    c[2][1] = c[1][2] = 1488;
    c[2][0] = c[0][2] = -162000;
    c[1][1] = 40773375;
    c[1][0] = c[0][1] = 8748000000LL;
    c[0][0] = -157464000000000LL;
    return c;
  }();
  return phi;
}

/// Phi_2(X, j) as a cubic in X.
inline Fp2Poly phi2_specialize(const Fp2Element& j) {
  const auto& c = phi2_constant();
  const Fp2Field& F = j.field;
  std::vector<Fp2Element> coeffs(4, Fp2Element::zero(F));
  for (int i = 0; i < 4; ++i) {
    Fp2Element acc = Fp2Element::zero(F);
    for (int k = 3; k >= 0; --k) acc = acc * j + Fp2Element::from_int(F, c[i][k]);
    coeffs[i] = acc;
  }
  return {F, std::move(coeffs)};
}

inline i64 supersingular_count(u64 p) {
  i64 k = static_cast<i64>(p / 12);
  if (p % 3 == 2) ++k;
  if (p % 4 == 3) ++k;
  return k;
}

/// Deuring's criterion with the Hasse polynomial H_p(l) = sum_i C(m,i)^2 l^i, m = (p-1)/2.
class DeuringTester {
 public:
  explicit DeuringTester(u64 p, u64 seed = kDefaultSeed) : p_(p), rng_(seed) {
    if (p < 5) throw Error(ErrorCode::BadPrime, "Deuring test needs p >= 5");
    const u64 m = (p - 1) / 2;
    std::vector<u64> inv(m + 2, 1);
    for (u64 i = 2; i <= m + 1; ++i) inv[i] = (p - mulmod(p / i, inv[p % i], p)) % p;
    coeffs_.resize(m + 1);
    u64 binom = 1;
    for (u64 i = 0; i <= m; ++i) {
      coeffs_[i] = mulmod(binom, binom, p);
      binom = mulmod(mulmod(binom, (m - i) % p, p), inv[i + 1], p);
    }
  }

  u64 p() const { return p_; }

  Fp2Element hasse(const Fp2Element& lambda) const {
    Fp2Element acc = Fp2Element::zero(lambda.field);
    for (size_t i = coeffs_.size(); i-- > 0;)
      acc = acc * lambda + Fp2Element{lambda.field, coeffs_[i], 0};
    return acc;
  }

  bool operator()(const Fp2Element& j) {
    if (j.p() != p_) throw Error(ErrorCode::BadModulus, "field mismatch in Deuring test");
    const Fp2Field& F = j.field;
    auto c = [&](i64 v) { return Fp2Element::from_int(F, v); };
    // 256 (l^2 - l + 1)^3 - j l^2 (l - 1)^2
    std::vector<Fp2Element> s = {c(256),          c(-768),          c(1536) - j,
                                 c(-1792) + j * 2, c(1536) - j, c(-768), c(256)};
    Fp2Poly sextic(F, s);
    auto roots = distinct_roots(sextic, rng_);
    for (const auto& l : roots) {
      if (l.is_zero() || l == Fp2Element::one(F)) continue;
      return hasse(l).is_zero();
    }
    if (!roots.empty()) throw Error(ErrorCode::DegenerateLambda, "only degenerate Legendre roots");
    return false;  // the 2-torsion is not F_p^2-rational, so j is ordinary
  }

 private:
  u64 p_;
  std::vector<u64> coeffs_;
  std::mt19937_64 rng_;
};

inline bool deuring_test(const Fp2Element& j, u64 seed = kDefaultSeed) {
  DeuringTester t(j.p(), seed);
  return t(j);
}

/// Discriminants tried by find_seed, in order.
inline const std::vector<i64>& seed_discriminants() {
  static const std::vector<i64> ds = {3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 32, 36, 43, 67, 163};
  return ds;
}

/// Reduction of a tabulated CM j with -d inert at p. Throws SeedNotFound when none applies.
inline Fp2Element find_seed(const Fp2Field& field, DeuringTester& tester) {
  const u64 p = field.p;
  for (i64 d : seed_discriminants()) {
    if (kronecker(-d, static_cast<i64>(p)) != -1) continue;
    const CmOrder& o = cm_order(d);
    Fp2Element j = reduce_cm_value(*o.j, field);
    if (tester(j)) return j;
  }
  throw Error(ErrorCode::SeedNotFound, "no tabulated CM order is inert at " + std::to_string(p));
}

inline Fp2Element find_seed(u64 p) {
  DeuringTester t(p);
  return find_seed(Fp2Field::standard(p), t);
}

namespace detail {

// Affine short Weierstrass arithmetic over F_p; nullopt is the point at infinity.
struct AffinePoint {
  u64 x = 0, y = 0;
  bool inf = true;
};

inline AffinePoint ec_add(const AffinePoint& P, const AffinePoint& Q, u64 a, u64 p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  u64 lam;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return {};
    u64 num = (mulmod(3, mulmod(P.x, P.x, p), p) + a) % p;
    lam = mulmod(num, invmod(mulmod(2, P.y, p), p), p);
  } else {
    lam = mulmod((Q.y + p - P.y) % p, invmod((Q.x + p - P.x) % p, p), p);
  }
  u64 x3 = (mulmod(lam, lam, p) + 2 * p - P.x - Q.x) % p;
  u64 y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
  return {x3, y3, false};
}

inline AffinePoint ec_mul(AffinePoint P, u64 k, u64 a, u64 p) {
  AffinePoint R;
  while (k) {
    if (k & 1) R = ec_add(R, P, a, p);
    P = ec_add(P, P, a, p);
    k >>= 1;
  }
  return R;
}

}  // namespace detail

/// Randomized search for an F_p-rational supersingular j: a curve with j is tested for
/// [p+1]P = O at a random point, and candidates are confirmed by the Deuring test.
inline Fp2Element search_rational_seed(const Fp2Field& field, DeuringTester& tester,
                                       std::mt19937_64& rng) {
  const u64 p = field.p;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (u64 attempt = 0; attempt < 64 * p + 1024; ++attempt) {
    u64 j = dist(rng);
    if (j == 0 || j == 1728 % p) {
      Fp2Element e = Fp2Element::from_int(field, static_cast<i64>(j));
      if (tester(e)) return e;
      continue;
    }
    // y^2 = x^3 + 3k x + 2k with k = j / (1728 - j)
    u64 k = mulmod(j, invmod((1728 % p + p - j) % p, p), p);
    u64 a = mulmod(3, k, p), b = mulmod(2, k, p);
    detail::AffinePoint P;
    for (int tries = 0; tries < 64 && P.inf; ++tries) {
      u64 x = dist(rng);
      u64 rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
      if (kronecker(static_cast<i64>(rhs), static_cast<i64>(p)) == -1) continue;
      P = {x, sqrt_mod_p(rhs, p), false};
    }
    if (P.inf) continue;
    if (!detail::ec_mul(P, p + 1, a, p).inf) continue;
    Fp2Element e = Fp2Element::from_int(field, static_cast<i64>(j));
    if (tester(e)) return e;
  }
  throw Error(ErrorCode::SeedNotFound, "randomized search failed at " + std::to_string(p));
}

inline Fp2Element find_seed_any(const Fp2Field& field, DeuringTester& tester, std::mt19937_64& rng) {
  try {
    return find_seed(field, tester);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SeedNotFound) throw;
    return search_rational_seed(field, tester, rng);
  }
}

struct SSGraph {
  u64 p = 0;
  Fp2Field field;
  std::vector<Fp2Element> nodes;                          // sorted
  std::vector<std::vector<std::pair<size_t, int>>> edges;  // (target, multiplicity)

  size_t index_of(const Fp2Element& j) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), j);
    if (it == nodes.end() || *it != j) return nodes.size();
    return static_cast<size_t>(it - nodes.begin());
  }
};

/// Breadth-first walk of the 2-isogeny graph from `seed`; `visit` may stop the walk by
/// returning true. Returns the visited node set (with adjacency) in discovery order.
template <typename Visit>
inline std::vector<std::pair<Fp2Element, std::vector<std::pair<Fp2Element, int>>>> walk_ss(
    const Fp2Element& seed, std::mt19937_64& rng, Visit&& visit) {
  std::vector<std::pair<Fp2Element, std::vector<std::pair<Fp2Element, int>>>> out;
  std::map<std::pair<u64, u64>, bool> seen;
  std::deque<Fp2Element> queue{seed};
  seen[{seed.re, seed.im}] = true;
  while (!queue.empty()) {
    Fp2Element j = queue.front();
    queue.pop_front();
    auto nbrs = roots_with_multiplicity(phi2_specialize(j), rng);
    out.emplace_back(j, nbrs);
    if (visit(j)) return out;
    for (const auto& [r, mult] : nbrs) {
      if (seen.emplace(std::pair{r.re, r.im}, true).second) queue.push_back(r);
    }
  }
  return out;
}

inline SSGraph enumerate_ss(u64 p, u64 seed = kDefaultSeed) {
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not a prime >= 5");
  std::mt19937_64 rng(seed);
  Fp2Field field = Fp2Field::standard(p);
  DeuringTester tester(p, seed);
  Fp2Element start = find_seed_any(field, tester, rng);
  auto walked = walk_ss(start, rng, [](const Fp2Element&) { return false; });
  SSGraph g;
  g.p = p;
  g.field = field;
  for (const auto& [j, nbrs] : walked) g.nodes.push_back(j);
  std::sort(g.nodes.begin(), g.nodes.end());
  g.edges.resize(g.nodes.size());
  for (const auto& [j, nbrs] : walked) {
    size_t i = g.index_of(j);
    for (const auto& [r, mult] : nbrs) g.edges[i].emplace_back(g.index_of(r), mult);
  }
  i64 expected = supersingular_count(p);
  if (static_cast<i64>(g.nodes.size()) != expected)
    throw Error(ErrorCode::CountMismatch, "found " + std::to_string(g.nodes.size()) +
                                              " supersingular j, expected " + std::to_string(expected));
  return g;
}

struct RationalPartition {
  std::vector<Fp2Element> rational;
  std::vector<std::pair<Fp2Element, Fp2Element>> pairs;
};

inline RationalPartition partition_rational(const SSGraph& g) {
  RationalPartition out;
  for (const auto& j : g.nodes) {
    if (j.in_base_field()) {
      out.rational.push_back(j);
    } else {
      Fp2Element c = j.frobenius();
      if (j < c) out.pairs.emplace_back(j, c);
    }
  }
  return out;
}

/// Class polynomials with two conjugate roots over Q(sqrt m), used for fast irrational seeds.
inline const std::vector<i64>& irrational_seed_discriminants() {
  static const std::vector<i64> ds = {36, 32, 48, 64, 72, 112, 147};
  return ds;
}

/// Supersingular j outside F_p. Tries tabulated surds with both symbols -1, then walks
/// the isogeny graph.
inline Fp2Element irrational_ss(u64 p, u64 seed = kDefaultSeed) {
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not a prime >= 5");
  DeuringTester tester(p, seed);
  for (i64 d : irrational_seed_discriminants()) {
    const auto& surd = std::get<QuadraticSurd>(*cm_order(d).j);
    if (kronecker(-d, static_cast<i64>(p)) != -1) continue;
    if (mod_reduce(surd.m, p) == 0 || kronecker(surd.m, static_cast<i64>(p)) != -1) continue;
    Fp2Element j = reduce_surd(surd, p);
    if (!j.in_base_field() && tester(j)) return j;
  }
  std::mt19937_64 rng(seed);
  Fp2Field field = Fp2Field::standard(p);
  Fp2Element start = find_seed_any(field, tester, rng);
  std::optional<Fp2Element> found;
  walk_ss(start, rng, [&](const Fp2Element& j) {
    if (!j.in_base_field()) found = j;
    return found.has_value();
  });
  if (!found) throw Error(ErrorCode::NoneExists, "every supersingular j is F_p-rational at " + std::to_string(p));
  return *found;
}

inline std::string to_dot(const SSGraph& g) {
  std::ostringstream os;
  os << "graph ss" << g.p << " {\n";
  for (size_t i = 0; i < g.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << g.nodes[i].to_string() << "\"];\n";
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    for (const auto& [k, mult] : g.edges[i]) {
      if (k < i) continue;
      os << "  n" << i << " -- n" << k;
      if (mult > 1) os << " [label=\"" << mult << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ceresa
