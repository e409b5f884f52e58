#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/error.hpp"
#include "ceresa/primes.hpp"

namespace ceresa {

struct QuadForm {
  i64 a = 1, b = 1, c = 1;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const {
    if (a <= 0 || std::llabs(b) > a || a > c) return false;
    if ((std::llabs(b) == a || a == c) && b < 0) return false;
    return true;
  }
  bool is_primitive() const { return std::gcd(std::gcd(a, std::llabs(b)), c) == 1; }
  bool operator==(const QuadForm&) const = default;
};

inline bool is_discriminant(i64 D) {
  if (D >= 0) return false;
  i64 r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

inline void require_discriminant(i64 D) {
  if (!is_discriminant(D))
    throw Error(ErrorCode::BadDiscriminant, std::to_string(D) + " is not a negative discriminant");
}

inline std::vector<QuadForm> reduced_forms(i64 D) {
  require_discriminant(D);
  std::vector<QuadForm> out;
  const i64 n = -D;
  for (i64 a = 1; 3 * a * a <= n; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  return out;
}

/// Number of primitive reduced forms of discriminant D.
inline i64 class_number(i64 D) {
  require_discriminant(D);
  const i64 n = -D;
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= n; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) ++h;
    }
  }
  return h;
}

/// (1/3) sqrt|D| log|D|, natural logarithm. Only an upper bound for |D| >= 8.
inline double class_number_bound(i64 D) {
  double n = std::fabs(static_cast<double>(D));
  return std::sqrt(n) * std::log(n) / 3.0;
}

/// h(D) for every discriminant with |D| <= bound, by one pass over reduced forms.
class ClassNumberTable {
 public:
  explicit ClassNumberTable(i64 bound) : bound_(bound), h_(static_cast<size_t>(bound) + 1, 0) {
    for (i64 a = 1; 3 * a * a <= bound; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        // c >= a and 4ac - b^2 <= bound.
        for (i64 c = a;; ++c) {
          i64 n = 4 * a * c - b * b;
          if (n > bound) break;
          if (a == c && b < 0) continue;
          if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
          ++h_[static_cast<size_t>(n)];
        }
      }
    }
  }

  i64 bound() const { return bound_; }

  i64 operator()(i64 D) const {
    require_discriminant(D);
    if (-D > bound_) return class_number(D);
    return h_[static_cast<size_t>(-D)];
  }

 private:
  i64 bound_;
  std::vector<i64> h_;
};

struct GenusData {
  i64 p = 0;
  i64 g = 0;
  i64 g_plus = 0;
  i64 nu2 = 0;
  i64 nu3 = 0;
  i64 cusps = 2;
};

/// Number of fixed points of w_p on X_0(p).
inline i64 atkin_lehner_fixed_points(i64 p) {
  if (p % 4 == 3) return class_number(-p) + class_number(-4 * p);
  return class_number(-4 * p);
}

inline GenusData genus_x0(i64 p) {
  if (p < 5 || !is_prime(static_cast<u64>(p)))
    throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not a prime >= 5");
  GenusData gd;
  gd.p = p;
  gd.nu2 = 1 + kronecker(-4, p);
  gd.nu3 = 1 + kronecker(-3, p);
  // 12 g = p + 1 - 3 nu2 - 4 nu3
  gd.g = (p + 1 - 3 * gd.nu2 - 4 * gd.nu3) / 12;
  gd.g_plus = (2 * gd.g + 2 - atkin_lehner_fixed_points(p)) / 4;
  return gd;
}

/// Genus of X_0(N) for arbitrary N >= 1.
inline i64 genus_x0_level(u64 N) {
  if (N == 0) throw Error(ErrorCode::BadPrime, "level must be positive");
  auto fac = factorize(N);
  i64 mu = static_cast<i64>(N);
  for (auto [q, e] : fac) mu = mu / static_cast<i64>(q) * static_cast<i64>(q + 1);
  i64 nu2 = N % 4 == 0 ? 0 : 1;
  i64 nu3 = N % 9 == 0 ? 0 : 1;
  for (auto [q, e] : fac) {
    nu2 *= 1 + kronecker(-4, static_cast<i64>(q));
    nu3 *= 1 + kronecker(-3, static_cast<i64>(q));
  }
  i64 cusps = 0;
  for (u64 d = 1; d <= N; ++d) {
    if (N % d) continue;
    u64 g = std::gcd(d, N / d);
    u64 phi = g;
    for (auto [q, e] : factorize(g)) phi = phi / q * (q - 1);
    cusps += static_cast<i64>(phi);
  }
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

/// Number of cusps of X_0(p) (2) or X_0(p^2) (p + 1).
inline i64 cusp_count(i64 p, int exponent) { return exponent == 1 ? 2 : p + 1; }

/// Degree of the CM divisor D_d on X_0(p^exponent).
inline i64 cm_component_degree(i64 d, i64 p, int exponent, i64 h) {
  int k = kronecker(-d, p);
  if (exponent == 1) {
    if (k == 1) return 2 * h;
    if (k == 0) return h;
    return 0;
  }
  return k == 1 ? 2 * h : 0;
}

inline i64 cm_component_degree(i64 d, i64 p, int exponent) {
  require_discriminant(-d);
  int k = kronecker(-d, p);
  if (k == -1 || (exponent == 2 && k == 0)) return 0;
  return cm_component_degree(d, p, exponent, class_number(-d));
}

}  // namespace ceresa
