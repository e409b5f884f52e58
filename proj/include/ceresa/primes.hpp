#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/error.hpp"

namespace ceresa {

inline std::vector<u64> sieve_primes(u64 bound) {
  std::vector<u64> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 k = i * i; k <= bound; k += i) composite[k] = true;
  }
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  auto mul = [n](u64 a, u64 b) { return static_cast<u64>((unsigned __int128)a * b % n); };
  auto pw = [&](u64 b, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pw(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    f.emplace_back(q, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

/// p mod modulus must be one of residues.
struct ResidueConstraint {
  u64 modulus = 1;
  std::vector<u64> residues;

  bool admits(u64 p) const {
    return std::find(residues.begin(), residues.end(), p % modulus) != residues.end();
  }
};

struct ClassSpec {
  std::vector<ResidueConstraint> constraints;

  bool admits(u64 p) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [p](const ResidueConstraint& c) { return c.admits(p); });
  }

  /// "12:7;8:7;7:0,3,5,6" -- empty string means no constraint.
  static ClassSpec parse(const std::string& text) {
    ClassSpec spec;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
      if (part.empty()) continue;
      auto colon = part.find(':');
      if (colon == std::string::npos)
        throw Error(ErrorCode::BadClass, "expected modulus:residues in '" + part + "'");
      ResidueConstraint c;
      try {
        c.modulus = std::stoull(part.substr(0, colon));
        std::stringstream rs(part.substr(colon + 1));
        std::string r;
        while (std::getline(rs, r, ',')) c.residues.push_back(std::stoull(r) % c.modulus);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::BadClass, "malformed constraint '" + part + "'");
      }
      if (c.modulus == 0 || c.residues.empty())
        throw Error(ErrorCode::BadClass, "empty constraint '" + part + "'");
      spec.constraints.push_back(std::move(c));
    }
    return spec;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& c : constraints) {
      if (!out.empty()) out += ';';
      out += std::to_string(c.modulus) + ':';
      for (size_t i = 0; i < c.residues.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c.residues[i]);
      }
    }
    return out;
  }
};

inline std::vector<u64> primes_in_class(u64 bound, const ClassSpec& spec) {
  std::vector<u64> out;
  for (u64 p : sieve_primes(bound))
    if (p >= 5 && spec.admits(p)) out.push_back(p);
  return out;
}

}  // namespace ceresa
