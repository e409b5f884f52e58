#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceresa/classgroup.hpp"
#include "ceresa/divisor.hpp"

namespace ceresa {

enum class ShadowKind { T2, T3, Wp, Composite };

inline std::string to_string(ShadowKind k) {
  switch (k) {
    case ShadowKind::T2: return "T2";
    case ShadowKind::T3: return "T3";
    case ShadowKind::Wp: return "Wp";
    case ShadowKind::Composite: return "Composite";
  }
  return "?";
}

inline ShadowKind parse_shadow_kind(const std::string& s) {
  if (s == "T2") return ShadowKind::T2;
  if (s == "T3") return ShadowKind::T3;
  if (s == "Wp" || s == "wp") return ShadowKind::Wp;
  if (s == "Composite" || s == "composite") return ShadowKind::Composite;
  throw Error(ErrorCode::NoCatalogEntry, "unknown shadow kind '" + s + "'");
}

/// p mod 7 in {1, 2, 4}; 7 itself falls with the non-residues.
inline bool residue_mod7(i64 p) {
  i64 r = p % 7;
  return r == 1 || r == 2 || r == 4;
}

inline bool residue_mod11(i64 p) { return kronecker(p, 11) == 1; }

/// One congruence class p = r12 mod 12, p = r8 mod 8, with the mod-7 residue condition.
struct CongruenceClass {
  i64 r12 = 0;
  i64 r8 = 0;
  bool qr7 = false;

  bool admits(i64 p) const { return p % 12 == r12 && p % 8 == r8 && residue_mod7(p) == qr7; }

  ClassSpec spec() const {
    ResidueConstraint c7{7, qr7 ? std::vector<u64>{1, 2, 4} : std::vector<u64>{0, 3, 5, 6}};
    return ClassSpec{{ResidueConstraint{12, {static_cast<u64>(r12)}},
                      ResidueConstraint{8, {static_cast<u64>(r8)}}, c7}};
  }

  std::string to_string() const {
    return "p=" + std::to_string(r12) + " mod 12, " + std::to_string(r8) + " mod 8, " +
           (qr7 ? "residue" : "non-residue") + " mod 7";
  }
};

struct T2ShadowRow {
  CongruenceClass cls;
  ScaledShadow shadow;
};

inline const std::vector<T2ShadowRow>& t2_shadow_rows() {
  static const std::vector<T2ShadowRow> rows = [] {
    using detail::aff;
    using detail::cst;
    auto D = [](i64 d) { return Symbol::cm(d); };
    auto row = [](i64 r12, i64 r8, bool q, i64 scale, std::vector<std::pair<Symbol, AffineCoeff>> t,
                  AffineCoeff cusp) {
      FormalDivisor div(1, std::move(t));
      div.add(Symbol::cusp0(), cusp);
      div.add(Symbol::cusp_inf(), cusp);
      return T2ShadowRow{{r12, r8, q}, ScaledShadow{scale, div, "Sh(T2)"}};
    };
    return std::vector<T2ShadowRow>{
        row(7, 7, false, 3, {{D(12), cst(12)}, {D(3), cst(-4)}}, cst(-8)),
        row(7, 7, true, 3, {{D(7), aff(1, -19)}, {D(12), cst(12)}, {D(3), cst(4)}}, aff(-1, 3)),
        row(7, 3, false, 6, {{D(8), aff(1, -19)}, {D(12), cst(24)}}, aff(-1, -5)),
        row(7, 3, true, 6, {{D(8), aff(1, -19)}, {D(7), aff(2, -38)}, {D(3), cst(16)}, {D(12), cst(24)}},
            aff(-3, 17)),
        row(5, 5, false, 6, {{D(4), aff(1, -11)}, {D(16), cst(12)}}, aff(-1, -1)),
        row(5, 5, true, 6, {{D(4), aff(1, 1)}, {D(7), aff(2, -34)}, {D(16), cst(12)}}, aff(-3, 21)),
        row(5, 1, false, 6, {{D(4), aff(1, -5)}, {D(8), aff(1, -17)}, {D(16), cst(12)}}, aff(-2, 10)),
        row(5, 1, true, 6,
            {{D(4), aff(1, 7)}, {D(7), aff(2, -34)}, {D(8), aff(1, -17)}, {D(16), cst(12)}}, aff(-4, 32)),
        row(1, 5, false, 6, {{D(4), aff(1, -19)}, {D(16), cst(12)}, {D(12), cst(24)}}, aff(-1, -17)),
        row(1, 5, true, 6,
            {{D(4), aff(1, -7)}, {D(7), aff(2, -50)}, {D(3), cst(16)}, {D(16), cst(12)}, {D(12), cst(24)}},
            aff(-3, 5)),
        row(1, 1, false, 6,
            {{D(4), aff(1, -13)}, {D(8), aff(1, -25)}, {D(3), cst(8)}, {D(12), cst(24)}, {D(16), cst(12)}},
            aff(-2, -6)),
        row(1, 1, true, 6,
            {{D(3), cst(24)}, {D(4), aff(1, -1)}, {D(7), aff(2, -50)}, {D(8), aff(1, -25)}, {D(12), cst(24)},
             {D(16), cst(12)}},
            aff(-4, 16)),
    };
  }();
  return rows;
}

inline const T2ShadowRow* t2_shadow_row(i64 p) {
  for (const auto& r : t2_shadow_rows())
    if (r.cls.admits(p)) return &r;
  return nullptr;
}

/// The two catalogued 6 Sh(T3), for p = 1 mod 24, split by the residue symbol mod 11.
inline ScaledShadow t3_shadow(bool residue11) {
  using detail::aff;
  using detail::cst;
  auto D = [](i64 d) { return Symbol::cm(d); };
  FormalDivisor div(1);
  if (!residue11) {
    div = FormalDivisor(1, {{D(3), aff(1, -1)}, {D(4), cst(12)}, {D(8), aff(2, -50)}, {D(12), aff(1, -25)},
                            {D(27), cst(24)}, {D(36), cst(12)}});
    div = div + detail::cusps(1, aff(-4, 16));
  } else {
    div = FormalDivisor(1, {{D(3), aff(1, 15)}, {D(4), cst(24)}, {D(8), aff(2, -50)}, {D(11), aff(2, -50)},
                            {D(12), aff(1, -25)}, {D(27), cst(24)}, {D(36), cst(12)}});
    div = div + detail::cusps(1, aff(-6, 38));
  }
  return {6, div, "Sh(T3)"};
}

/// Composite levels p^2 with Heegner-supported shadows.
struct CompositeEntry {
  i64 p = 0;
  i64 hecke = 0;
  i64 d = 0;
  i64 cm_coeff = 0;
  i64 cusp_coeff = 0;
};

inline const std::vector<CompositeEntry>& composite_entries() {
  static const std::vector<CompositeEntry> entries = {
      {23, 2, 7, 816, -68}, {47, 3, 11, 3936, -164}, {59, 5, 11, 6360, -212}, {71, 2, 7, 9360, -260}};
  return entries;
}

inline ScaledShadow composite_shadow(const CompositeEntry& e) {
  FormalDivisor div(2);
  div.add(Symbol::cm(e.d), detail::cst(e.cm_coeff));
  div.add(Symbol::all_cusps(), detail::cst(e.cusp_coeff));
  return {6, div, "Sh(T" + std::to_string(e.hecke) + ")"};
}

/// Sh(w_p) normalized as (g - 1)(D_p + D_4p) - n (g - 1)(c0 + cinf).
inline ScaledShadow wp_shadow(i64 p) {
  GenusData gd = genus_x0(p);
  const i64 hp = p % 4 == 3 ? class_number(-p) : 0;
  const i64 n = (hp + class_number(-4 * p)) / 2;
  FormalDivisor div(1);
  if (p % 4 == 3) div.add(Symbol::cm(p), detail::cst(gd.g - 1));
  div.add(Symbol::cm(4 * p), detail::cst(gd.g - 1));
  div = div + detail::cusps(1, detail::cst(-n * (gd.g - 1)));
  return {1, div, "Sh(w" + std::to_string(p) + ")"};
}

/// Catalogued shadow for the given kind at p (level p^2 for Composite).
inline ScaledShadow shadow_catalog(ShadowKind kind, i64 p) {
  switch (kind) {
    case ShadowKind::T2: {
      const T2ShadowRow* r = t2_shadow_row(p);
      if (!r) throw Error(ErrorCode::NoCatalogEntry, "no Sh(T2) entry for p = " + std::to_string(p));
      return r->shadow;
    }
    case ShadowKind::T3:
      if (p % 24 != 1)
        throw Error(ErrorCode::NoCatalogEntry, "Sh(T3) is catalogued only for p = 1 mod 24");
      return t3_shadow(residue_mod11(p));
    case ShadowKind::Wp:
      if (p % 12 != 11)
        throw Error(ErrorCode::NoCatalogEntry, "Sh(w_p) is catalogued only for p = 11 mod 12");
      return wp_shadow(p);
    case ShadowKind::Composite:
      for (const auto& e : composite_entries())
        if (e.p == p) return composite_shadow(e);
      throw Error(ErrorCode::NoCatalogEntry, "no composite shadow at level " + std::to_string(p) + "^2");
  }
  throw Error(ErrorCode::NoCatalogEntry, "unknown kind");
}

/// CM orders whose j-invariants reduce outside F_p, per congruence class.
struct CmReductionRow {
  CongruenceClass cls;
  std::vector<i64> discriminants;  // d with discriminant -d
};

inline const std::vector<CmReductionRow>& cm_reduction_rows() {
  static const std::vector<CmReductionRow> rows = {
      {{7, 7, false}, {36}},      {{7, 7, true}, {36}},       {{7, 3, false}, {36}},
      {{7, 3, true}, {36, 64}},   {{5, 5, false}, {48}},      {{5, 5, true}, {48, 32}},
      {{5, 1, false}, {48, 112}}, {{5, 1, true}, {48, 147}},  {{1, 5, false}, {32}},
      {{1, 5, true}, {32, 72}},   {{1, 1, false}, {448}},
  };
  return rows;
}

inline const CmReductionRow* cm_reduction_row(i64 p) {
  for (const auto& r : cm_reduction_rows())
    if (r.cls.admits(p)) return &r;
  return nullptr;
}

/// The Bezout-route functions as exponent maps over class-polynomial support.
/// f1 (from 6 Sh(T2)); f2 for the non-residue / residue mod 11 cases (from 6 Sh(T3)).
inline std::vector<std::pair<i64, i64>> bezout_f1() {
  return {{3, 24}, {12, 12}, {16, 12}, {4, -2}, {8, -26}, {7, -52}};
}

inline std::vector<std::pair<i64, i64>> bezout_f2(bool residue11) {
  if (!residue11) return {{4, 12}, {27, 24}, {36, 12}, {3, -2}, {8, -52}, {12, -26}};
  return {{3, 12}, {4, 24}, {27, 24}, {36, 12}, {8, -52}, {11, -52}, {12, -26}};
}

}  // namespace ceresa
