#include <gtest/gtest.h>

#include "ceresa/catalog.hpp"
#include "ceresa/classgroup.hpp"
#include "ceresa/divisor.hpp"
#include "ceresa/primes.hpp"

using namespace ceresa;

namespace {
FormalDivisor parse_terms(std::initializer_list<std::pair<const char*, AffineCoeff>> terms, int exponent = 1) {
  FormalDivisor d(exponent);
  for (const auto& [s, c] : terms) d.add(Symbol::parse(s), c);
  return d;
}
}  // namespace

TEST(AffineCoeff, Printing) {
  EXPECT_EQ(AffineCoeff(-19, 1).to_string(), "p-19");
  EXPECT_EQ(AffineCoeff(-11, 1, 12).to_string(), "(p-11)/12");
  EXPECT_EQ(AffineCoeff(12).to_string(), "12");
  EXPECT_EQ(AffineCoeff(6, 3, 3).to_string(), "p+2");
}

TEST(AffineCoeff, Value) {
  EXPECT_EQ(AffineCoeff(-11, 1, 12).value(107), 8);
  EXPECT_THROW(AffineCoeff(0, 1, 12).value(107), Error);
}

TEST(Symbols, ParseRoundTrip) {
  for (const char* s : {"D3", "D448", "c0", "cinf", "D", "Dorb"}) EXPECT_EQ(Symbol::parse(s).to_string(), s);
  EXPECT_THROW(Symbol::parse("E5"), Error);
}

TEST(Catalog, T2At103) {
  EXPECT_EQ(shadow_catalog(ShadowKind::T2, 103).to_string(), "3*Sh(T2) = 12*D12 - 4*D3 - 8*(c0+cinf)");
}

TEST(Catalog, CompositeAt23Squared) {
  ScaledShadow s = shadow_catalog(ShadowKind::Composite, 23);
  EXPECT_EQ(s.to_string(), "6*Sh(T2) = 816*D7 - 68*D");
  EXPECT_EQ(degree(s.divisor, 23), 0);
}

TEST(Catalog, T3ResidueCaseContainsD11Term) {
  ScaledShadow s = t3_shadow(true);
  EXPECT_EQ(s.divisor.coeff(Symbol::cm(11)), AffineCoeff(-50, 2));
}

TEST(Catalog, MissingEntries) {
  EXPECT_THROW(shadow_catalog(ShadowKind::T3, 103), Error);
  EXPECT_THROW(shadow_catalog(ShadowKind::Wp, 103), Error);
  EXPECT_THROW(shadow_catalog(ShadowKind::Composite, 101), Error);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(shadow_catalog(ShadowKind::T2, 103).divisor, 103), 0);
  EXPECT_EQ(degree(FormalDivisor(1), 103), 0);
  FormalDivisor d = parse_terms({{"D3", AffineCoeff(1)}});
  EXPECT_EQ(degree(d, 103), 2);
  EXPECT_EQ(degree(d, 101), 0);
}

TEST(ReduceModExponent, Examples) {
  const i64 p = 103;
  EXPECT_EQ(reduce_mod_exponent(parse_terms({{"D3", AffineCoeff(-19, 1)}}), p).coeff(Symbol::cm(3)),
            AffineCoeff(p - 19));
  EXPECT_EQ(reduce_mod_exponent(parse_terms({{"D3", AffineCoeff(12)}}), p).coeff(Symbol::cm(3)), AffineCoeff(12));
  EXPECT_EQ(reduce_mod_exponent(parse_terms({{"D3", AffineCoeff(16, -4)}}), p).coeff(Symbol::cm(3)),
            AffineCoeff(20));
}

TEST(FixedPoints, HeckeTwo) {
  FormalDivisor want = parse_terms({{"D4", AffineCoeff(1)}, {"D7", AffineCoeff(2)}, {"D8", AffineCoeff(1)},
                                    {"c0", AffineCoeff(2)}, {"cinf", AffineCoeff(2)}});
  EXPECT_EQ(fixed_divisor_hecke(2), want);
}

TEST(FixedPoints, HeckeThreeSupport) {
  FormalDivisor f = fixed_divisor_hecke(3);
  EXPECT_EQ(f.coeff(Symbol::cm(3)), AffineCoeff(1));
  EXPECT_EQ(f.coeff(Symbol::cm(8)), AffineCoeff(2));
  EXPECT_EQ(f.coeff(Symbol::cm(11)), AffineCoeff(2));
  EXPECT_EQ(f.coeff(Symbol::cm(12)), AffineCoeff(1));
}

TEST(FixedPoints, AtkinLehner) {
  FormalDivisor f = fixed_divisor_atkin_lehner(11);
  EXPECT_EQ(f, parse_terms({{"D11", AffineCoeff(1)}, {"D44", AffineCoeff(1)}}));
  EXPECT_EQ(degree(f, 11), class_number(-11) + class_number(-44));
  FormalDivisor g = fixed_divisor_atkin_lehner(13);
  EXPECT_EQ(g, parse_terms({{"D52", AffineCoeff(1)}}));
}

TEST(HeckeOnCm, Examples) {
  EXPECT_EQ(hecke_on_cm(2, 3), parse_terms({{"D12", AffineCoeff(3)}}));
  EXPECT_EQ(hecke_on_cm(2, 4), parse_terms({{"D4", AffineCoeff(1)}, {"D16", AffineCoeff(2)}}));
  // Each point of D16 has one 2-isogeny up to D4 and two down to the two points of D64.
  EXPECT_EQ(hecke_on_cm(2, 16), parse_terms({{"D4", AffineCoeff(1)}, {"D64", AffineCoeff(1)}}));
  EXPECT_EQ(hecke_on_cm(3, 4), parse_terms({{"D36", AffineCoeff(2)}}));
  EXPECT_EQ(hecke_on_cm(3, 3), parse_terms({{"D3", AffineCoeff(1)}, {"D27", AffineCoeff(3)}}));
}

TEST(HeckeOnCm, PreservesDegreeTimesLPlusOne) {
  for (i64 l : {2, 3, 5})
    for (i64 d : {3, 4, 7, 8, 11, 12, 16, 19, 27, 28}) {
      FormalDivisor img = hecke_on_cm(l, d);
      i64 deg = 0;
      for (const auto& [s, c] : img.terms()) deg += c.a * class_number(-s.d);
      EXPECT_EQ(deg, (l + 1) * class_number(-d)) << "l=" << l << " d=" << d;
    }
}

TEST(CanonicalDivisor, DegreeIsTwoGenusMinusTwo) {
  for (u64 up : sieve_primes(3000)) {
    i64 p = static_cast<i64>(up);
    if (p < 11) continue;
    auto [lambda, K] = canonical_divisor(p);
    EXPECT_EQ(degree(K, p), lambda * (2 * genus_x0(p).g - 2)) << p;
  }
  EXPECT_THROW(canonical_divisor(7), Error);
}

TEST(ShadowDerive, MatchesCatalogueRows) {
  for (const auto& row : t2_shadow_rows()) {
    int n = 0;
    for (u64 up : primes_in_class(5000, row.cls.spec())) {
      i64 p = static_cast<i64>(up);
      if (p < 11) continue;
      ScaledShadow d = shadow_derive(2, p);
      EXPECT_EQ(row.shadow.divisor.restrict_to(p).evaluate(p) * d.scale,
                d.divisor.restrict_to(p).evaluate(p) * row.shadow.scale)
          << row.cls.to_string() << " p=" << p;
      EXPECT_EQ(degree(d.divisor, p), 0);
      if (++n == 5) break;
    }
  }
}

TEST(ShadowDerive, FiveModTwelveRowClosedForm) {
  const T2ShadowRow* row = t2_shadow_row(101);  // 5 mod 12, 5 mod 8, non-residue mod 7
  ASSERT_NE(row, nullptr);
  FormalDivisor want = parse_terms({{"D4", AffineCoeff(-11, 1)}, {"D16", AffineCoeff(12)}, {"c0", AffineCoeff(-1, -1)},
                                    {"cinf", AffineCoeff(-1, -1)}});
  EXPECT_EQ(row->shadow.divisor, want);
}

TEST(PrimitivePart, DividesByContent) {
  FormalDivisor d = parse_terms({{"D8", AffineCoeff(72)}, {"c0", AffineCoeff(-72)}, {"cinf", AffineCoeff(-72)}});
  auto [content, prim] = primitive_part(d, 83);
  EXPECT_EQ(content, 72);
  EXPECT_EQ(prim.coeff(Symbol::cm(8)), AffineCoeff(1));
}

TEST(Json, RoundTrip) {
  FormalDivisor d = shadow_catalog(ShadowKind::T2, 103).divisor;
  EXPECT_EQ(divisor_from_json(d.to_json()), d);
}
