#include <gtest/gtest.h>

#include "ceresa/certify.hpp"

using namespace ceresa;

TEST(CmRed, Examples) {
  Certificate c = cmred_test(103);
  EXPECT_EQ(c.route, Route::CMRed);
  EXPECT_EQ(c.verdict, Verdict::NonVanishing);
  EXPECT_EQ(c.witnesses.at("disc").get<i64>(), -36);
  EXPECT_TRUE(verify_certificate(c));
  EXPECT_EQ(cmred_test(31).verdict, Verdict::Inconclusive);
  EXPECT_EQ(cmred_test(19).verdict, Verdict::Inconclusive);
}

TEST(CmRed, ClassNotCovered) {
  try {
    cmred_test(83);
    FAIL() << "expected ClassNotCovered";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassNotCovered);
  }
}

TEST(Triv, ZeroDivisorNeverCertifies) {
  Fp2Element j = irrational_ss(103);
  EXPECT_FALSE(triv_test(FormalDivisor(1), 103, j));
}

TEST(Triv, CataloguedShadowAt103) {
  Fp2Element j = reduce_cm_value(*cm_order(36).j, Fp2Field::standard(103));
  EXPECT_TRUE(triv_test(shadow_catalog(ShadowKind::T2, 103).divisor, 103, j));
}

TEST(Triv, DegreeMustBeZero) {
  FormalDivisor d(1);
  d.add(Symbol::cm(3), AffineCoeff(1));
  Fp2Element j = irrational_ss(103);
  try {
    triv_test(d, 103, j);
    FAIL() << "expected NotDegreeZero";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDegreeZero);
  }
}

TEST(Wp, InequalityForLargePrime) {
  // h(-p) + h(-4p) is small compared with p/96 for this prime.
  Certificate c = wp_route(100043);
  EXPECT_EQ(c.route, Route::WpInequality);
  EXPECT_EQ(c.verdict, Verdict::NonVanishing);
  EXPECT_TRUE(verify_certificate(c));
}

TEST(Wp, BiellipticFallsBackToT2) {
  Certificate c = wp_route(83);
  EXPECT_EQ(c.verdict, Verdict::NonVanishing);
  EXPECT_EQ(c.route, Route::Triv);
  EXPECT_TRUE(verify_certificate(c));
}

TEST(Wp, SpecialJInclusionMatters) {
  CertifyOptions strict;
  // Without the T2 fallback the exceptional product alone is inconclusive at 83.
  Certificate with_special = wp_route(83, strict);
  EXPECT_NE(with_special.route, Route::WpExceptional);
}

TEST(Bezout, InClassPrime) {
  Certificate c = bezout_route(193);
  EXPECT_EQ(c.route, Route::BezoutSweep);
  EXPECT_EQ(c.verdict, Verdict::NonVanishing);
  EXPECT_TRUE(verify_certificate(c));
  EXPECT_THROW(bezout_route(73), Error);
}

TEST(Bezout, Bounds) {
  EXPECT_NEAR(bezout_prime_bound(false), 172090, 10);
  EXPECT_NEAR(bezout_prime_bound(true), 273684, 10);
}

TEST(CertifyPrime, Examples) {
  EXPECT_EQ(certify_prime(43).verdict, Verdict::NonVanishing);
  EXPECT_EQ(certify_prime(71).verdict, Verdict::Vanishing);
  EXPECT_EQ(certify_prime(59).verdict, Verdict::Vanishing);
  EXPECT_EQ(certify_prime(11).verdict, Verdict::Vanishing);
  Certificate c149 = certify_prime(149);
  EXPECT_EQ(c149.verdict, Verdict::NonVanishing);
  EXPECT_EQ(c149.route, Route::CMRed);
  EXPECT_THROW(certify_prime(91), Error);
}

TEST(CertifyPrime, DeterministicUnderSeed) {
  CertifyOptions a, b;
  b.seed = 12345;
  EXPECT_EQ(certify_prime(1009, a).to_json(), certify_prime(1009, a).to_json());
  EXPECT_EQ(certify_prime(1009, b).verdict, Verdict::NonVanishing);
  EXPECT_EQ(certify_prime(1009, b).seed, 12345u);
}

TEST(Theorem2Bound, Factors) {
  BigInt b = theorem2_bound();
  EXPECT_EQ(b % 71, 0);
  EXPECT_NE(b % 43, 0);
  EXPECT_EQ(b % 32, 0);
  EXPECT_NE(b % 64, 0);
}

TEST(CertifyLevel, CompositeRoutes) {
  Certificate c529 = certify_level(529);
  EXPECT_EQ(c529.route, Route::Heegner);
  EXPECT_EQ(c529.verdict, Verdict::NonVanishing);
  Certificate c214 = certify_level(214);
  EXPECT_EQ(c214.route, Route::Covering);
  EXPECT_EQ(c214.witnesses.at("base_level").get<u64>(), 107u);
  Certificate c64 = certify_level(64);
  EXPECT_EQ(c64.route, Route::ExternalLedger);
  EXPECT_EQ(certify_level(22).verdict, Verdict::Vanishing);
  EXPECT_THROW(certify_level(0), Error);
}

TEST(CertifyLevel, BoundCheckRecorded) {
  Certificate c = certify_level(214);
  const auto& bc = c.witnesses.at("bound_check");
  EXPECT_FALSE(bc.at("exceeds_bound").get<bool>());
  EXPECT_FALSE(bc.at("divides_bound").get<bool>());
  EXPECT_EQ(bc.at("nondividing_factor").get<u64>(), 107u);
}

TEST(Certificate, JsonRoundTrip) {
  Certificate c = certify_level(103);
  Certificate back = Certificate::from_json(nlohmann::json::parse(c.to_json().dump()));
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_TRUE(verify_certificate(back));
}

TEST(Certificate, TamperedWitnessFailsVerification) {
  Certificate c = certify_level(103);
  c.witnesses["j"][0] = (c.witnesses["j"][0].get<u64>() + 1) % 103;
  EXPECT_FALSE(verify_certificate(c));
}

TEST(Certificate, VanishingVerdictsVerify) {
  EXPECT_TRUE(verify_certificate(certify_level(71)));
  EXPECT_TRUE(verify_certificate(certify_level(11)));
  EXPECT_TRUE(verify_certificate(certify_level(40)));
  Certificate forged = certify_level(71);
  forged.level = 73;
  EXPECT_FALSE(verify_certificate(forged));
}
